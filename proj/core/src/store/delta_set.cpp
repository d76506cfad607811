#include "cohup/store/delta_set.hpp"

#include "cohup/error.hpp"
#include "cohup/logic/render.hpp"

namespace cohup {

namespace {

const DeltaSet::TupleSet& lookup(const std::map<PredicateKey, DeltaSet::TupleSet>& m, const PredicateKey& key) {
    static const DeltaSet::TupleSet empty;
    auto it = m.find(key);
    return it == m.end() ? empty : it->second;
}

} // namespace

bool DeltaSet::add_insertion(const PredicateKey& key, Tuple tuple) {
    return additions_[key].insert(std::move(tuple)).second;
}

bool DeltaSet::add_deletion(const PredicateKey& key, Tuple tuple) {
    return deletions_[key].insert(std::move(tuple)).second;
}

bool DeltaSet::add_insertion(const Atom& fact) { return add_insertion(fact.key(), fact.to_tuple()); }
bool DeltaSet::add_deletion(const Atom& fact) { return add_deletion(fact.key(), fact.to_tuple()); }

const DeltaSet::TupleSet& DeltaSet::insertions(const PredicateKey& key) const { return lookup(additions_, key); }
const DeltaSet::TupleSet& DeltaSet::deletions(const PredicateKey& key) const { return lookup(deletions_, key); }

std::set<PredicateKey> DeltaSet::predicates() const {
    std::set<PredicateKey> out;
    for (const auto& [key, tuples] : additions_) {
        if (!tuples.empty()) out.insert(key);
    }
    for (const auto& [key, tuples] : deletions_) {
        if (!tuples.empty()) out.insert(key);
    }
    return out;
}

std::size_t DeltaSet::size() const {
    std::size_t n = 0;
    for (const auto& [key, tuples] : additions_) n += tuples.size();
    for (const auto& [key, tuples] : deletions_) n += tuples.size();
    return n;
}

bool DeltaSet::is_disjoint() const {
    for (const auto& [key, added] : additions_) {
        const auto& deleted = deletions(key);
        for (const auto& t : added) {
            if (deleted.contains(t)) return false;
        }
    }
    return true;
}

DeltaSet DeltaSet::inverse() const {
    DeltaSet out;
    out.additions_ = deletions_;
    out.deletions_ = additions_;
    return out;
}

std::string DeltaSet::to_text() const {
    std::string out;
    for (const auto& [key, tuples] : deletions_) {
        for (const auto& t : tuples) out += render_fact({"del_" + key.name, key.arity}, t) + "\n";
    }
    for (const auto& [key, tuples] : additions_) {
        for (const auto& t : tuples) out += render_fact({"add_" + key.name, key.arity}, t) + "\n";
    }
    return out;
}

DeltaSet DeltaSet::from_facts(const std::vector<Atom>& delta_facts) {
    DeltaSet out;
    for (const auto& fact : delta_facts) {
        const std::string& name = fact.predicate;
        if (name.size() > 4 && name.starts_with("add_")) {
            out.add_insertion({name.substr(4), fact.args.size()}, fact.to_tuple());
        } else if (name.size() > 4 && name.starts_with("del_")) {
            out.add_deletion({name.substr(4), fact.args.size()}, fact.to_tuple());
        } else {
            throw Error(ErrorKind::SyntaxError, "delta fact " + name + " must start with add_ or del_");
        }
    }
    return out;
}

NormalizedSeeds normalize_seeds(const FactBase& base, const DeltaSet& raw) {
    NormalizedSeeds out;
    for (const auto& [key, added] : raw.all_insertions()) {
        const auto& deleted = raw.deletions(key);
        for (const auto& t : added) {
            if (deleted.contains(t)) {
                throw Error(ErrorKind::ConflictingSeed, "seed " + render_fact(key, t) + " is both inserted and deleted");
            }
            if (base.contains(key, t)) {
                out.warnings.push_back({"insertion of present fact " + render_fact(key, t) + " ignored"});
            } else {
                out.seeds.add_insertion(key, t);
            }
        }
    }
    for (const auto& [key, deleted] : raw.all_deletions()) {
        for (const auto& t : deleted) {
            if (base.contains(key, t)) {
                out.seeds.add_deletion(key, t);
            } else {
                out.warnings.push_back({"deletion of absent fact " + render_fact(key, t) + " ignored"});
            }
        }
    }
    return out;
}

FactBase apply_delta_set(const FactBase& base, const DeltaSet& deltas) {
    FactBase out = base;
    for (const auto& [key, tuples] : deltas.all_deletions()) {
        for (const auto& t : tuples) out.erase(key, t);
    }
    for (const auto& [key, tuples] : deltas.all_insertions()) {
        for (const auto& t : tuples) out.insert(key, t);
    }
    return out;
}

} // namespace cohup
