#include "cohup/store/fact_base.hpp"

#include <algorithm>

#include "cohup/error.hpp"

namespace cohup {

FactBase::FactBase(const std::vector<Atom>& facts) {
    for (const auto& fact : facts) insert(fact);
}

bool FactBase::insert(const PredicateKey& key, Tuple tuple) {
    return relation(key).insert(std::move(tuple));
}

bool FactBase::insert(const Atom& fact) {
    if (!fact.is_ground()) throw Error(ErrorKind::NonGroundFact, "fact " + fact.predicate + " is not ground");
    return insert(fact.key(), fact.to_tuple());
}

bool FactBase::erase(const PredicateKey& key, const Tuple& tuple) {
    auto it = relations_.find(key);
    return it != relations_.end() && it->second.erase(tuple);
}

bool FactBase::contains(const PredicateKey& key, const Tuple& tuple) const {
    const auto* rel = find(key);
    return rel != nullptr && rel->contains(tuple);
}

const Relation* FactBase::find(const PredicateKey& key) const {
    auto it = relations_.find(key);
    return it == relations_.end() ? nullptr : &it->second;
}

Relation& FactBase::relation(const PredicateKey& key) {
    auto it = relations_.find(key);
    if (it == relations_.end()) it = relations_.emplace(key, Relation(key.arity)).first;
    return it->second;
}

std::vector<PredicateKey> FactBase::predicates() const {
    std::vector<PredicateKey> out;
    for (const auto& [key, rel] : relations_) out.push_back(key);
    return out;
}

std::size_t FactBase::size() const {
    std::size_t n = 0;
    for (const auto& [key, rel] : relations_) n += rel.size();
    return n;
}

std::size_t FactBase::size(const PredicateKey& key) const {
    const auto* rel = find(key);
    return rel == nullptr ? 0 : rel->size();
}

std::vector<Atom> FactBase::atoms() const {
    std::vector<Atom> out;
    for (const auto& [key, rel] : relations_) {
        for (const auto& tuple : rel) out.push_back(Atom::from_tuple(key.name, tuple));
    }
    return out;
}

bool FactBase::operator==(const FactBase& other) const {
    auto covered = [](const FactBase& a, const FactBase& b) {
        for (const auto& [key, rel] : a.relations_) {
            const auto* theirs = b.find(key);
            if (theirs == nullptr ? !rel.empty() : !(rel == *theirs)) return false;
        }
        return true;
    };
    return covered(*this, other) && covered(other, *this);
}

std::vector<Tuple> match(const Relation& relation, const Atom& pattern) {
    ColumnMask mask = 0;
    Tuple key;
    std::vector<Tuple> out;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        if (is_list(pattern.args[i])) return out;
        if (const auto* c = std::get_if<Constant>(&pattern.args[i])) {
            mask |= ColumnMask{1} << i;
            key.push_back(*c);
        }
    }
    for (const Tuple* tuple : relation.lookup(mask, key)) {
        std::map<std::string, const Constant*> seen;
        bool ok = true;
        for (std::size_t i = 0; i < pattern.args.size() && ok; ++i) {
            if (const auto* v = std::get_if<Variable>(&pattern.args[i])) {
                auto [it, fresh] = seen.emplace(v->name, &(*tuple)[i]);
                ok = fresh || *it->second == (*tuple)[i];
            }
        }
        if (ok) out.push_back(*tuple);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Substitution> query(const FactBase& base, const Atom& pattern) {
    std::vector<Substitution> out;
    const auto* rel = base.find(pattern.key());
    if (rel == nullptr) return out;
    for (const auto& tuple : match(*rel, pattern)) {
        Substitution theta;
        for (std::size_t i = 0; i < pattern.args.size(); ++i) {
            if (const auto* v = std::get_if<Variable>(&pattern.args[i])) theta.emplace(v->name, tuple[i]);
        }
        out.push_back(std::move(theta));
    }
    return out;
}

} // namespace cohup
