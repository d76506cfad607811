#include "cohup/up/propagation.hpp"

#include <mutex>
#include <sstream>
#include <unordered_map>

#include "cohup/error.hpp"
#include "cohup/logic/render.hpp"
#include "eval/join.hpp"

namespace cohup {

using detail::CompiledRule;
using detail::Frame;
using detail::Resolver;
using detail::Step;

namespace {

struct PredicateInfo {
    StateRole role = StateRole::Old;
    PredicateKey base;
    bool intensional = false;
    bool recursive = false;
    std::size_t stratum = 0;
};

ColumnMask full_mask(std::size_t arity) {
    return arity >= kMaxArity ? ~ColumnMask{0} : (ColumnMask{1} << arity) - 1;
}

struct GoalKey {
    ColumnMask mask;
    Tuple key;
    bool operator==(const GoalKey&) const = default;
};

struct GoalKeyHash {
    std::size_t operator()(const GoalKey& g) const noexcept {
        return TupleHash{}(g.key) ^ (std::hash<ColumnMask>{}(g.mask) * 0x9e3779b97f4a7c15ULL);
    }
};

bool matches(const Tuple& tuple, const Atom& pattern) {
    if (tuple.size() != pattern.args.size()) return false;
    std::map<std::string, const Constant*> bound;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        const Term& arg = pattern.args[i];
        if (const auto* c = std::get_if<Constant>(&arg)) {
            if (*c != tuple[i]) return false;
        } else if (const auto* v = std::get_if<Variable>(&arg)) {
            auto [it, inserted] = bound.emplace(v->name, &tuple[i]);
            if (!inserted && *it->second != tuple[i]) return false;
        } else {
            return false;
        }
    }
    return true;
}

} // namespace

struct PropagationResult::Data {
    MaterializedState old;
    DeltaSet seeds;
    DeltaSet induced;
    std::vector<Warning> warnings;
    std::set<PredicateKey> intensional;
    PropagationStats stats;

    mutable std::mutex mutex;
    mutable std::map<PredicateKey, Relation> new_states;

    const Relation* old_relation(const PredicateKey& p) const {
        return intensional.contains(p) ? old.derived->find(p) : old.base->find(p);
    }
    const DeltaSet& deltas_for(const PredicateKey& p) const { return intensional.contains(p) ? induced : seeds; }
};

const DeltaSet& PropagationResult::seeds() const noexcept { return data_->seeds; }
const DeltaSet& PropagationResult::induced() const noexcept { return data_->induced; }
const std::vector<Warning>& PropagationResult::warnings() const noexcept { return data_->warnings; }
const MaterializedState& PropagationResult::old_state() const noexcept { return data_->old; }
const PropagationStats& PropagationResult::stats() const noexcept { return data_->stats; }

const Relation& PropagationResult::new_state(const PredicateKey& p) const {
    std::lock_guard lock(data_->mutex);
    auto it = data_->new_states.find(p);
    if (it != data_->new_states.end()) return it->second;
    Relation rel(p.arity);
    if (const Relation* old = data_->old_relation(p)) rel = *old;
    const DeltaSet& deltas = data_->deltas_for(p);
    for (const auto& t : deltas.deletions(p)) rel.erase(t);
    for (const auto& t : deltas.insertions(p)) rel.insert(t);
    return data_->new_states.emplace(p, std::move(rel)).first->second;
}

std::vector<Tuple> PropagationResult::new_state_matching(const Atom& pattern) const {
    const PredicateKey p = pattern.key();
    const DeltaSet& deltas = data_->deltas_for(p);
    const auto& deleted = deltas.deletions(p);
    std::set<Tuple> out;
    if (const Relation* old = data_->old_relation(p)) {
        for (auto& t : match(*old, pattern)) {
            if (!deleted.contains(t)) out.insert(std::move(t));
        }
    }
    for (const auto& t : deltas.insertions(p)) {
        if (matches(t, pattern)) out.insert(t);
    }
    return {out.begin(), out.end()};
}

namespace detail {

struct PropagationPlan {
    TransformedRuleSet t;
    std::set<PredicateKey> intensional;
    std::set<PredicateKey> extensional;
    Stratification strata;
    std::map<PredicateKey, PredicateInfo> info;

    std::vector<std::vector<CompiledRule>> propagation; // per stratum
    std::vector<std::vector<CompiledRule>> recursive_nwi; // per stratum, empty unless recursive
    std::map<PredicateKey, std::vector<const Rule*>> goal_rules; // nwd_/nwi_ heads

    mutable std::mutex plan_mutex;
    mutable std::map<std::pair<PredicateKey, ColumnMask>, std::unique_ptr<const std::vector<CompiledRule>>> plans;

    explicit PropagationPlan(TransformedRuleSet rules) : t(std::move(rules)) {
        strata = stratify(t.source);
        for (const auto& key : t.source.intensional()) intensional.insert(key);
        extensional = t.source.extensional;
        for (const auto& node : t.graph.nodes()) {
            if (!intensional.contains(node)) extensional.insert(node);
        }

        for (const auto& rule : t.augmented().rules) {
            classify(rule.head.key());
            for (const auto& lit : rule.body) {
                if (!lit.is_builtin()) classify(lit.atom.key());
            }
        }

        propagation.resize(strata.strata.size());
        recursive_nwi.resize(strata.strata.size());
        for (const auto& rule : t.propagation_rules) {
            const auto& head = info.at(rule.head.key());
            propagation[head.stratum].push_back(detail::compile(rule));
        }
        for (const auto& rule : t.indirect_transition_rules) {
            const auto& head = info.at(rule.head.key());
            if (head.recursive) {
                recursive_nwi[head.stratum].push_back(detail::compile(rule));
            } else {
                goal_rules[rule.head.key()].push_back(&rule);
            }
        }
        for (const auto& rule : t.direct_transition_rules) goal_rules[rule.head.key()].push_back(&rule);
    }

    void classify(const PredicateKey& key) {
        if (info.contains(key)) return;
        auto [role, name] = split_augmented(key.name);
        PredicateInfo pi;
        pi.role = role;
        pi.base = {name, key.arity};
        pi.intensional = intensional.contains(pi.base);
        if (pi.intensional) {
            pi.stratum = strata.stratum_of(pi.base);
            const auto& scc = strata.strata[pi.stratum];
            pi.recursive = scc.size() > 1 || t.graph.is_recursive(pi.base);
        }
        info.emplace(key, pi);
    }

    const std::vector<CompiledRule>& plan(const PredicateKey& goal, ColumnMask mask) const {
        std::lock_guard lock(plan_mutex);
        auto& slot = plans[{goal, mask}];
        if (!slot) {
            auto compiled = std::make_unique<std::vector<CompiledRule>>();
            auto it = goal_rules.find(goal);
            if (it != goal_rules.end()) {
                for (const Rule* rule : it->second) compiled->push_back(detail::compile(*rule, mask));
            }
            slot = std::move(compiled);
        }
        return *slot;
    }
};

} // namespace detail

namespace {

/// Resolves augmented predicates for one run: old state from the
/// materialized snapshot, deltas from seeds or earlier strata, new states
/// on demand with memoization.
class RunResolver final : public Resolver {
public:
    RunResolver(const detail::PropagationPlan& program, const MaterializedState& old,
                PropagationStats& stats)
        : program_(program), old_(old), stats_(stats) {}

    std::map<PredicateKey, Relation> deltas; // add_/del_ keys: seeds and induced

    const Relation::TupleRefs& lookup(const Step& step, ColumnMask mask, const Tuple& key) override {
        const PredicateInfo* pi = info(step.predicate);
        if (pi == nullptr) return kEmpty;
        switch (pi->role) {
        case StateRole::Old: {
            const Relation* rel = pi->intensional ? old_.derived->find(pi->base) : old_.base->find(pi->base);
            return rel ? rel->lookup(mask, key) : kEmpty;
        }
        case StateRole::Add:
        case StateRole::Del: {
            auto it = deltas.find(step.predicate);
            return it == deltas.end() ? kEmpty : it->second.lookup(mask, key);
        }
        case StateRole::Nwi:
            if (pi->recursive) return materialized(step.predicate, *pi).lookup(mask, key);
            [[fallthrough]];
        case StateRole::Nwd:
            return goal(step.predicate, mask, key);
        }
        return kEmpty;
    }

    bool contains(const Step& step, const Tuple& tuple) override {
        const PredicateInfo* pi = info(step.predicate);
        if (pi == nullptr) return false;
        switch (pi->role) {
        case StateRole::Old: {
            const Relation* rel = pi->intensional ? old_.derived->find(pi->base) : old_.base->find(pi->base);
            return rel != nullptr && rel->contains(tuple);
        }
        case StateRole::Add:
        case StateRole::Del: {
            auto it = deltas.find(step.predicate);
            return it != deltas.end() && it->second.contains(tuple);
        }
        case StateRole::Nwi:
            if (pi->recursive) return materialized(step.predicate, *pi).contains(tuple);
            [[fallthrough]];
        case StateRole::Nwd:
            return !goal(step.predicate, full_mask(tuple.size()), tuple).empty();
        }
        return false;
    }

private:
    struct GoalTable {
        std::set<Tuple> store;
        std::unordered_map<GoalKey, Relation::TupleRefs, GoalKeyHash> memo;
    };

    const PredicateInfo* info(const PredicateKey& key) const {
        auto it = program_.info.find(key);
        return it == program_.info.end() ? nullptr : &it->second;
    }

    const Relation::TupleRefs& goal(const PredicateKey& predicate, ColumnMask mask, const Tuple& key) {
        GoalTable& table = goals_[predicate];
        GoalKey gk{mask, key};
        if (auto it = table.memo.find(gk); it != table.memo.end()) {
            ++stats_.memo_hits;
            return it->second;
        }
        ++stats_.goal_evaluations;
        std::set<const Tuple*> seen;
        Relation::TupleRefs answers;
        Frame frame;
        for (const CompiledRule& rule : program_.plan(predicate, mask)) {
            if (!detail::seed_frame(rule, key, frame)) continue;
            detail::execute(rule, *this, frame, [&](const Tuple& t) {
                const Tuple* stored = &*table.store.insert(t).first;
                if (seen.insert(stored).second) answers.push_back(stored);
            });
        }
        return table.memo.emplace(std::move(gk), std::move(answers)).first->second;
    }

    const Relation& materialized(const PredicateKey& predicate, const PredicateInfo& pi) {
        if (auto it = nwi_.find(predicate); it != nwi_.end()) return it->second;
        std::map<PredicateKey, Relation> targets;
        std::vector<const CompiledRule*> rules;
        for (const CompiledRule& rule : program_.recursive_nwi[pi.stratum]) {
            targets.try_emplace(rule.head, Relation(rule.head.arity));
            rules.push_back(&rule);
        }
        detail::SaturationStats sat;
        detail::saturate(rules, *this, targets, &sat);
        stats_.rounds += sat.rounds;
        stats_.materialized_nwi += sat.derived;
        for (auto& [key, rel] : targets) nwi_.insert_or_assign(key, std::move(rel));
        return nwi_.at(predicate);
    }

    static inline const Relation::TupleRefs kEmpty{};

    const detail::PropagationPlan& program_;
    const MaterializedState& old_;
    PropagationStats& stats_;
    std::map<PredicateKey, GoalTable> goals_;
    std::map<PredicateKey, Relation> nwi_;
};

} // namespace

PropagationProgram::PropagationProgram(TransformedRuleSet rules) : impl_(std::make_unique<detail::PropagationPlan>(std::move(rules))) {}
PropagationProgram::~PropagationProgram() = default;
PropagationProgram::PropagationProgram(PropagationProgram&&) noexcept = default;
PropagationProgram& PropagationProgram::operator=(PropagationProgram&&) noexcept = default;

const TransformedRuleSet& PropagationProgram::rules() const noexcept { return impl_->t; }

PropagationResult PropagationProgram::run(const MaterializedState& old, const DeltaSet& seeds) const {
    for (const auto& p : seeds.predicates()) {
        if (!impl_->extensional.contains(p)) {
            throw Error(ErrorKind::SeedPredicateUnknown,
                        "seed predicate " + p.str() + " is not an extensional predicate of the rule set");
        }
    }
    auto normalized = normalize_seeds(*old.base, seeds);

    auto data = std::make_shared<PropagationResult::Data>();
    data->old = old;
    data->seeds = std::move(normalized.seeds);
    data->warnings = std::move(normalized.warnings);
    data->intensional = impl_->intensional;

    RunResolver resolver(*impl_, data->old, data->stats);
    for (const auto& [p, tuples] : data->seeds.all_insertions()) {
        auto& rel = resolver.deltas.try_emplace(augmented(StateRole::Add, p), Relation(p.arity)).first->second;
        for (const auto& t : tuples) rel.insert(t);
    }
    for (const auto& [p, tuples] : data->seeds.all_deletions()) {
        auto& rel = resolver.deltas.try_emplace(augmented(StateRole::Del, p), Relation(p.arity)).first->second;
        for (const auto& t : tuples) rel.insert(t);
    }

    if (!data->seeds.empty()) {
        for (std::size_t s = 0; s < impl_->strata.strata.size(); ++s) {
            std::map<PredicateKey, Relation> targets;
            for (const auto& p : impl_->strata.strata[s]) {
                targets.try_emplace(augmented(StateRole::Add, p), Relation(p.arity));
                targets.try_emplace(augmented(StateRole::Del, p), Relation(p.arity));
            }
            std::vector<const CompiledRule*> rules;
            for (const auto& rule : impl_->propagation[s]) rules.push_back(&rule);
            detail::SaturationStats sat;
            detail::saturate(rules, resolver, targets, &sat);
            data->stats.rounds += sat.rounds;
            for (auto& [key, rel] : targets) {
                const auto& pi = impl_->info.at(key);
                for (const auto& t : rel) {
                    if (pi.role == StateRole::Add) {
                        data->induced.add_insertion(pi.base, t);
                    } else {
                        data->induced.add_deletion(pi.base, t);
                    }
                }
                resolver.deltas.insert_or_assign(key, std::move(rel));
            }
        }
    }

    PropagationResult result;
    result.data_ = std::move(data);
    return result;
}

PropagationResult propagate(const TransformedRuleSet& t, const MaterializedState& old, const DeltaSet& seeds) {
    return PropagationProgram(t).run(old, seeds);
}

PropagationResult propagate(const TransformedRuleSet& t, const Snapshot& old, const DeltaSet& seeds) {
    return propagate(t, materialize(t.source, old), seeds);
}

std::string Diff::to_text() const {
    std::ostringstream out;
    for (const auto& [p, tuples] : missing) {
        for (const auto& t : tuples) out << "missing " << render_fact(p, t) << '\n';
    }
    for (const auto& [p, tuples] : unexpected) {
        for (const auto& t : tuples) out << "unexpected " << render_fact(p, t) << '\n';
    }
    return out.str();
}

Diff check_against_oracle(const RuleSet& rules, const Snapshot& old, const DeltaSet& seeds,
                          const TransformOptions& options) {
    auto t = transform(rules, options);
    auto pr = propagate(t, old, seeds);
    Snapshot updated(apply_delta_set(*old, seeds));
    auto oracle = evaluate(rules, updated);

    Diff diff;
    for (const auto& p : rules.intensional()) {
        const Relation& incremental = pr.new_state(p);
        static const Relation none;
        const Relation* expected = oracle.derived.find(p);
        if (expected == nullptr) expected = &none;
        for (const auto& tuple : *expected) {
            if (!incremental.contains(tuple)) diff.missing[p].insert(tuple);
        }
        for (const auto& tuple : incremental) {
            if (!expected->contains(tuple)) diff.unexpected[p].insert(tuple);
        }
    }
    return diff;
}

} // namespace cohup
