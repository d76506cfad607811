#include "cohup/eval/engine.hpp"

#include "cohup/error.hpp"
#include "cohup/logic/dependency_graph.hpp"
#include "eval/join.hpp"

namespace cohup {

std::size_t Stratification::stratum_of(const PredicateKey& key) const {
    for (std::size_t i = 0; i < strata.size(); ++i) {
        if (strata[i].contains(key)) return i;
    }
    return strata.size();
}

Stratification stratify(const RuleSet& rules) {
    const auto graph = DependencyGraph::build(rules);
    for (const auto& e : graph.edges()) {
        if (e.negative && graph.is_intensional(e.to) && (e.from == e.to || graph.mutually_dependent(e.from, e.to))) {
            throw Error(ErrorKind::NotStratifiable,
                        e.from.str() + " depends negatively on " + e.to.str() + " inside a recursive cycle");
        }
    }
    return {graph.components()};
}

namespace {

class BaseResolver final : public detail::Resolver {
public:
    BaseResolver(const RuleSet& rules, const FactBase& base, const FactBase& derived)
        : base_(base), derived_(derived) {
        for (const auto& rule : rules.rules) intensional_.insert(rule.head.key());
    }

    const Relation::TupleRefs& lookup(const detail::Step& step, ColumnMask mask, const Tuple& key) override {
        static const Relation::TupleRefs empty;
        const Relation* rel = source(step.predicate);
        return rel == nullptr ? empty : rel->lookup(mask, key);
    }

    bool contains(const detail::Step& step, const Tuple& tuple) override {
        const Relation* rel = source(step.predicate);
        return rel != nullptr && rel->contains(tuple);
    }

private:
    const Relation* source(const PredicateKey& p) const {
        return intensional_.contains(p) ? derived_.find(p) : base_.find(p);
    }

    const FactBase& base_;
    const FactBase& derived_;
    std::set<PredicateKey> intensional_;
};

} // namespace

Materialization evaluate(const RuleSet& rules, const Snapshot& base) {
    const Stratification strat = stratify(rules);

    std::vector<detail::CompiledRule> compiled;
    compiled.reserve(rules.rules.size());
    for (const auto& rule : rules.rules) compiled.push_back(detail::compile(rule));

    Materialization out;
    BaseResolver resolver(rules, *base, out.derived);
    for (const auto& stratum : strat.strata) {
        std::vector<const detail::CompiledRule*> members;
        std::map<PredicateKey, Relation> targets;
        for (const auto& p : stratum) targets.emplace(p, Relation(p.arity));
        for (const auto& rule : compiled) {
            if (stratum.contains(rule.head)) members.push_back(&rule);
        }
        detail::SaturationStats stats;
        detail::saturate(members, resolver, targets, &stats);
        out.stats.strata.push_back({stats.rounds, stats.derived});
        for (auto& [p, rel] : targets) out.derived.relation(p) = std::move(rel);
    }
    return out;
}

std::vector<Substitution> evaluate_query(const RuleSet& rules, const Snapshot& base, const Atom& goal) {
    if (rules.is_intensional(goal.key())) return query(evaluate(rules, base).derived, goal);
    return query(*base, goal);
}

const Relation* MaterializedState::find(const PredicateKey& p) const {
    if (const Relation* rel = derived->find(p)) return rel;
    return base->find(p);
}

MaterializedState materialize(const RuleSet& rules, Snapshot base) {
    Materialization m = evaluate(rules, base);
    return {std::move(base), Snapshot(std::move(m.derived))};
}

} // namespace cohup
