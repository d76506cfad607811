#pragma once

#include <set>
#include <vector>

#include "cohup/logic/term.hpp"
#include "cohup/store/fact_base.hpp"

namespace cohup {

/// Strata of intensional predicates. Negated dependencies sit in strictly
/// earlier strata; each stratum is one strongly connected component.
struct Stratification {
    std::vector<std::set<PredicateKey>> strata;

    std::size_t stratum_of(const PredicateKey& key) const; // strata.size() if absent
};

/// Throws NotStratifiable on a cycle through negation.
Stratification stratify(const RuleSet& rules);

struct EvaluationStats {
    struct Stratum {
        std::size_t rounds = 0;
        std::size_t derived = 0;
    };
    std::vector<Stratum> strata;
};

/// Derived relations of every intensional predicate over one snapshot.
struct Materialization {
    FactBase derived;
    EvaluationStats stats;
};

/// Bottom-up, stratified, semi-naive least model of a validated rule set.
/// Base facts of intensional predicates are ignored.
Materialization evaluate(const RuleSet& rules, const Snapshot& base);

/// query(materialization ∪ base, goal)
std::vector<Substitution> evaluate_query(const RuleSet& rules, const Snapshot& base, const Atom& goal);

/// Extensional snapshot paired with its materialization: the "old state"
/// that update propagation starts from.
struct MaterializedState {
    Snapshot base;
    Snapshot derived;

    /// Relation of p in this state: derived for intensional predicates when
    /// present there, otherwise from the base.
    const Relation* find(const PredicateKey& p) const;
};

MaterializedState materialize(const RuleSet& rules, Snapshot base);

} // namespace cohup
