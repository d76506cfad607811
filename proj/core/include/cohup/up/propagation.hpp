#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cohup/eval/engine.hpp"
#include "cohup/store/delta_set.hpp"
#include "cohup/up/transform.hpp"

namespace cohup {

namespace detail {
struct PropagationPlan;
}

struct PropagationStats {
    std::size_t rounds = 0;
    std::size_t goal_evaluations = 0; // distinct (predicate, bound pattern) probes of nwd_/nwi_
    std::size_t memo_hits = 0;
    std::size_t materialized_nwi = 0; // tuples of fully computed recursive nwi_ relations
};

/// Outcome of one propagation run. Copies share the underlying data.
class PropagationResult {
public:
    const DeltaSet& seeds() const noexcept;
    /// Induced insertions and deletions of every intensional predicate.
    const DeltaSet& induced() const noexcept;
    const std::vector<Warning>& warnings() const noexcept;
    const MaterializedState& old_state() const noexcept;
    const PropagationStats& stats() const noexcept;

    /// (old(p) \ deletions(p)) ∪ additions(p); computed on first request.
    const Relation& new_state(const PredicateKey& p) const;
    /// Tuples of the new state of pattern's predicate matching the pattern,
    /// in tuple order, without building the whole new relation.
    std::vector<Tuple> new_state_matching(const Atom& pattern) const;

private:
    friend class PropagationProgram;
    struct Data;
    std::shared_ptr<Data> data_;
};

/// A transformed rule set prepared for repeated propagation runs. Query
/// plans are compiled once and shared; each run owns its memo tables.
class PropagationProgram {
public:
    explicit PropagationProgram(TransformedRuleSet rules);
    ~PropagationProgram();
    PropagationProgram(PropagationProgram&&) noexcept;
    PropagationProgram& operator=(PropagationProgram&&) noexcept;

    const TransformedRuleSet& rules() const noexcept;

    /// Normalizes `seeds` against old.base, then computes the induced deltas
    /// stratum by stratum. Throws SeedPredicateUnknown for seeds on
    /// predicates that are not extensional in the source rule set, and
    /// ConflictingSeed as normalize_seeds does.
    PropagationResult run(const MaterializedState& old, const DeltaSet& seeds) const;

private:
    std::unique_ptr<detail::PropagationPlan> impl_;
};

PropagationResult propagate(const TransformedRuleSet& t, const MaterializedState& old, const DeltaSet& seeds);
/// Materializes `old` with the source rules first.
PropagationResult propagate(const TransformedRuleSet& t, const Snapshot& old, const DeltaSet& seeds);

/// Per-predicate disagreement between incremental and full evaluation.
struct Diff {
    std::map<PredicateKey, std::set<Tuple>> missing;    // in the oracle, not in the incremental state
    std::map<PredicateKey, std::set<Tuple>> unexpected; // in the incremental state, not in the oracle

    bool empty() const noexcept { return missing.empty() && unexpected.empty(); }
    std::string to_text() const;
};

/// Compares the propagated new state of every intensional predicate against
/// evaluate(rules, apply_delta_set(old, seeds)).
Diff check_against_oracle(const RuleSet& rules, const Snapshot& old, const DeltaSet& seeds,
                          const TransformOptions& options = {});

} // namespace cohup
