#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cohup/logic/term.hpp"
#include "cohup/store/fact_base.hpp"

namespace cohup {

/// Per-predicate insertions and deletions. A raw DeltaSet may hold the same
/// tuple on both sides; normalize_seeds rejects that.
class DeltaSet {
public:
    using TupleSet = std::set<Tuple>;

    bool add_insertion(const PredicateKey& key, Tuple tuple);
    bool add_deletion(const PredicateKey& key, Tuple tuple);
    bool add_insertion(const Atom& fact);
    bool add_deletion(const Atom& fact);

    const TupleSet& insertions(const PredicateKey& key) const;
    const TupleSet& deletions(const PredicateKey& key) const;
    const std::map<PredicateKey, TupleSet>& all_insertions() const noexcept { return additions_; }
    const std::map<PredicateKey, TupleSet>& all_deletions() const noexcept { return deletions_; }

    /// Predicates with at least one insertion or deletion.
    std::set<PredicateKey> predicates() const;
    bool empty() const noexcept { return additions_.empty() && deletions_.empty(); }
    std::size_t size() const;
    bool is_disjoint() const;
    DeltaSet inverse() const;

    /// Facts as add_p(...) / del_p(...) clauses, one per line.
    std::string to_text() const;
    static DeltaSet from_facts(const std::vector<Atom>& delta_facts);

    bool operator==(const DeltaSet& other) const = default;

private:
    std::map<PredicateKey, TupleSet> additions_;
    std::map<PredicateKey, TupleSet> deletions_;
};

struct Warning {
    std::string message;
};

struct NormalizedSeeds {
    DeltaSet seeds;
    std::vector<Warning> warnings;
};

/// Drops deletions of absent facts and insertions of present facts, with a
/// warning each. Throws ConflictingSeed when a tuple is both inserted and
/// deleted.
NormalizedSeeds normalize_seeds(const FactBase& base, const DeltaSet& raw);

/// (base \ deletions) ∪ insertions, per predicate.
FactBase apply_delta_set(const FactBase& base, const DeltaSet& deltas);

} // namespace cohup
