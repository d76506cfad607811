#pragma once

#include <cstdint>
#include <random>

#include "cohup/model/cohesion_model.hpp"
#include "cohup/refactor/refactoring.hpp"
#include "cohup/store/delta_set.hpp"

namespace cohup::testing {

using Rng = std::mt19937_64;

inline std::uint64_t pick(Rng& rng, std::uint64_t n) { return rng() % n; }
inline bool chance(Rng& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

struct ModelLimits {
    std::size_t classes = 10;
    std::size_t methods = 8;
    std::size_t fields = 8;
};

/// Random cohesion model with 1..limits.classes classes and up to the given
/// members per class; accesses may cross class boundaries.
CohesionModel random_model(Rng& rng, const ModelLimits& limits = {});

/// Random stratifiable rule set over e0/1, e1/2, e2/2 with intensional
/// p0..p3, including recursion, negation and built-ins.
RuleSet random_ruleset(Rng& rng);
/// Random facts for the extensional predicates of `rules` over 1..3.
FactBase random_base(Rng& rng, const RuleSet& rules);
/// A few insertions and deletions against `base`, never conflicting.
DeltaSet random_seeds(Rng& rng, const RuleSet& rules, const FactBase& base);

} // namespace cohup::testing
