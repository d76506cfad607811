#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "cohup/eval/engine.hpp"
#include "cohup/logic/term.hpp"
#include "cohup/up/propagation.hpp"

namespace cohup {

/// Which pairs the LCOM1 mapping counts.
enum class Mapping {
    LackingPairs,   // lp pairs: methods sharing no field (default)
    ConnectedPairs, // cp pairs, as the original mapping listing is printed
};

std::optional<Mapping> parse_mapping(std::string_view name); // "prose" | "as-printed"
std::string_view to_string(Mapping mapping) noexcept;

/// Exact metric value: a count of ordered method pairs, halved.
class Lcom1Value {
public:
    constexpr Lcom1Value() = default;
    constexpr explicit Lcom1Value(std::int64_t ordered_pairs) : ordered_pairs_(ordered_pairs) {}

    constexpr std::int64_t ordered_pairs() const noexcept { return ordered_pairs_; }
    constexpr bool is_integer() const noexcept { return ordered_pairs_ % 2 == 0; }
    constexpr std::int64_t numerator() const noexcept { return is_integer() ? ordered_pairs_ / 2 : ordered_pairs_; }
    constexpr std::int64_t denominator() const noexcept { return is_integer() ? 1 : 2; }
    double value() const noexcept { return static_cast<double>(ordered_pairs_) / 2.0; }
    /// "2", "-1" or "3/2".
    std::string text() const;

    constexpr Lcom1Value operator-(Lcom1Value other) const { return Lcom1Value(ordered_pairs_ - other.ordered_pairs_); }
    auto operator<=>(const Lcom1Value&) const = default;

private:
    std::int64_t ordered_pairs_ = 0;
};

using MetricResult = std::map<Constant, Lcom1Value>;

/// cp(C,M,N) :- mf(M,F), cf(C,F), mf(N,F).
/// lp(C,M,N) :- cm(C,M), cm(C,N), not(cp(C,M,N)).
RuleSet lcom1_rules();
inline constexpr std::string_view kLcom1RuleText =
    "cp(C, M, N) :- mf(M, F), cf(C, F), mf(N, F).\n"
    "lp(C, M, N) :- cm(C, M), cm(C, N), not(cp(C, M, N)).\n";

/// Parses metric rules over the cohesion model predicates. The extensional
/// predicates are those the rules read plus c/1, which refactorings seed.
/// Throws InvalidRuleSet when validation fails and NotStratifiable as
/// stratify does.
RuleSet load_metric_rules(std::string_view text);

/// Requires the pair predicate of `mapping` materialized in `state`.
/// Throws UnknownClass when c(cls) is absent.
Lcom1Value lcom1(const MaterializedState& state, const Constant& cls, Mapping mapping = Mapping::LackingPairs);
MetricResult lcom1_all(const MaterializedState& state, Mapping mapping = Mapping::LackingPairs);

/// Recomputes the mapping only for classes named in a c/cm/cf seed or an
/// lp/cp induced delta of `pr`; other entries are copied from `before`.
MetricResult remap_incremental(const MetricResult& before, const PropagationResult& pr,
                               Mapping mapping = Mapping::LackingPairs);

/// "class value" lines sorted by class id.
std::string render(const MetricResult& result);

} // namespace cohup
