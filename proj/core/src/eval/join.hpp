#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "cohup/logic/term.hpp"
#include "cohup/store/relation.hpp"

namespace cohup::detail {

struct Slot {
    enum class Kind : std::uint8_t {
        Constant, // fixed value from the rule text
        Bound,    // variable bound before this literal
        Bind,     // first occurrence: binds the variable
        Check,    // repeated occurrence inside the same literal
    };
    Kind kind = Kind::Constant;
    std::size_t var = 0;
    Constant constant;
};

/// One executable body literal. Steps run in rule order except that
/// filters (negation, built-ins) wait until their variables are bound.
struct Step {
    LiteralKind kind = LiteralKind::Positive;
    PredicateKey predicate;
    std::size_t body_index = 0;
    std::vector<Slot> args;
    ColumnMask mask = 0; // columns bound on entry (Positive only)
    std::vector<Constant> list;
};

struct CompiledRule {
    PredicateKey head;
    std::vector<Slot> head_args;
    std::vector<Step> steps;
    std::size_t var_count = 0;
    ColumnMask head_bound = 0;
};

/// Compiles a validated rule. Head columns in `head_bound` are supplied by
/// the caller before execution (demand-driven evaluation).
CompiledRule compile(const Rule& rule, ColumnMask head_bound = 0);

/// Where positive and negated literals find their tuples.
class Resolver {
public:
    virtual ~Resolver() = default;
    virtual const Relation::TupleRefs& lookup(const Step& step, ColumnMask mask, const Tuple& key) = 0;
    virtual bool contains(const Step& step, const Tuple& tuple) = 0;
};

using Frame = std::vector<const Constant*>;
using Emit = std::function<void(const Tuple&)>;

/// Runs the body of `rule` from an initial frame and emits each head tuple.
void execute(const CompiledRule& rule, Resolver& resolver, Frame& frame, const Emit& emit);

/// Prepares a frame for a demand-driven run: binds head variables from the
/// bound columns of `pattern`. Returns false when a head constant clashes.
bool seed_frame(const CompiledRule& rule, const Tuple& pattern, Frame& frame);

struct SaturationStats {
    std::size_t rounds = 0;
    std::size_t derived = 0;
};

/// Semi-naive fixpoint of `rules` whose heads are the keys of `targets`.
/// Literals over target predicates read the relations being built; all
/// others go through `outside`.
void saturate(std::span<const CompiledRule* const> rules, Resolver& outside,
              std::map<PredicateKey, Relation>& targets, SaturationStats* stats = nullptr);

} // namespace cohup::detail
