#pragma once

#include <set>
#include <string>
#include <vector>

#include "cohup/logic/term.hpp"

namespace cohup {

enum class ViolationKind {
    DisallowedPredicate, // body predicate neither allowed, extensional, defined, nor built-in
    ComplexHeadTerm,     // list constant in a head
    ComplexTerm,         // list constant outside the second argument of member/2
    UnsafeVariable,      // range restriction violated
    ExtensionalHead,     // a rule defines a predicate declared extensional
};

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
    ViolationKind kind;
    std::string rule_id;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    std::string summary() const;
};

/// Checks the restricted rule language: flat heads, range restriction, and
/// body predicates drawn from `allowed`, the rule set's extensional
/// predicates, its own heads, or the built-ins =/2, member/2 and not/1.
/// Never throws; every violation is reported.
ValidationReport validate_ruleset(const RuleSet& rules, const std::set<PredicateKey>& allowed);

} // namespace cohup
