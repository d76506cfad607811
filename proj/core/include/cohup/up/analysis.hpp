#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cohup/logic/dependency_graph.hpp"
#include "cohup/logic/term.hpp"

namespace cohup {

struct HeadOfRule {
    std::string head_id;
    Atom head;
    PredicateKey key;
};

struct BodyPredicateOfRule {
    std::string head_id;
    std::string body_id;
    std::size_t position = 0; // 1-based
    Literal literal;
    bool negated = false;
};

/// Occurrences of each variable in one atom: argument positions (0-based).
struct RuleVariables {
    std::string head_id;
    std::string body_id; // empty for the head
    std::map<std::string, std::vector<std::size_t>> occurrences;
};

struct TransitiveDependency {
    PredicateKey predicate;
    bool through_negation = false;

    auto operator<=>(const TransitiveDependency&) const = default;
};

/// Meta information about a rule set, collected once before generating the
/// update propagation rules.
struct RuleMeta {
    std::vector<HeadOfRule> heads;
    std::vector<BodyPredicateOfRule> body;
    std::vector<RuleVariables> variables;
    std::map<PredicateKey, std::set<TransitiveDependency>> dependency_closure;
    /// Per rule id: head variables, and variables occurring only in the body.
    std::map<std::string, std::vector<std::string>> head_variables;
    std::map<std::string, std::vector<std::string>> body_only_variables;
    /// Rules whose head is mutually dependent with one of their body predicates.
    std::set<std::string> self_referencing;
    DependencyGraph graph;

    std::vector<const BodyPredicateOfRule*> body_of(const std::string& head_id) const;
};

RuleMeta analyse_rules(const RuleSet& rules);

} // namespace cohup
