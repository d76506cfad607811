#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cohup/logic/dependency_graph.hpp"
#include "cohup/logic/term.hpp"
#include "cohup/up/analysis.hpp"

namespace cohup {

/// Which state or delta of a predicate an augmented predicate stands for.
enum class StateRole : std::uint8_t {
    Old, // p
    Add, // add_p
    Del, // del_p
    Nwd, // nwd_p: new state, direct transition
    Nwi, // nwi_p: new state, indirect transition
};

std::string augmented_name(StateRole role, const std::string& predicate);
PredicateKey augmented(StateRole role, const PredicateKey& key);
/// Splits "add_p" into (Add, "p"); names without a reserved prefix are Old.
std::pair<StateRole, std::string> split_augmented(const std::string& name);

struct TransformOptions {
    bool effectiveness_tests = true;
};

/// New-state flavour used for a body predicate `p` inside a clause for
/// `context`: nwi for intensional p under negation or mutually dependent
/// with the context, nwd otherwise.
StateRole select_state(const PredicateKey& p, const PredicateKey& context, bool negated,
                       const DependencyGraph& graph);

struct TransformedRuleSet {
    RuleSet source;
    std::vector<Rule> propagation_rules;
    std::vector<Rule> direct_transition_rules;
    std::vector<Rule> indirect_transition_rules;
    DependencyGraph graph;
    TransformOptions options;

    /// Generated rules grouped per predicate: add_, del_, nwi_, nwd_.
    std::vector<Rule> all_generated() const;
    /// Source rules plus every generated rule, over the extended alphabet.
    RuleSet augmented() const;
};

std::vector<Rule> generate_propagation_rules(const Rule& rule, const RuleMeta& meta,
                                             const TransformOptions& options = {});

struct TransitionRules {
    std::vector<Rule> direct;
    std::vector<Rule> indirect;
};

TransitionRules generate_transition_rules(const RuleSet& rules, const RuleMeta& meta);

/// Validates and stratifies `rules`, then generates the full update
/// propagation program. Throws InvalidRuleSet or NotStratifiable.
TransformedRuleSet transform(const RuleSet& rules, const TransformOptions& options = {});

std::string render(const TransformedRuleSet& t);

} // namespace cohup
