#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "cohup/logic/term.hpp"

namespace cohup {

/// Rule and fact files share one lexical syntax: clauses terminated by '.',
/// ':-' between head and body, ',' between literals, '%' line comments,
/// not(...) for negation, single-quoted or double-quoted identifiers for
/// names that are not plain lowercase words.
struct Clause {
    Rule rule;
    std::size_t line = 0;
};

struct Fact {
    Atom atom;
    std::size_t line = 0;
};

std::vector<Clause> parse_clauses(std::string_view text);

/// Parses exactly one clause. The returned rule has an empty id.
Rule parse_rule(std::string_view text);

/// Parses a rule file. Without an explicit extensional set, body predicates
/// that no clause defines are taken as extensional.
RuleSet parse_rule_file(std::string_view text,
                        std::optional<std::set<PredicateKey>> extensional = std::nullopt);

std::vector<Fact> parse_facts(std::string_view text);
std::vector<Atom> parse_fact_file(std::string_view text);

} // namespace cohup
