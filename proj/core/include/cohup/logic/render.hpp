#pragma once

#include <string>
#include <vector>

#include "cohup/logic/term.hpp"

namespace cohup {

// Canonical textual rendering; parse_rule(render(r)) reproduces r.

std::string render(const Constant& constant);
std::string render(const Term& term);
std::string render(const Atom& atom);
std::string render(const Literal& literal);
std::string render(const Rule& rule);
std::string render(const std::vector<Rule>& rules);
std::string render_fact(const PredicateKey& key, const Tuple& tuple);

} // namespace cohup
