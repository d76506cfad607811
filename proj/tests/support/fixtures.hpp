#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cohup/metrics/lcom1.hpp"
#include "cohup/model/cohesion_model.hpp"
#include "cohup/store/delta_set.hpp"

namespace cohup::testing {

/// One class, three methods, two fields; m1 and m2 share f1, m3 alone uses f2.
inline constexpr std::string_view kM0 =
    "c(c1).\n"
    "cm(c1, m1). cm(c1, m2). cm(c1, m3).\n"
    "cf(c1, f1). cf(c1, f2).\n"
    "mf(m1, f1). mf(m2, f1). mf(m3, f2).\n";

/// Move m3 out of c1 into a new class c2.
inline constexpr std::string_view kR0 = "add_c(c2). del_cm(c1, m3). add_cm(c2, m3).\n";

inline constexpr std::string_view kPqrsProgram = "p(X) :- q(X, Y), r(Y), not(s(Y)).\n";
inline constexpr std::string_view kPqrsFacts =
    "q(1, 2). q(2, 3). q(3, 4).\n"
    "r(3). r(4). r(5).\n"
    "s(4). s(5). s(6).\n";

/// Two derivations of p(1); deleting q(1) leaves p(1) derivable via r(1).
inline constexpr std::string_view kAlternativeProgram = "p(X) :- q(X).\np(X) :- r(X).\n";
inline constexpr std::string_view kAlternativeFacts = "q(1). r(1).\n";

CohesionModel m0();
DeltaSet r0();
FactBase facts(std::string_view text);
DeltaSet deltas(std::string_view text);

/// Rule text with variables renamed V1, V2, ... in order of first
/// occurrence and the id dropped; equal for alpha-equivalent rules.
std::string canonical(const Rule& rule);
std::multiset<std::string> canonical(const std::vector<Rule>& rules);

std::string read_file(const std::string& path);

} // namespace cohup::testing
