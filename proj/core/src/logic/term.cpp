#include "cohup/logic/term.hpp"

#include <algorithm>
#include <map>

#include "cohup/error.hpp"

namespace cohup {

std::string Constant::text() const {
    if (is_integer()) return std::to_string(as_integer());
    return as_symbol();
}

std::size_t Constant::hash() const noexcept {
    if (is_integer()) return std::hash<std::int64_t>{}(as_integer()) * 0x9e3779b97f4a7c15ULL;
    return std::hash<std::string>{}(as_symbol());
}

std::size_t TupleHash::operator()(const Tuple& tuple) const noexcept {
    std::size_t seed = tuple.size();
    for (const auto& c : tuple) {
        seed ^= c.hash() + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    }
    return seed;
}

bool Atom::is_ground() const {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return is_variable(t); });
}

Tuple Atom::to_tuple() const {
    Tuple tuple;
    tuple.reserve(args.size());
    for (const auto& arg : args) {
        const auto* c = std::get_if<Constant>(&arg);
        if (c == nullptr) {
            throw Error(ErrorKind::NonGroundFact, "atom " + predicate + " is not a ground tuple");
        }
        tuple.push_back(*c);
    }
    return tuple;
}

Atom Atom::from_tuple(std::string predicate, const Tuple& tuple) {
    Atom atom{std::move(predicate), {}};
    atom.args.assign(tuple.begin(), tuple.end());
    return atom;
}

Literal Literal::equal(Term lhs, Term rhs) {
    return {LiteralKind::Equal, Atom{"=", {std::move(lhs), std::move(rhs)}}};
}

Literal Literal::not_equal(Term lhs, Term rhs) {
    return {LiteralKind::NotEqual, Atom{"=", {std::move(lhs), std::move(rhs)}}};
}

Literal Literal::member(Term element, Term list) {
    return {LiteralKind::Member, Atom{"member", {std::move(element), std::move(list)}}};
}

std::vector<PredicateKey> RuleSet::intensional() const {
    std::vector<PredicateKey> out;
    std::set<PredicateKey> seen;
    for (const auto& rule : rules) {
        auto key = rule.head.key();
        if (seen.insert(key).second) out.push_back(std::move(key));
    }
    return out;
}

bool RuleSet::is_intensional(const PredicateKey& key) const {
    return std::any_of(rules.begin(), rules.end(),
                       [&](const Rule& r) { return r.head.predicate == key.name && r.head.args.size() == key.arity; });
}

std::vector<const Rule*> RuleSet::rules_for(const PredicateKey& key) const {
    std::vector<const Rule*> out;
    for (const auto& rule : rules) {
        if (rule.head.predicate == key.name && rule.head.args.size() == key.arity) out.push_back(&rule);
    }
    return out;
}

namespace {

void assign_ids(std::vector<Rule>& rules) {
    std::map<PredicateKey, int> counters;
    for (auto& rule : rules) {
        int n = ++counters[rule.head.key()];
        if (rule.id.empty()) rule.id = rule.head.key().str() + "#" + std::to_string(n);
    }
}

} // namespace

RuleSet RuleSet::from_rules(std::vector<Rule> rules) {
    std::set<PredicateKey> heads;
    for (const auto& rule : rules) heads.insert(rule.head.key());
    std::set<PredicateKey> extensional;
    for (const auto& rule : rules) {
        for (const auto& lit : rule.body) {
            if (lit.is_builtin()) continue;
            auto key = lit.atom.key();
            if (!heads.contains(key)) extensional.insert(std::move(key));
        }
    }
    return from_rules(std::move(rules), std::move(extensional));
}

RuleSet RuleSet::from_rules(std::vector<Rule> rules, std::set<PredicateKey> extensional) {
    assign_ids(rules);
    return RuleSet{std::move(rules), std::move(extensional)};
}

void collect_variables(const Term& term, std::vector<std::string>& out) {
    if (const auto* v = std::get_if<Variable>(&term)) {
        if (std::find(out.begin(), out.end(), v->name) == out.end()) out.push_back(v->name);
    }
}

void collect_variables(const Atom& atom, std::vector<std::string>& out) {
    for (const auto& arg : atom.args) collect_variables(arg, out);
}

} // namespace cohup
