#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cohup {

/// A ground value: an integer or an identifier. Integers order before
/// identifiers; identifiers order lexicographically.
class Constant {
public:
    Constant() = default;

    static Constant integer(std::int64_t value) { return Constant(value); }
    static Constant symbol(std::string text) { return Constant(std::move(text)); }

    bool is_integer() const noexcept { return value_.index() == 0; }
    std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
    const std::string& as_symbol() const { return std::get<std::string>(value_); }

    /// Text form without quoting (integers in decimal).
    std::string text() const;
    std::size_t hash() const noexcept;

    auto operator<=>(const Constant&) const = default;
    bool operator==(const Constant&) const = default;

private:
    explicit Constant(std::int64_t v) : value_(v) {}
    explicit Constant(std::string s) : value_(std::move(s)) {}

    std::variant<std::int64_t, std::string> value_{std::int64_t{0}};
};

/// Shorthand for the common case of symbol constants.
inline Constant sym(std::string text) { return Constant::symbol(std::move(text)); }
inline Constant num(std::int64_t value) { return Constant::integer(value); }

using Tuple = std::vector<Constant>;

struct TupleHash {
    std::size_t operator()(const Tuple& tuple) const noexcept;
};

struct Variable {
    std::string name;

    auto operator<=>(const Variable&) const = default;
};

/// Ground list, only meaningful as the second argument of member/2.
struct ListConstant {
    std::vector<Constant> items;

    auto operator<=>(const ListConstant&) const = default;
};

using Term = std::variant<Variable, Constant, ListConstant>;

inline Term var(std::string name) { return Variable{std::move(name)}; }

inline bool is_variable(const Term& t) { return std::holds_alternative<Variable>(t); }
inline bool is_constant(const Term& t) { return std::holds_alternative<Constant>(t); }
inline bool is_list(const Term& t) { return std::holds_alternative<ListConstant>(t); }

struct PredicateKey {
    std::string name;
    std::size_t arity = 0;

    auto operator<=>(const PredicateKey&) const = default;
    std::string str() const { return name + "/" + std::to_string(arity); }
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    PredicateKey key() const { return {predicate, args.size()}; }
    bool is_ground() const;
    /// Requires is_ground(); list arguments are rejected.
    Tuple to_tuple() const;
    static Atom from_tuple(std::string predicate, const Tuple& tuple);

    auto operator<=>(const Atom&) const = default;
};

enum class LiteralKind : std::uint8_t {
    Positive,
    Negated,
    Equal,    // X = Y
    NotEqual, // not(X = Y)
    Member,   // member(X, [a, b, ...])
};

/// Body literal. Built-ins reuse Atom storage: predicate "=" or "member"
/// with exactly two arguments.
struct Literal {
    LiteralKind kind = LiteralKind::Positive;
    Atom atom;

    static Literal positive(Atom a) { return {LiteralKind::Positive, std::move(a)}; }
    static Literal negated(Atom a) { return {LiteralKind::Negated, std::move(a)}; }
    static Literal equal(Term lhs, Term rhs);
    static Literal not_equal(Term lhs, Term rhs);
    static Literal member(Term element, Term list);

    bool is_builtin() const noexcept {
        return kind == LiteralKind::Equal || kind == LiteralKind::NotEqual ||
               kind == LiteralKind::Member;
    }
    const Term& lhs() const { return atom.args.at(0); }
    const Term& rhs() const { return atom.args.at(1); }

    auto operator<=>(const Literal&) const = default;
};

struct Rule {
    std::string id;
    Atom head;
    std::vector<Literal> body;

    bool is_fact() const noexcept { return body.empty(); }
    auto operator<=>(const Rule&) const = default;
};

/// Rules plus the declared extensional (stored) predicates they range over.
struct RuleSet {
    std::vector<Rule> rules;
    std::set<PredicateKey> extensional;

    /// Head predicates in order of first definition.
    std::vector<PredicateKey> intensional() const;
    bool is_intensional(const PredicateKey& key) const;
    std::vector<const Rule*> rules_for(const PredicateKey& key) const;

    /// Builds a rule set, inferring extensional predicates (body predicates
    /// without defining rules) when none are given, and assigning ids of the
    /// form "name/arity#k" to rules that lack one.
    static RuleSet from_rules(std::vector<Rule> rules);
    static RuleSet from_rules(std::vector<Rule> rules, std::set<PredicateKey> extensional);
};

/// Collects variable names in order of first occurrence.
void collect_variables(const Term& term, std::vector<std::string>& out);
void collect_variables(const Atom& atom, std::vector<std::string>& out);

} // namespace cohup

template <>
struct std::hash<cohup::Constant> {
    std::size_t operator()(const cohup::Constant& c) const noexcept { return c.hash(); }
};
