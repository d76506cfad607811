#include "cohup/logic/render.hpp"

#include <cctype>

namespace cohup {

namespace {

bool is_plain_name(const std::string& s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s.front()))) return false;
    for (char ch : s) {
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    }
    return true;
}

std::string quote_name(const std::string& s) {
    if (is_plain_name(s)) return s;
    std::string out = "'";
    for (char ch : s) {
        if (ch == '\'' || ch == '\\') out += '\\';
        out += ch;
    }
    out += '\'';
    return out;
}

std::string render_args(const std::vector<Term>& args) {
    std::string out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) out += ", ";
        out += render(args[i]);
    }
    return out;
}

} // namespace

std::string render(const Constant& constant) {
    if (constant.is_integer()) return std::to_string(constant.as_integer());
    return quote_name(constant.as_symbol());
}

std::string render(const Term& term) {
    if (const auto* v = std::get_if<Variable>(&term)) return v->name;
    if (const auto* c = std::get_if<Constant>(&term)) return render(*c);
    const auto& list = std::get<ListConstant>(term);
    std::string out = "[";
    for (std::size_t i = 0; i < list.items.size(); ++i) {
        if (i > 0) out += ", ";
        out += render(list.items[i]);
    }
    return out + "]";
}

std::string render(const Atom& atom) {
    std::string out = quote_name(atom.predicate);
    if (!atom.args.empty()) out += "(" + render_args(atom.args) + ")";
    return out;
}

std::string render(const Literal& literal) {
    switch (literal.kind) {
    case LiteralKind::Positive: return render(literal.atom);
    case LiteralKind::Negated: return "not(" + render(literal.atom) + ")";
    case LiteralKind::Equal: return render(literal.lhs()) + " = " + render(literal.rhs());
    case LiteralKind::NotEqual: return "not(" + render(literal.lhs()) + " = " + render(literal.rhs()) + ")";
    case LiteralKind::Member: return "member(" + render_args(literal.atom.args) + ")";
    }
    return {};
}

std::string render(const Rule& rule) {
    std::string out = render(rule.head);
    if (!rule.body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
            if (i > 0) out += ", ";
            out += render(rule.body[i]);
        }
    }
    return out + ".";
}

std::string render(const std::vector<Rule>& rules) {
    std::string out;
    for (const auto& rule : rules) out += render(rule) + "\n";
    return out;
}

std::string render_fact(const PredicateKey& key, const Tuple& tuple) {
    return render(Atom::from_tuple(key.name, tuple)) + ".";
}

} // namespace cohup
