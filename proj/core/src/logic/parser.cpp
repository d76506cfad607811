#include "cohup/logic/parser.hpp"

#include <cctype>
#include <charconv>

#include "cohup/error.hpp"

namespace cohup {

namespace {

enum class Tok { Name, Var, Int, Quoted, LParen, RParen, LBracket, RBracket, Comma, Period, Neck, Eq, NotEq, Bar, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
};

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t pos = 0;
    std::size_t line = 1;
    auto at = [&](std::size_t i) -> char { return i < src.size() ? src[i] : '\0'; };
    auto is_ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };

    while (pos < src.size()) {
        char c = src[pos];
        if (c == '\n') {
            ++line;
            ++pos;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
            continue;
        }
        if (c == '%') {
            while (pos < src.size() && src[pos] != '\n') ++pos;
            continue;
        }
        if (c == '/' && at(pos + 1) == '*') {
            pos += 2;
            while (pos < src.size() && !(src[pos] == '*' && at(pos + 1) == '/')) {
                if (src[pos] == '\n') ++line;
                ++pos;
            }
            if (pos >= src.size()) throw Error(ErrorKind::SyntaxError, "unterminated block comment", line);
            pos += 2;
            continue;
        }
        std::size_t start = pos;
        if (std::islower(static_cast<unsigned char>(c))) {
            while (is_ident(at(pos))) ++pos;
            out.push_back({Tok::Name, std::string(src.substr(start, pos - start)), line});
            continue;
        }
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            while (is_ident(at(pos))) ++pos;
            out.push_back({Tok::Var, std::string(src.substr(start, pos - start)), line});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && std::isdigit(static_cast<unsigned char>(at(pos + 1))))) {
            ++pos;
            while (std::isdigit(static_cast<unsigned char>(at(pos)))) ++pos;
            if (std::isalpha(static_cast<unsigned char>(at(pos))) || at(pos) == '_') {
                throw Error(ErrorKind::SyntaxError, "malformed number", line);
            }
            out.push_back({Tok::Int, std::string(src.substr(start, pos - start)), line});
            continue;
        }
        if (c == '\'' || c == '"') {
            const char quote = c;
            const std::size_t open_line = line;
            std::string text;
            ++pos;
            for (;;) {
                if (pos >= src.size()) throw Error(ErrorKind::SyntaxError, "unterminated quoted name", open_line);
                char ch = src[pos++];
                if (ch == quote) {
                    if (at(pos) == quote) { // doubled quote
                        text += quote;
                        ++pos;
                        continue;
                    }
                    break;
                }
                if (ch == '\\' && pos < src.size()) ch = src[pos++];
                if (ch == '\n') ++line;
                text += ch;
            }
            out.push_back({Tok::Quoted, std::move(text), open_line});
            continue;
        }
        ++pos;
        switch (c) {
        case '(': out.push_back({Tok::LParen, "(", line}); break;
        case ')': out.push_back({Tok::RParen, ")", line}); break;
        case '[': out.push_back({Tok::LBracket, "[", line}); break;
        case ']': out.push_back({Tok::RBracket, "]", line}); break;
        case ',': out.push_back({Tok::Comma, ",", line}); break;
        case '.': out.push_back({Tok::Period, ".", line}); break;
        case '|': out.push_back({Tok::Bar, "|", line}); break;
        case '=': out.push_back({Tok::Eq, "=", line}); break;
        case ':':
            if (at(pos) != '-') throw Error(ErrorKind::SyntaxError, "expected ':-'", line);
            ++pos;
            out.push_back({Tok::Neck, ":-", line});
            break;
        case '\\':
            if (at(pos) != '=') throw Error(ErrorKind::SyntaxError, "expected '\\='", line);
            ++pos;
            out.push_back({Tok::NotEq, "\\=", line});
            break;
        default:
            throw Error(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "'", line);
        }
    }
    out.push_back({Tok::End, "", line});
    return out;
}

// Parser-side term; compound terms are representable here only so that
// they can be rejected with a precise error.
struct ParsedTerm {
    enum class Kind { Var, Const, List, Compound } kind = Kind::Const;
    std::string name;
    Constant constant;
    std::vector<ParsedTerm> args;
    bool has_tail = false;
    std::size_t line = 0;
};

class ClauseParser {
public:
    explicit ClauseParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    bool at_end() const { return peek().kind == Tok::End; }

    Clause clause() {
        anon_counter_ = 0;
        const std::size_t line = peek().line;
        ParsedTerm head = term();
        Rule rule;
        rule.head = head_atom(head);
        if (accept(Tok::Neck)) {
            do {
                rule.body.push_back(literal());
            } while (accept(Tok::Comma));
        }
        expect(Tok::Period, "'.' at end of clause");
        return {std::move(rule), line};
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    Token next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    bool accept(Tok kind) {
        if (peek().kind != kind) return false;
        ++pos_;
        return true;
    }
    void expect(Tok kind, const char* what) {
        if (!accept(kind)) fail(std::string("expected ") + what);
    }
    [[noreturn]] void fail(const std::string& message) const {
        const auto& t = peek();
        std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw Error(ErrorKind::SyntaxError, message + ", found " + found, t.line);
    }

    ParsedTerm term() {
        switch (peek().kind) {
        case Tok::Var:
        case Tok::Int:
        case Tok::Name:
        case Tok::Quoted:
        case Tok::LBracket: break;
        default: fail("expected a term");
        }
        const Token t = next();
        ParsedTerm out;
        out.line = t.line;
        switch (t.kind) {
        case Tok::Var:
            out.kind = ParsedTerm::Kind::Var;
            out.name = t.text == "_" ? "_" + std::to_string(++anon_counter_) : t.text;
            return out;
        case Tok::Int: {
            std::int64_t value = 0;
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
            if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
                throw Error(ErrorKind::SyntaxError, "integer out of range: " + t.text, t.line);
            }
            out.constant = Constant::integer(value);
            return out;
        }
        case Tok::Name:
        case Tok::Quoted:
            out.name = t.text;
            if (accept(Tok::LParen)) {
                out.kind = ParsedTerm::Kind::Compound;
                do {
                    out.args.push_back(term());
                } while (accept(Tok::Comma));
                expect(Tok::RParen, "')'");
            } else {
                out.constant = Constant::symbol(t.text);
            }
            return out;
        case Tok::LBracket:
            out.kind = ParsedTerm::Kind::List;
            if (accept(Tok::RBracket)) return out;
            do {
                out.args.push_back(term());
            } while (accept(Tok::Comma));
            if (accept(Tok::Bar)) {
                out.has_tail = true;
                out.args.push_back(term());
            }
            expect(Tok::RBracket, "']'");
            return out;
        default:
            fail("expected a term");
        }
    }

    // Atom from a parsed name or compound term.
    Atom atom_of(const ParsedTerm& t, bool in_head) {
        if (t.kind == ParsedTerm::Kind::Var || t.kind == ParsedTerm::Kind::List ||
            (t.kind == ParsedTerm::Kind::Const && t.constant.is_integer())) {
            throw Error(ErrorKind::SyntaxError, "expected a predicate", t.line);
        }
        Atom atom;
        atom.predicate = t.name;
        for (const auto& arg : t.args) {
            if (in_head && (arg.kind == ParsedTerm::Kind::Compound || arg.kind == ParsedTerm::Kind::List)) {
                throw Error(ErrorKind::ComplexHeadTerm,
                            "complex term in head of " + t.name + "/" + std::to_string(t.args.size()), arg.line);
            }
            atom.args.push_back(to_term(arg));
        }
        return atom;
    }

    Atom head_atom(const ParsedTerm& t) {
        Atom atom = atom_of(t, true);
        if (atom.predicate == "not" || atom.predicate == "member" || atom.predicate == "=") {
            throw Error(ErrorKind::SyntaxError, "built-in " + atom.predicate + " cannot be redefined", t.line);
        }
        return atom;
    }

    static Term to_term(const ParsedTerm& t) {
        switch (t.kind) {
        case ParsedTerm::Kind::Var: return Variable{t.name};
        case ParsedTerm::Kind::Const: return t.constant;
        case ParsedTerm::Kind::List: {
            if (t.has_tail) throw Error(ErrorKind::SyntaxError, "list tails are not supported", t.line);
            ListConstant list;
            for (const auto& item : t.args) {
                if (item.kind != ParsedTerm::Kind::Const) {
                    throw Error(ErrorKind::SyntaxError, "list constants must contain only constants", item.line);
                }
                list.items.push_back(item.constant);
            }
            return list;
        }
        case ParsedTerm::Kind::Compound:
            throw Error(ErrorKind::SyntaxError, "compound term " + t.name + "(...) is not supported", t.line);
        }
        return {};
    }

    Literal literal() {
        if (peek().kind == Tok::Name && peek().text == "not" && peek(1).kind == Tok::LParen) {
            pos_ += 2;
            ParsedTerm inner = term();
            Literal lit;
            if (accept(Tok::Eq)) {
                lit = Literal::not_equal(to_term(inner), to_term(term()));
            } else if (accept(Tok::NotEq)) {
                lit = Literal::equal(to_term(inner), to_term(term()));
            } else {
                Atom atom = atom_of(inner, false);
                if (atom.predicate == "member" || atom.predicate == "not") {
                    throw Error(ErrorKind::SyntaxError, "negation of built-in " + atom.predicate + " is not supported",
                                inner.line);
                }
                lit = Literal::negated(std::move(atom));
            }
            expect(Tok::RParen, "')' closing not(");
            return lit;
        }
        ParsedTerm first = term();
        if (accept(Tok::Eq)) return Literal::equal(to_term(first), to_term(term()));
        if (accept(Tok::NotEq)) return Literal::not_equal(to_term(first), to_term(term()));
        Atom atom = atom_of(first, false);
        if (atom.predicate == "member" && atom.args.size() == 2) {
            return Literal::member(std::move(atom.args[0]), std::move(atom.args[1]));
        }
        return Literal::positive(std::move(atom));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int anon_counter_ = 0;
};

} // namespace

std::vector<Clause> parse_clauses(std::string_view text) {
    ClauseParser parser(tokenize(text));
    std::vector<Clause> out;
    while (!parser.at_end()) out.push_back(parser.clause());
    return out;
}

Rule parse_rule(std::string_view text) {
    auto clauses = parse_clauses(text);
    if (clauses.size() != 1) {
        throw Error(ErrorKind::SyntaxError,
                    "expected exactly one clause, found " + std::to_string(clauses.size()));
    }
    return std::move(clauses.front().rule);
}

RuleSet parse_rule_file(std::string_view text, std::optional<std::set<PredicateKey>> extensional) {
    std::vector<Rule> rules;
    for (auto& clause : parse_clauses(text)) rules.push_back(std::move(clause.rule));
    if (extensional) return RuleSet::from_rules(std::move(rules), std::move(*extensional));
    return RuleSet::from_rules(std::move(rules));
}

std::vector<Fact> parse_facts(std::string_view text) {
    std::vector<Fact> out;
    for (auto& clause : parse_clauses(text)) {
        if (!clause.rule.body.empty()) {
            throw Error(ErrorKind::SyntaxError, "fact files may not contain rules", clause.line);
        }
        if (!clause.rule.head.is_ground()) {
            throw Error(ErrorKind::NonGroundFact, "fact " + clause.rule.head.predicate + " contains a variable",
                        clause.line);
        }
        out.push_back({std::move(clause.rule.head), clause.line});
    }
    return out;
}

std::vector<Atom> parse_fact_file(std::string_view text) {
    std::vector<Atom> out;
    for (auto& fact : parse_facts(text)) out.push_back(std::move(fact.atom));
    return out;
}

} // namespace cohup
