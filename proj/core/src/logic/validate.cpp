#include "cohup/logic/validate.hpp"

#include <algorithm>

#include "cohup/logic/render.hpp"

namespace cohup {

std::string_view to_string(ViolationKind kind) noexcept {
    switch (kind) {
    case ViolationKind::DisallowedPredicate: return "DisallowedPredicate";
    case ViolationKind::ComplexHeadTerm: return "ComplexHeadTerm";
    case ViolationKind::ComplexTerm: return "ComplexTerm";
    case ViolationKind::UnsafeVariable: return "UnsafeVariable";
    case ViolationKind::ExtensionalHead: return "ExtensionalHead";
    }
    return "Unknown";
}

std::string ValidationReport::summary() const {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += std::string(to_string(v.kind)) + " in " + v.rule_id + ": " + v.detail;
    }
    return out;
}

namespace {

void check_rule(const Rule& rule, const std::set<PredicateKey>& known, ValidationReport& report) {
    auto add = [&](ViolationKind kind, std::string detail) {
        report.violations.push_back({kind, rule.id.empty() ? render(rule) : rule.id, std::move(detail)});
    };

    for (const auto& arg : rule.head.args) {
        if (is_list(arg)) add(ViolationKind::ComplexHeadTerm, "list constant in head " + render(rule.head));
    }

    // Variables bound by positive literals (and by member/2 over a list).
    std::vector<std::string> bound;
    for (const auto& lit : rule.body) {
        if (lit.kind == LiteralKind::Positive) collect_variables(lit.atom, bound);
        if (lit.kind == LiteralKind::Member && is_list(lit.rhs())) collect_variables(lit.lhs(), bound);
    }
    auto require_bound = [&](const Atom& atom, const std::string& where) {
        std::vector<std::string> vars;
        collect_variables(atom, vars);
        for (const auto& v : vars) {
            if (std::find(bound.begin(), bound.end(), v) == bound.end()) {
                add(ViolationKind::UnsafeVariable, "variable " + v + " in " + where + " is not range-restricted");
            }
        }
    };

    require_bound(rule.head, "head " + render(rule.head));
    for (const auto& lit : rule.body) {
        switch (lit.kind) {
        case LiteralKind::Positive:
        case LiteralKind::Negated:
            if (!known.contains(lit.atom.key())) {
                add(ViolationKind::DisallowedPredicate, "predicate " + lit.atom.key().str() + " is not allowed");
            }
            for (const auto& arg : lit.atom.args) {
                if (is_list(arg)) add(ViolationKind::ComplexTerm, "list constant in " + render(lit));
            }
            if (lit.kind == LiteralKind::Negated) require_bound(lit.atom, render(lit));
            break;
        case LiteralKind::Equal:
        case LiteralKind::NotEqual:
            if (is_list(lit.lhs()) || is_list(lit.rhs())) {
                add(ViolationKind::ComplexTerm, "list constant in " + render(lit));
            }
            require_bound(lit.atom, render(lit));
            break;
        case LiteralKind::Member:
            if (!is_list(lit.rhs())) {
                add(ViolationKind::ComplexTerm, "member/2 requires a ground list as second argument: " + render(lit));
            }
            if (is_list(lit.lhs())) add(ViolationKind::ComplexTerm, "list constant in " + render(lit));
            require_bound(lit.atom, render(lit));
            break;
        }
    }
}

} // namespace

ValidationReport validate_ruleset(const RuleSet& rules, const std::set<PredicateKey>& allowed) {
    ValidationReport report;
    std::set<PredicateKey> known = allowed;
    known.insert(rules.extensional.begin(), rules.extensional.end());
    for (const auto& rule : rules.rules) {
        known.insert(rule.head.key());
        if (rules.extensional.contains(rule.head.key())) {
            report.violations.push_back({ViolationKind::ExtensionalHead, rule.id,
                                         "predicate " + rule.head.key().str() + " is declared extensional"});
        }
    }
    for (const auto& rule : rules.rules) check_rule(rule, known, report);
    return report;
}

} // namespace cohup
