#include "cohup/up/transform.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "cohup/error.hpp"
#include "cohup/eval/engine.hpp"
#include "cohup/logic/render.hpp"
#include "cohup/logic/validate.hpp"

namespace cohup {

namespace {

constexpr std::array<std::pair<StateRole, std::string_view>, 4> kPrefixes{{
    {StateRole::Add, "add_"},
    {StateRole::Del, "del_"},
    {StateRole::Nwd, "nwd_"},
    {StateRole::Nwi, "nwi_"},
}};

Atom rename(const Atom& atom, StateRole role) {
    return Atom{augmented_name(role, atom.predicate), atom.args};
}

Literal state_literal(const Literal& lit, StateRole role) {
    return Literal{lit.kind, rename(lit.atom, role)};
}

/// New-state version of a body literal inside a clause for `head`.
Literal new_state_literal(const Literal& lit, const PredicateKey& head, const DependencyGraph& graph) {
    if (lit.is_builtin()) return lit;
    const bool negated = lit.kind == LiteralKind::Negated;
    return state_literal(lit, select_state(lit.atom.key(), head, negated, graph));
}

std::string generated_id(const PredicateKey& key, std::map<PredicateKey, std::size_t>& counters) {
    return key.str() + "#" + std::to_string(++counters[key]);
}

bool distinct_variables(const Atom& atom) {
    std::vector<std::string> seen;
    for (const auto& arg : atom.args) {
        const auto* v = std::get_if<Variable>(&arg);
        if (v == nullptr || std::find(seen.begin(), seen.end(), v->name) != seen.end()) return false;
        seen.push_back(v->name);
    }
    return true;
}

/// Argument list for the generic transition rules of `key`: the first
/// occurrence in the rule set with pairwise distinct variables, else X1..Xn.
std::vector<Term> generic_args(const RuleSet& rules, const PredicateKey& key) {
    for (const auto& rule : rules.rules) {
        if (rule.head.key() == key && distinct_variables(rule.head)) return rule.head.args;
    }
    for (const auto& rule : rules.rules) {
        for (const auto& lit : rule.body) {
            if (!lit.is_builtin() && lit.atom.key() == key && distinct_variables(lit.atom)) return lit.atom.args;
        }
    }
    std::vector<Term> args;
    for (std::size_t i = 0; i < key.arity; ++i) args.push_back(var("X" + std::to_string(i + 1)));
    return args;
}

std::vector<Rule> direct_rules(const RuleSet& rules, const PredicateKey& key) {
    Atom base{key.name, generic_args(rules, key)};
    Rule keep{augmented(StateRole::Nwd, key).str() + "#1", rename(base, StateRole::Nwd),
              {Literal::positive(base), Literal::negated(rename(base, StateRole::Del))}};
    Rule added{augmented(StateRole::Nwd, key).str() + "#2", rename(base, StateRole::Nwd),
               {Literal::positive(rename(base, StateRole::Add))}};
    return {std::move(keep), std::move(added)};
}

bool has_role(const Rule& rule, StateRole role) { return split_augmented(rule.head.predicate).first == role; }

} // namespace

std::string augmented_name(StateRole role, const std::string& predicate) {
    for (const auto& [r, prefix] : kPrefixes) {
        if (r == role) return std::string(prefix) + predicate;
    }
    return predicate;
}

PredicateKey augmented(StateRole role, const PredicateKey& key) {
    return {augmented_name(role, key.name), key.arity};
}

std::pair<StateRole, std::string> split_augmented(const std::string& name) {
    for (const auto& [role, prefix] : kPrefixes) {
        if (name.size() > prefix.size() && name.starts_with(prefix)) return {role, name.substr(prefix.size())};
    }
    return {StateRole::Old, name};
}

StateRole select_state(const PredicateKey& p, const PredicateKey& context, bool negated,
                       const DependencyGraph& graph) {
    if (!graph.is_intensional(p)) return StateRole::Nwd;
    if (negated || graph.mutually_dependent(p, context)) return StateRole::Nwi;
    return StateRole::Nwd;
}

std::vector<Rule> generate_propagation_rules(const Rule& rule, const RuleMeta& meta,
                                             const TransformOptions& options) {
    const PredicateKey head = rule.head.key();
    std::vector<Rule> insertions;
    std::vector<Rule> deletions;
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
        const Literal& li = rule.body[i];
        if (li.is_builtin()) continue;
        const bool negated = li.kind == LiteralKind::Negated;

        Rule ins{"", rename(rule.head, StateRole::Add), {}};
        ins.body.push_back(Literal::positive(rename(li.atom, negated ? StateRole::Del : StateRole::Add)));
        Rule del{"", rename(rule.head, StateRole::Del), {}};
        del.body.push_back(Literal::positive(rename(li.atom, negated ? StateRole::Add : StateRole::Del)));

        for (std::size_t j = 0; j < rule.body.size(); ++j) {
            if (j == i) continue;
            ins.body.push_back(new_state_literal(rule.body[j], head, meta.graph));
            del.body.push_back(rule.body[j]);
        }
        if (options.effectiveness_tests) {
            ins.body.push_back(Literal::negated(rule.head));
            del.body.push_back(Literal::negated(rename(rule.head, StateRole::Nwi)));
        }
        insertions.push_back(std::move(ins));
        deletions.push_back(std::move(del));
    }
    insertions.insert(insertions.end(), std::make_move_iterator(deletions.begin()),
                      std::make_move_iterator(deletions.end()));
    return insertions;
}

TransitionRules generate_transition_rules(const RuleSet& rules, const RuleMeta& meta) {
    TransitionRules out;
    std::map<PredicateKey, std::size_t> counters;
    for (const auto& key : rules.intensional()) {
        for (const Rule* rule : rules.rules_for(key)) {
            Rule nwi{"", rename(rule->head, StateRole::Nwi), {}};
            for (const auto& lit : rule->body) nwi.body.push_back(new_state_literal(lit, key, meta.graph));
            nwi.id = generated_id(nwi.head.key(), counters);
            out.indirect.push_back(std::move(nwi));
        }
        auto direct = direct_rules(rules, key);
        out.direct.insert(out.direct.end(), direct.begin(), direct.end());
    }
    std::set<PredicateKey> extensional = rules.extensional;
    for (const auto& node : meta.graph.nodes()) {
        if (!meta.graph.is_intensional(node)) extensional.insert(node);
    }
    for (const auto& key : extensional) {
        auto direct = direct_rules(rules, key);
        out.direct.insert(out.direct.end(), direct.begin(), direct.end());
    }
    return out;
}

TransformedRuleSet transform(const RuleSet& rules, const TransformOptions& options) {
    auto report = validate_ruleset(rules, {});
    if (!report.ok()) throw Error(ErrorKind::InvalidRuleSet, report.summary());
    for (const auto& rule : rules.rules) {
        std::vector<std::string> names{rule.head.predicate};
        for (const auto& lit : rule.body) {
            if (!lit.is_builtin()) names.push_back(lit.atom.predicate);
        }
        for (const auto& name : names) {
            if (split_augmented(name).first != StateRole::Old) {
                throw Error(ErrorKind::InvalidRuleSet,
                            "predicate " + name + " in " + render(rule) + " uses a reserved prefix");
            }
        }
    }
    stratify(rules);

    TransformedRuleSet t;
    t.source = rules;
    t.options = options;
    const RuleMeta meta = analyse_rules(rules);
    t.graph = meta.graph;

    std::map<PredicateKey, std::size_t> counters;
    for (const auto& key : rules.intensional()) {
        std::vector<Rule> adds;
        std::vector<Rule> dels;
        for (const Rule* rule : rules.rules_for(key)) {
            for (auto& r : generate_propagation_rules(*rule, meta, options)) {
                (has_role(r, StateRole::Add) ? adds : dels).push_back(std::move(r));
            }
        }
        for (auto* group : {&adds, &dels}) {
            for (auto& r : *group) {
                r.id = generated_id(r.head.key(), counters);
                t.propagation_rules.push_back(std::move(r));
            }
        }
    }
    auto transitions = generate_transition_rules(rules, meta);
    t.direct_transition_rules = std::move(transitions.direct);
    t.indirect_transition_rules = std::move(transitions.indirect);
    return t;
}

std::vector<Rule> TransformedRuleSet::all_generated() const {
    std::vector<Rule> out;
    auto take = [&](const std::vector<Rule>& from, StateRole role, const std::string& base) {
        for (const auto& r : from) {
            auto [rrole, name] = split_augmented(r.head.predicate);
            if (rrole == role && name == base) out.push_back(r);
        }
    };
    std::set<std::string> done;
    for (const auto& key : source.intensional()) {
        if (!done.insert(key.name).second) continue;
        take(propagation_rules, StateRole::Add, key.name);
        take(propagation_rules, StateRole::Del, key.name);
        take(indirect_transition_rules, StateRole::Nwi, key.name);
        take(direct_transition_rules, StateRole::Nwd, key.name);
    }
    for (const auto& r : direct_transition_rules) {
        if (!done.contains(split_augmented(r.head.predicate).second)) out.push_back(r);
    }
    return out;
}

RuleSet TransformedRuleSet::augmented() const {
    std::vector<Rule> rules = source.rules;
    for (auto& r : all_generated()) rules.push_back(std::move(r));
    std::set<PredicateKey> extensional;
    for (const auto& key : source.extensional) {
        extensional.insert(key);
        extensional.insert(cohup::augmented(StateRole::Add, key));
        extensional.insert(cohup::augmented(StateRole::Del, key));
    }
    for (const auto& node : graph.nodes()) {
        if (graph.is_intensional(node)) continue;
        extensional.insert(node);
        extensional.insert(cohup::augmented(StateRole::Add, node));
        extensional.insert(cohup::augmented(StateRole::Del, node));
    }
    return RuleSet::from_rules(std::move(rules), std::move(extensional));
}

std::string render(const TransformedRuleSet& t) {
    std::ostringstream out;
    std::string group;
    for (const auto& rule : t.all_generated()) {
        const std::string base = split_augmented(rule.head.predicate).second;
        if (!group.empty() && base != group) out << '\n';
        group = base;
        out << render(rule) << '\n';
    }
    return out.str();
}

} // namespace cohup
