#include "cohup/up/analysis.hpp"

#include <algorithm>

namespace cohup {

std::vector<const BodyPredicateOfRule*> RuleMeta::body_of(const std::string& head_id) const {
    std::vector<const BodyPredicateOfRule*> out;
    for (const auto& entry : body) {
        if (entry.head_id == head_id) out.push_back(&entry);
    }
    return out;
}

namespace {

std::map<std::string, std::vector<std::size_t>> occurrences(const Atom& atom) {
    std::map<std::string, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        if (const auto* v = std::get_if<Variable>(&atom.args[i])) out[v->name].push_back(i);
    }
    return out;
}

} // namespace

RuleMeta analyse_rules(const RuleSet& rules) {
    RuleMeta meta;
    meta.graph = DependencyGraph::build(rules);

    for (const auto& rule : rules.rules) {
        const std::string& id = rule.id;
        meta.heads.push_back({id, rule.head, rule.head.key()});
        meta.variables.push_back({id, "", occurrences(rule.head)});

        std::vector<std::string> head_vars;
        collect_variables(rule.head, head_vars);
        std::vector<std::string> body_vars;
        for (std::size_t i = 0; i < rule.body.size(); ++i) {
            const Literal& lit = rule.body[i];
            std::string body_id = id + "/" + std::to_string(i + 1);
            meta.body.push_back({id, body_id, i + 1, lit,
                                 lit.kind == LiteralKind::Negated || lit.kind == LiteralKind::NotEqual});
            meta.variables.push_back({id, body_id, occurrences(lit.atom)});
            collect_variables(lit.atom, body_vars);
            if (!lit.is_builtin() && meta.graph.mutually_dependent(rule.head.key(), lit.atom.key())) {
                meta.self_referencing.insert(id);
            }
        }
        std::vector<std::string> body_only;
        for (const auto& v : body_vars) {
            if (std::find(head_vars.begin(), head_vars.end(), v) == head_vars.end()) body_only.push_back(v);
        }
        meta.head_variables[id] = std::move(head_vars);
        meta.body_only_variables[id] = std::move(body_only);
    }

    for (const auto& p : meta.graph.nodes()) {
        auto& deps = meta.dependency_closure[p];
        for (const auto& q : meta.graph.dependencies(p)) {
            deps.insert({q, meta.graph.depends_negatively(p, q)});
        }
    }
    return meta;
}

} // namespace cohup
