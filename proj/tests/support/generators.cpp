#include "generators.hpp"

#include "cohup/error.hpp"
#include "cohup/eval/engine.hpp"

namespace cohup::testing {

CohesionModel random_model(Rng& rng, const ModelLimits& limits) {
    FactBase facts;
    const std::size_t classes = 1 + pick(rng, limits.classes);
    std::vector<Constant> methods;
    std::vector<std::pair<std::size_t, Constant>> fields;
    for (std::size_t i = 0; i < classes; ++i) {
        Constant c = sym("c" + std::to_string(i + 1));
        facts.insert(CohesionModel::c, {c});
        const std::size_t nm = pick(rng, limits.methods + 1);
        const std::size_t nf = pick(rng, limits.fields + 1);
        for (std::size_t j = 0; j < nm; ++j) {
            Constant m = sym("m" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
            facts.insert(CohesionModel::cm, {c, m});
            methods.push_back(m);
        }
        for (std::size_t k = 0; k < nf; ++k) {
            Constant f = sym("f" + std::to_string(i + 1) + "_" + std::to_string(k + 1));
            facts.insert(CohesionModel::cf, {c, f});
            fields.emplace_back(i, f);
        }
    }
    const double density = 0.1 + 0.5 * static_cast<double>(pick(rng, 100)) / 100.0;
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        const std::string& name = methods[mi].as_symbol();
        const std::size_t owner = std::stoul(name.substr(1, name.find('_') - 1)) - 1;
        for (const auto& [fc, f] : fields) {
            if (chance(rng, fc == owner ? density : density / 4)) facts.insert(CohesionModel::mf, {methods[mi], f});
        }
        if (!methods.empty() && chance(rng, 0.2)) {
            facts.insert(CohesionModel::mm, {methods[mi], methods[pick(rng, methods.size())]});
        }
    }
    return CohesionModel(std::move(facts));
}

namespace {

const std::vector<PredicateKey> kExtensional{{"e0", 1}, {"e1", 2}, {"e2", 2}};
const std::vector<std::string> kVariables{"X", "Y", "Z", "W"};

Term random_term(Rng& rng) {
    if (chance(rng, 0.1)) return num(static_cast<std::int64_t>(1 + pick(rng, 3)));
    return var(kVariables[pick(rng, kVariables.size())]);
}

Term bound_term(Rng& rng, const std::vector<std::string>& bound) {
    if (bound.empty() || chance(rng, 0.1)) return num(static_cast<std::int64_t>(1 + pick(rng, 3)));
    return var(bound[pick(rng, bound.size())]);
}

Rule random_rule(Rng& rng, const PredicateKey& head, const std::vector<PredicateKey>& all) {
    Rule rule;
    std::vector<std::string> bound;
    const std::size_t positives = 1 + pick(rng, 3);
    for (std::size_t i = 0; i < positives; ++i) {
        const PredicateKey& p = all[pick(rng, all.size())];
        Atom atom{p.name, {}};
        for (std::size_t a = 0; a < p.arity; ++a) atom.args.push_back(random_term(rng));
        collect_variables(atom, bound);
        rule.body.push_back(Literal::positive(std::move(atom)));
    }
    if (chance(rng, 0.2)) {
        std::string fresh = "V";
        rule.body.push_back(Literal::member(var(fresh), ListConstant{{num(1), num(2)}}));
        bound.push_back(fresh);
    }
    if (chance(rng, 0.4)) {
        const PredicateKey& p = all[pick(rng, all.size())];
        Atom atom{p.name, {}};
        for (std::size_t a = 0; a < p.arity; ++a) atom.args.push_back(bound_term(rng, bound));
        rule.body.insert(rule.body.begin() + static_cast<std::ptrdiff_t>(pick(rng, rule.body.size() + 1)),
                         Literal::negated(std::move(atom)));
    }
    if (chance(rng, 0.2) && !bound.empty()) {
        rule.body.push_back(Literal::not_equal(bound_term(rng, bound), bound_term(rng, bound)));
    }
    if (chance(rng, 0.1) && !bound.empty()) {
        rule.body.push_back(Literal::equal(bound_term(rng, bound), bound_term(rng, bound)));
    }
    rule.head.predicate = head.name;
    for (std::size_t a = 0; a < head.arity; ++a) rule.head.args.push_back(bound_term(rng, bound));
    return rule;
}

} // namespace

RuleSet random_ruleset(Rng& rng) {
    for (;;) {
        std::vector<PredicateKey> intensional;
        for (std::size_t i = 0; i < 1 + pick(rng, 4); ++i) {
            intensional.push_back({"p" + std::to_string(i), 1 + pick(rng, 2)});
        }
        std::vector<PredicateKey> all = kExtensional;
        all.insert(all.end(), intensional.begin(), intensional.end());
        std::vector<Rule> rules;
        for (const auto& p : intensional) {
            for (std::size_t r = 0; r < 1 + pick(rng, 2); ++r) rules.push_back(random_rule(rng, p, all));
        }
        auto set = RuleSet::from_rules(std::move(rules), {kExtensional.begin(), kExtensional.end()});
        try {
            stratify(set);
            return set;
        } catch (const Error&) {
        }
    }
}

FactBase random_base(Rng& rng, const RuleSet& rules) {
    FactBase base;
    for (const auto& p : rules.extensional) {
        base.relation(p);
        const std::size_t n = pick(rng, p.arity == 1 ? 4 : 7);
        for (std::size_t i = 0; i < n; ++i) {
            Tuple t;
            for (std::size_t a = 0; a < p.arity; ++a) t.push_back(num(static_cast<std::int64_t>(1 + pick(rng, 3))));
            base.insert(p, std::move(t));
        }
    }
    return base;
}

DeltaSet random_seeds(Rng& rng, const RuleSet& rules, const FactBase& base) {
    std::vector<PredicateKey> preds(rules.extensional.begin(), rules.extensional.end());
    DeltaSet seeds;
    if (preds.empty()) return seeds;
    const std::size_t n = 1 + pick(rng, 3);
    for (std::size_t i = 0; i < n; ++i) {
        const PredicateKey& p = preds[pick(rng, preds.size())];
        Tuple t;
        for (std::size_t a = 0; a < p.arity; ++a) t.push_back(num(static_cast<std::int64_t>(1 + pick(rng, 3))));
        if (base.contains(p, t)) {
            if (!seeds.insertions(p).contains(t)) seeds.add_deletion(p, t);
        } else if (!seeds.deletions(p).contains(t)) {
            seeds.add_insertion(p, t);
        }
    }
    return seeds;
}

} // namespace cohup::testing
