#include "cohup/metrics/lcom1.hpp"

#include <set>
#include <sstream>

#include "cohup/error.hpp"
#include "cohup/logic/parser.hpp"
#include "cohup/logic/render.hpp"
#include "cohup/logic/validate.hpp"
#include "cohup/model/cohesion_model.hpp"

namespace cohup {

namespace {

const PredicateKey kCp{"cp", 3};
const PredicateKey kLp{"lp", 3};

const PredicateKey& pair_predicate(Mapping mapping) { return mapping == Mapping::LackingPairs ? kLp : kCp; }

template <typename Tuples>
std::int64_t count_distinct_pairs(const Tuples& tuples) {
    std::int64_t n = 0;
    for (const auto& t : tuples) {
        if constexpr (std::is_pointer_v<std::decay_t<decltype(t)>>) {
            n += (*t)[1] != (*t)[2];
        } else {
            n += t[1] != t[2];
        }
    }
    return n;
}

} // namespace

std::optional<Mapping> parse_mapping(std::string_view name) {
    if (name == "prose") return Mapping::LackingPairs;
    if (name == "as-printed") return Mapping::ConnectedPairs;
    return std::nullopt;
}

std::string_view to_string(Mapping mapping) noexcept {
    return mapping == Mapping::LackingPairs ? "prose" : "as-printed";
}

std::string Lcom1Value::text() const {
    if (is_integer()) return std::to_string(numerator());
    return std::to_string(numerator()) + "/2";
}

RuleSet lcom1_rules() { return load_metric_rules(kLcom1RuleText); }

RuleSet load_metric_rules(std::string_view text) {
    RuleSet rules = parse_rule_file(text);
    for (const auto& key : rules.extensional) {
        if (!CohesionModel::predicates().contains(key)) {
            throw Error(ErrorKind::InvalidRuleSet, "metric rules use " + key.str() + ", which is not a model predicate");
        }
    }
    rules.extensional.insert(CohesionModel::c);
    auto report = validate_ruleset(rules, CohesionModel::predicates());
    if (!report.ok()) throw Error(ErrorKind::InvalidRuleSet, report.summary());
    stratify(rules);
    return rules;
}

Lcom1Value lcom1(const MaterializedState& state, const Constant& cls, Mapping mapping) {
    if (!state.base->contains(CohesionModel::c, {cls})) {
        throw Error(ErrorKind::UnknownClass, "no class " + cls.text() + " in the model");
    }
    const Relation* pairs = state.find(pair_predicate(mapping));
    if (pairs == nullptr) return Lcom1Value(0);
    return Lcom1Value(count_distinct_pairs(pairs->lookup(1, {cls})));
}

MetricResult lcom1_all(const MaterializedState& state, Mapping mapping) {
    MetricResult out;
    const Relation* classes = state.base->find(CohesionModel::c);
    if (classes == nullptr) return out;
    for (const auto& t : *classes) out.emplace(t[0], lcom1(state, t[0], mapping));
    return out;
}

MetricResult remap_incremental(const MetricResult& before, const PropagationResult& pr, Mapping mapping) {
    std::set<Constant> affected;
    auto collect = [&](const DeltaSet& deltas, const PredicateKey& key) {
        for (const auto& t : deltas.insertions(key)) affected.insert(t[0]);
        for (const auto& t : deltas.deletions(key)) affected.insert(t[0]);
    };
    collect(pr.seeds(), CohesionModel::c);
    collect(pr.seeds(), CohesionModel::cm);
    collect(pr.seeds(), CohesionModel::cf);
    collect(pr.induced(), kCp);
    collect(pr.induced(), kLp);

    MetricResult out = before;
    const Variable m{"M"};
    const Variable n{"N"};
    for (const auto& cls : affected) {
        if (pr.new_state_matching(Atom{CohesionModel::c.name, {cls}}).empty()) {
            out.erase(cls);
            continue;
        }
        auto pairs = pr.new_state_matching(Atom{pair_predicate(mapping).name, {cls, m, n}});
        out.insert_or_assign(cls, Lcom1Value(count_distinct_pairs(pairs)));
    }
    return out;
}

std::string render(const MetricResult& result) {
    std::ostringstream out;
    for (const auto& [cls, value] : result) out << render(cls) << ' ' << value.text() << '\n';
    return out.str();
}

} // namespace cohup
