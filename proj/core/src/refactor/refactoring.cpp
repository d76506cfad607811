#include "cohup/refactor/refactoring.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "cohup/error.hpp"
#include "cohup/logic/render.hpp"

namespace cohup {

namespace {

const PredicateKey kCp{"cp", 3};
const PredicateKey kLp{"lp", 3};

Constant parse_constant(std::string_view token) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec == std::errc{} && ptr == token.data() + token.size()) return num(value);
    return sym(std::string(token));
}

const PredicateKey& membership(ElementKind kind) {
    return kind == ElementKind::Method ? CohesionModel::cm : CohesionModel::cf;
}

std::string kind_name(ElementKind kind) { return kind == ElementKind::Method ? "method" : "field"; }

std::set<Constant> classes_in(const DeltaSet& deltas, const PredicateKey& key) {
    std::set<Constant> out;
    for (const auto& t : deltas.insertions(key)) out.insert(t[0]);
    for (const auto& t : deltas.deletions(key)) out.insert(t[0]);
    return out;
}

ImpactReport build_report(const RefactoringSpec& spec, const PropagationResult& pr, const MetricResult& before,
                          Mapping mapping) {
    ImpactReport report;
    report.spec = spec;
    report.seeds = pr.seeds();
    report.propagation = pr;
    report.before = before;
    report.after = remap_incremental(before, pr, mapping);
    for (const auto* key : {&kCp, &kLp}) {
        for (const auto& t : pr.induced().insertions(*key)) report.induced.add_insertion(*key, t);
        for (const auto& t : pr.induced().deletions(*key)) report.induced.add_deletion(*key, t);
    }

    std::set<Constant> affected;
    for (const auto* key : {&CohesionModel::c, &CohesionModel::cm, &CohesionModel::cf}) {
        affected.merge(classes_in(report.seeds, *key));
    }
    for (const auto* key : {&kCp, &kLp}) affected.merge(classes_in(report.induced, *key));
    for (const auto& cls : affected) {
        ClassImpact impact{cls, {}, {}};
        if (auto it = report.before.find(cls); it != report.before.end()) impact.before = it->second;
        if (auto it = report.after.find(cls); it != report.after.end()) impact.after = it->second;
        report.classes.push_back(impact);
    }
    return report;
}

} // namespace

RefactoringSpec RefactoringSpec::move_method(Constant method, Constant from, RefactoringTarget target) {
    return {ElementKind::Method, std::move(method), std::move(from), std::move(target)};
}

RefactoringSpec RefactoringSpec::move_field(Constant field, Constant from, RefactoringTarget target) {
    return {ElementKind::Field, std::move(field), std::move(from), std::move(target)};
}

std::string RefactoringSpec::to_text() const {
    std::string to;
    if (const auto* existing = std::get_if<ExistingClass>(&target)) {
        to = render(existing->id);
    } else {
        const auto& fresh = std::get<NewClass>(target);
        to = fresh.name ? "new:" + *fresh.name : "new";
    }
    return "move-" + kind_name(kind) + " " + render(element) + " " + render(from) + " -> " + to;
}

RefactoringSpec parse_refactoring_command(std::string_view line) {
    std::vector<std::string> tokens;
    std::istringstream in{std::string(line)};
    for (std::string token; in >> token;) tokens.push_back(token);
    if (tokens.size() != 5 || tokens[3] != "->") {
        throw Error(ErrorKind::SyntaxError, "expected 'move-method|move-field <element> <from> -> <class|new>', got '" +
                                                std::string(line) + "'");
    }
    RefactoringSpec spec;
    if (tokens[0] == "move-method") {
        spec.kind = ElementKind::Method;
    } else if (tokens[0] == "move-field") {
        spec.kind = ElementKind::Field;
    } else {
        throw Error(ErrorKind::SyntaxError, "unknown refactoring '" + tokens[0] + "'");
    }
    spec.element = parse_constant(tokens[1]);
    spec.from = parse_constant(tokens[2]);
    if (tokens[4] == "new") {
        spec.target = NewClass{};
    } else if (tokens[4].starts_with("new:")) {
        if (tokens[4].size() == 4) throw Error(ErrorKind::SyntaxError, "missing class name after 'new:'");
        spec.target = NewClass{tokens[4].substr(4)};
    } else {
        spec.target = ExistingClass{parse_constant(tokens[4])};
    }
    return spec;
}

Constant fresh_class_id(const CohesionModel& model) {
    const auto used = model.identifiers();
    for (std::size_t k = 1;; ++k) {
        Constant id = sym("c" + std::to_string(k));
        if (!used.contains(id)) return id;
    }
}

DeltaSet seeds_for(const RefactoringSpec& spec, const CohesionModel& model) {
    const PredicateKey& rel = membership(spec.kind);
    if (!model.has_class(spec.from)) throw Error(ErrorKind::UnknownClass, "no class " + spec.from.text());
    if (!model.facts().contains(rel, {spec.from, spec.element})) {
        throw Error(ErrorKind::ElementNotInClass,
                    kind_name(spec.kind) + " " + spec.element.text() + " is not in class " + spec.from.text());
    }

    DeltaSet seeds;
    Constant to;
    if (const auto* existing = std::get_if<ExistingClass>(&spec.target)) {
        if (existing->id == spec.from) {
            throw Error(ErrorKind::TargetEqualsSource, "target class equals source class " + spec.from.text());
        }
        if (!model.has_class(existing->id)) throw Error(ErrorKind::UnknownClass, "no class " + existing->id.text());
        to = existing->id;
    } else {
        const auto& fresh = std::get<NewClass>(spec.target);
        if (fresh.name) {
            to = sym(*fresh.name);
            if (model.identifiers().contains(to)) {
                throw Error(ErrorKind::DuplicateElement, "new class id " + *fresh.name + " is already in use");
            }
        } else {
            to = fresh_class_id(model);
        }
        seeds.add_insertion(CohesionModel::c, {to});
    }
    seeds.add_deletion(rel, {spec.from, spec.element});
    seeds.add_insertion(rel, {to, spec.element});
    return seeds;
}

std::string ImpactReport::to_text(bool show_deltas) const {
    std::ostringstream out;
    out << "what-if " << spec.to_text() << (hypothetical ? " (hypothetical)" : " (applied)") << '\n';
    for (const auto& impact : classes) {
        out << render(impact.cls) << ": " << (impact.before ? impact.before->text() : "-") << " -> "
            << (impact.after ? impact.after->text() : "-");
        const auto delta = impact.delta();
        out << " (delta " << (delta.ordered_pairs() > 0 ? "+" : "") << delta.text() << ")\n";
    }
    if (show_deltas) {
        out << "seeds:\n" << seeds.to_text();
        out << "induced:\n" << induced.to_text();
    }
    return out.str();
}

ImpactAnalyzer::ImpactAnalyzer(CohesionModel model, RuleSet rules, Mapping mapping, TransformOptions options)
    : model_(std::move(model)),
      mapping_(mapping),
      program_(transform(rules, options)),
      state_(materialize(program_.rules().source, model_.snapshot())),
      metrics_(lcom1_all(state_, mapping_)) {}

ImpactReport ImpactAnalyzer::whatif(const RefactoringSpec& spec) const {
    auto pr = program_.run(state_, seeds_for(spec, model_));
    return build_report(spec, pr, metrics_, mapping_);
}

void ImpactAnalyzer::commit(const ImpactReport& report) {
    FactBase base = apply_delta_set(model_.facts(), report.seeds);
    const auto& old = report.propagation.old_state();
    if (&old.base.get() != &state_.base.get()) {
        model_ = CohesionModel(std::move(base));
        state_ = materialize(program_.rules().source, model_.snapshot());
        metrics_ = lcom1_all(state_, mapping_);
        return;
    }
    FactBase derived;
    for (const auto& p : program_.rules().source.intensional()) derived.relation(p) = report.propagation.new_state(p);
    model_ = CohesionModel(base);
    state_ = MaterializedState{Snapshot(std::move(base)), Snapshot(std::move(derived))};
    metrics_ = report.after;
}

ImpactReport whatif(const CohesionModel& model, const TransformedRuleSet& t, const RefactoringSpec& spec,
                    Mapping mapping) {
    auto state = materialize(t.source, model.snapshot());
    auto before = lcom1_all(state, mapping);
    auto pr = propagate(t, state, seeds_for(spec, model));
    return build_report(spec, pr, before, mapping);
}

} // namespace cohup
