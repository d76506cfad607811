#include "cohup/bench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "cohup/error.hpp"

namespace cohup {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Constant class_id(std::size_t i) { return sym("c" + std::to_string(i + 1)); }
Constant method_id(std::size_t i, std::size_t j) { return sym("c" + std::to_string(i + 1) + "_m" + std::to_string(j + 1)); }
Constant field_id(std::size_t i, std::size_t k) { return sym("c" + std::to_string(i + 1) + "_f" + std::to_string(k + 1)); }

std::int64_t elapsed_ns(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

std::string describe(const MetricResult& result) {
    std::ostringstream out;
    for (const auto& [cls, value] : result) out << ' ' << cls.text() << '=' << value.text();
    return out.str();
}

} // namespace

double BenchTrial::speedup() const {
    return t_incremental_ns > 0 ? static_cast<double>(t_full_ns) / static_cast<double>(t_incremental_ns) : 0.0;
}

CohesionModel synthetic_model(const BenchParams& params) {
    std::mt19937_64 rng(params.seed);
    FactBase facts;
    const std::size_t n = params.classes;
    for (std::size_t i = 0; i < n; ++i) {
        facts.insert(CohesionModel::c, {class_id(i)});
        for (std::size_t j = 0; j < params.methods_per_class; ++j) facts.insert(CohesionModel::cm, {class_id(i), method_id(i, j)});
        for (std::size_t k = 0; k < params.fields_per_class; ++k) facts.insert(CohesionModel::cf, {class_id(i), field_id(i, k)});
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < params.methods_per_class; ++j) {
            for (std::size_t k = 0; k < params.fields_per_class; ++k) {
                if (unit(rng) < params.density) facts.insert(CohesionModel::mf, {method_id(i, j), field_id(i, k)});
            }
            if (n < 2) continue;
            std::size_t other = below(rng, n - 1);
            if (other >= i) ++other;
            for (std::size_t k = 0; k < params.fields_per_class; ++k) {
                if (unit(rng) < params.density / 4) facts.insert(CohesionModel::mf, {method_id(i, j), field_id(other, k)});
            }
        }
    }
    return CohesionModel(std::move(facts));
}

RefactoringSpec random_refactoring(const CohesionModel& model, std::uint64_t trial_seed) {
    std::mt19937_64 rng(trial_seed);
    const auto classes = model.classes();
    if (classes.empty()) throw Error(ErrorKind::UnknownClass, "the model has no classes");

    bool method = below(rng, 2) == 0;
    auto members_of = [&](bool methods) {
        std::vector<std::pair<Constant, Constant>> out; // (class, element)
        if (const Relation* r = model.facts().find(methods ? CohesionModel::cm : CohesionModel::cf)) {
            for (const auto& t : *r) out.emplace_back(t[0], t[1]);
        }
        return out;
    };
    auto members = members_of(method);
    if (members.empty()) {
        method = !method;
        members = members_of(method);
    }
    if (members.empty()) throw Error(ErrorKind::ElementNotInClass, "the model has no movable elements");
    const auto& [from, element] = members[below(rng, members.size())];

    RefactoringTarget target = NewClass{};
    if (classes.size() > 1 && below(rng, 4) != 0) {
        const auto from_index = static_cast<std::size_t>(
            std::lower_bound(classes.begin(), classes.end(), from) - classes.begin());
        std::size_t to = below(rng, classes.size() - 1);
        if (to >= from_index) ++to;
        target = ExistingClass{classes[to]};
    }
    return method ? RefactoringSpec::move_method(element, from, target)
                  : RefactoringSpec::move_field(element, from, target);
}

BenchReport run_bench(const BenchParams& params) {
    if (params.classes == 0 || params.methods_per_class == 0 || params.fields_per_class == 0) {
        throw Error(ErrorKind::InvalidRuleSet, "bench parameters must be positive");
    }
    if (!(params.density >= 0.0 && params.density <= 1.0)) {
        throw Error(ErrorKind::InvalidRuleSet, "density must lie in [0, 1]");
    }

    BenchReport report;
    report.params = params;
    const CohesionModel model = synthetic_model(params);
    report.model_facts = model.facts().size();

    const RuleSet rules = lcom1_rules();
    const PropagationProgram program(transform(rules));
    const MaterializedState state = materialize(rules, model.snapshot());
    const MetricResult before = lcom1_all(state);

    std::mt19937_64 trial_rng(params.seed ^ 0x5bd1e995ULL);
    std::vector<double> speedups;
    for (std::size_t u = 0; u < params.updates; ++u) {
        BenchTrial trial;
        trial.trial_seed = trial_rng();
        const RefactoringSpec spec = random_refactoring(model, trial.trial_seed);
        trial.refactoring = spec.to_text();
        const DeltaSet seeds = seeds_for(spec, model);

        auto start = Clock::now();
        const auto pr = program.run(state, seeds);
        const MetricResult incremental = remap_incremental(before, pr);
        trial.t_incremental_ns = elapsed_ns(start);

        start = Clock::now();
        const MaterializedState updated = materialize(rules, Snapshot(apply_delta_set(model.facts(), seeds)));
        const MetricResult full = lcom1_all(updated);
        trial.t_full_ns = elapsed_ns(start);

        trial.equal = incremental == full;
        if (!trial.equal) {
            throw Error(ErrorKind::MismatchDetected,
                        "trial " + std::to_string(u) + " (params seed " + std::to_string(params.seed) +
                            ", trial seed " + std::to_string(trial.trial_seed) + ", " + trial.refactoring +
                            "): incremental" + describe(incremental) + " vs full" + describe(full) +
                            "\nseeds:\n" + seeds.to_text());
        }
        speedups.push_back(trial.speedup());
        report.trials.push_back(std::move(trial));
    }

    if (!speedups.empty()) {
        std::sort(speedups.begin(), speedups.end());
        const std::size_t mid = speedups.size() / 2;
        report.median_speedup =
            speedups.size() % 2 == 1 ? speedups[mid] : (speedups[mid - 1] + speedups[mid]) / 2.0;
    }
    return report;
}

std::string BenchReport::to_text() const {
    std::ostringstream out;
    out << "classes " << params.classes << '\n'
        << "methods_per_class " << params.methods_per_class << '\n'
        << "fields_per_class " << params.fields_per_class << '\n'
        << "density " << params.density << '\n'
        << "seed " << params.seed << '\n'
        << "model_facts " << model_facts << '\n';
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto& t = trials[i];
        out << "trial " << i << " seed " << t.trial_seed << " [" << t.refactoring << "] incremental_ns "
            << t.t_incremental_ns << " full_ns " << t.t_full_ns << " speedup " << t.speedup() << ' '
            << (t.equal ? "equal" : "MISMATCH") << '\n';
    }
    out << "median_speedup " << median_speedup << '\n' << "verdict " << (all_equal ? "equal" : "mismatch") << '\n';
    return out.str();
}

} // namespace cohup
