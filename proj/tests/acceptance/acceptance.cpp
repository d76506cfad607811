// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cohup/bench/bench.hpp"
#include "cohup/error.hpp"
#include "cohup/logic/parser.hpp"
#include "cohup/logic/validate.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace cohup;
using namespace cohup::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

const PredicateKey kCp{"cp", 3};
const PredicateKey kLp{"lp", 3};

std::string golden(const std::string& name) { return read_file(std::string(COHUP_TEST_GOLDEN_DIR) + "/" + name); }
std::string data(const std::string& name) { return read_file(std::string(COHUP_TEST_DATA_DIR) + "/" + name); }

std::size_t count_head(const std::vector<Rule>& rules, const std::string& name) {
    std::size_t n = 0;
    for (const auto& r : rules) n += r.head.predicate == name;
    return n;
}

Outcome golden_listing() {
    Outcome out;
    const auto start = Clock::now();
    const auto t = transform(lcom1_rules());
    const auto generated = t.all_generated();
    std::vector<Rule> expected;
    for (auto& clause : parse_clauses(golden("lcom1_up.rules"))) expected.push_back(std::move(clause.rule));

    const auto got = canonical(generated);
    const auto want = canonical(expected);
    for (const auto& r : want) {
        if (!got.contains(r)) out.require(false, "missing " + r);
    }
    for (const auto& r : got) {
        if (!want.contains(r)) out.require(false, "unexpected " + r);
    }
    out.require(got.size() == want.size(), "rule count " + std::to_string(got.size()) + " vs " + std::to_string(want.size()));
    const std::vector<std::pair<std::string, std::size_t>> counts{
        {"add_lp", 3}, {"del_lp", 3}, {"nwi_lp", 1}, {"nwd_lp", 2}, {"add_cp", 3}, {"del_cp", 3},
        {"nwi_cp", 1}, {"nwd_cp", 2}, {"nwd_mf", 2}, {"nwd_cf", 2}, {"nwd_cm", 2}, {"nwd_c", 2}};
    for (const auto& [name, n] : counts) {
        out.require(count_head(generated, name) == n, name + " count " + std::to_string(count_head(generated, name)));
    }
    const double s = seconds_since(start);
    out.require(s < 1.0, "took " + std::to_string(s) + " s");
    if (out.pass) out.detail = std::to_string(got.size()) + " rules match up to variable renaming";
    return out;
}

Outcome six_rules() {
    Outcome out;
    const auto rules = lcom1_rules();
    const auto meta = analyse_rules(rules);
    const Rule& cp = *rules.rules_for(kCp).front();
    const auto generated = generate_propagation_rules(cp, meta);
    const auto adds = count_head(generated, "add_cp");
    const auto dels = count_head(generated, "del_cp");
    out.require(generated.size() == 6 && adds == 3 && dels == 3,
                std::to_string(adds) + " insertion + " + std::to_string(dels) + " deletion rules");
    if (out.pass) out.detail = "3 insertion + 3 deletion propagation rules";
    return out;
}

Outcome worked_example() {
    Outcome out;
    const auto start = Clock::now();
    const auto rules = parse_rule_file(kPqrsProgram);
    const Snapshot base(facts(kPqrsFacts));
    const auto state = materialize(rules, base);
    const PredicateKey p{"p", 1};
    out.require(state.derived->find(p)->tuples() == std::set<Tuple>{{num(2)}}, "old p is not {p(2)}");
    const auto pr = propagate(transform(rules), state, deltas("add_r(2)."));
    out.require(pr.induced().insertions(p) == std::set<Tuple>{{num(1)}}, "induced additions of p are not {p(1)}");
    out.require(pr.induced().deletions(p).empty(), "unexpected induced deletions");
    out.require(seconds_since(start) < 1.0, "too slow");
    if (out.pass) out.detail = "old p = {p(2)}, induced additions = {p(1)}, no deletions";
    return out;
}

struct TrialStats {
    std::size_t trials = 0;
    std::size_t state_mismatches = 0;
    std::size_t metric_mismatches = 0;
    std::size_t effectiveness_violations = 0;
    std::string first_failure;
    double seconds = 0;
};

TrialStats run_trials() {
    TrialStats stats;
    const auto start = Clock::now();
    Rng rng(20261015);
    const RuleSet rules = lcom1_rules();
    const PropagationProgram program(transform(rules));
    for (std::size_t i = 0; i < 1000; ++i, ++stats.trials) {
        CohesionModel model = random_model(rng);
        while (model.facts().size(CohesionModel::cm) + model.facts().size(CohesionModel::cf) == 0) {
            model = random_model(rng);
        }
        const auto spec = random_refactoring(model, rng());
        const auto state = materialize(rules, model.snapshot());
        const auto before = lcom1_all(state);
        const auto seeds = seeds_for(spec, model);
        const auto pr = program.run(state, seeds);

        const FactBase updated = apply_delta_set(model.facts(), seeds);
        const auto full = materialize(rules, Snapshot(updated));
        auto note = [&](const std::string& what) {
            if (stats.first_failure.empty()) stats.first_failure = "trial " + std::to_string(i) + " " + spec.to_text() + ": " + what;
        };
        if (pr.new_state(kCp).tuples() != brute_cp(updated) || pr.new_state(kLp).tuples() != brute_lp(updated) ||
            pr.new_state(kCp) != *full.derived->find(kCp) || pr.new_state(kLp) != *full.derived->find(kLp)) {
            ++stats.state_mismatches;
            note("new state differs");
        }
        const auto after = remap_incremental(before, pr);
        if (after != lcom1_all(full) || after != brute_lcom1(updated)) {
            ++stats.metric_mismatches;
            note("metric differs");
        }
        for (const auto* key : {&kCp, &kLp}) {
            const Relation& old = *state.derived->find(*key);
            for (const auto& t : pr.induced().insertions(*key)) {
                if (old.contains(t)) {
                    ++stats.effectiveness_violations;
                    note("ineffective insertion");
                }
            }
            for (const auto& t : pr.induced().deletions(*key)) {
                if (!old.contains(t)) {
                    ++stats.effectiveness_violations;
                    note("ineffective deletion");
                }
            }
        }
    }
    stats.seconds = seconds_since(start);
    return stats;
}

Outcome oracle_equivalence(const TrialStats& stats) {
    Outcome out;
    out.require(stats.state_mismatches == 0, std::to_string(stats.state_mismatches) + " new-state mismatches");
    out.require(stats.metric_mismatches == 0, std::to_string(stats.metric_mismatches) + " metric mismatches");
    out.require(stats.seconds < 60.0, "took " + std::to_string(stats.seconds) + " s");
    if (!stats.first_failure.empty()) out.detail += " (" + stats.first_failure + ")";
    if (out.pass) {
        std::ostringstream d;
        d << stats.trials << " trials, 0 mismatches, " << stats.seconds << " s";
        out.detail = d.str();
    }
    return out;
}

Outcome m0_r0() {
    Outcome out;
    const auto model = m0();
    const auto t = transform(lcom1_rules());
    const auto state = materialize(t.source, model.snapshot());
    out.require(lcom1(state, sym("c1")) == Lcom1Value(4), "LCOM1(c1) before is " + lcom1(state, sym("c1")).text());
    const auto spec = parse_refactoring_command("move-method m3 c1 -> new");
    const auto seeds = seeds_for(spec, model);
    out.require(seeds == r0(), "seeds differ from R0");
    const auto pr = propagate(t, state, seeds);
    const std::set<Tuple> lp_del{{sym("c1"), sym("m1"), sym("m3")}, {sym("c1"), sym("m3"), sym("m1")},
                                 {sym("c1"), sym("m2"), sym("m3")}, {sym("c1"), sym("m3"), sym("m2")}};
    const std::set<Tuple> lp_add{{sym("c2"), sym("m3"), sym("m3")}};
    out.require(pr.induced().deletions(kLp) == lp_del, "lp deletions differ");
    out.require(pr.induced().insertions(kLp) == lp_add, "lp additions differ");
    out.require(pr.induced().insertions(kCp).empty() && pr.induced().deletions(kCp).empty(), "cp deltas not empty");
    const auto after = remap_incremental(lcom1_all(state), pr);
    out.require(after == MetricResult{{sym("c1"), Lcom1Value(0)}, {sym("c2"), Lcom1Value(0)}}, "after-metric differs");
    if (out.pass) out.detail = "c1: 2 -> 0, c2: 0; 4 lp deletions, 1 lp addition";
    return out;
}

Outcome effectiveness(const TrialStats& stats) {
    Outcome out;
    out.require(stats.effectiveness_violations == 0,
                std::to_string(stats.effectiveness_violations) + " violations with tests enabled");
    const auto rules = parse_rule_file(kAlternativeProgram);
    const Snapshot base(facts(kAlternativeFacts));
    const auto seeds = deltas("del_q(1).");
    const auto on = check_against_oracle(rules, base, seeds);
    const auto off = check_against_oracle(rules, base, seeds, {.effectiveness_tests = false});
    out.require(on.empty(), "diff with tests enabled: " + on.to_text());
    const PredicateKey p{"p", 1};
    out.require(off.missing.contains(p) && off.missing.at(p) == std::set<Tuple>{{num(1)}},
                "alternative-derivation fixture shows no over-deletion without tests");
    if (out.pass) {
        out.detail = std::to_string(stats.trials) +
                     " trials minimal; without tests del_p(1) over-approximates (p(1) still derivable via r(1))";
    }
    return out;
}

Outcome termination() {
    Outcome out;
    Rng rng(7);
    std::size_t checked = 0;
    auto check = [&](const RuleSet& rules) {
        const auto t = transform(rules);
        const auto augmented = t.augmented();
        try {
            stratify(augmented);
        } catch (const Error& e) {
            out.require(false, std::string("augmented program not stratifiable: ") + e.what());
        }
        const auto report = validate_ruleset(augmented, {});
        out.require(report.ok(), "augmented program invalid: " + report.summary());
        ++checked;
    };
    check(lcom1_rules());
    for (int i = 0; i < 500 && out.pass; ++i) check(random_ruleset(rng));
    if (out.pass) out.detail = std::to_string(checked) + " rule sets, all transformed programs stratify";
    return out;
}

Outcome performance() {
    Outcome out;
    BenchParams params;
    params.classes = 200;
    params.methods_per_class = 10;
    params.fields_per_class = 10;
    params.density = 0.3;
    params.updates = 20;
    params.seed = 42;
    try {
        const auto report = run_bench(params);
        out.require(report.all_equal, "equality verdict failed");
        out.require(report.trials.size() == 20, "trial count");
        out.require(report.median_speedup >= 1.0, "median speedup " + std::to_string(report.median_speedup));
        if (out.pass) {
            std::ostringstream d;
            d << "median speedup " << report.median_speedup << "x over " << report.trials.size()
              << " trials, all equal";
            out.detail = d.str();
        }
    } catch (const Error& e) {
        out.require(false, e.what());
    }
    return out;
}

Outcome ingestion_filters() {
    Outcome out;
    const auto model = derive_model(parse_pef(data("filters.pef")));
    const auto expected = parse_model(
        "c(order). c(named).\n"
        "cm(order, order_total). cm(order, order_label). cm(named, named_run).\n"
        "cf(order, order_amount). cf(order, order_name).\n"
        "mf(order_total, order_amount). mf(order_label, order_name).\n"
        "mm(order_total, order_label).\n");
    out.require(model == expected, "filtered model differs:\n" + model.to_text());
    const auto m0_model = derive_model(parse_pef(data("m0.pef")));
    out.require(m0_model == m0(), "m0.pef does not derive M0:\n" + m0_model.to_text());
    if (out.pass) out.detail = "interface, extern, anonymous and <init> elements excluded exactly";
    return out;
}

} // namespace

int main() {
    const TrialStats trials = run_trials();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"golden update propagation listing", golden_listing},
        {"six propagation rules for cp", six_rules},
        {"worked q/r/s example", worked_example},
        {"oracle equivalence", [&] { return oracle_equivalence(trials); }},
        {"M0/R0 fixture", m0_r0},
        {"effectiveness tests", [&] { return effectiveness(trials); }},
        {"termination of the augmented program", termination},
        {"incremental faster than full recomputation", performance},
        {"ingestion filters", ingestion_filters},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failed += !outcome.pass;
        std::printf("%s criterion %zu (%s): %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    outcome.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
