#include "cohup_cli/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <ostream>

#include "cohup/bench/bench.hpp"
#include "cohup/error.hpp"
#include "cohup/eval/engine.hpp"
#include "cohup/logic/render.hpp"
#include "cohup/metrics/lcom1.hpp"
#include "cohup/refactor/refactoring.hpp"
#include "cohup/up/transform.hpp"
#include "workspace.hpp"

namespace cohup::cli {

namespace {

struct GlobalOptions {
    std::string workspace = ".cohup";
    std::string model;
    std::string rules;
};

struct WhatifOptions {
    std::string kind;
    std::string element;
    std::string from;
    std::string to;
    std::string new_name;
    bool new_class = false;
    bool show_deltas = false;
    std::string batch;
    std::string mapping = "prose";
};

Workspace open_workspace(const GlobalOptions& g) {
    std::optional<std::filesystem::path> model;
    if (!g.model.empty()) model = g.model;
    return Workspace(g.workspace, model);
}

RuleSet metric_rules(const GlobalOptions& g) {
    return g.rules.empty() ? lcom1_rules() : load_metric_rules(read_text(g.rules));
}

Mapping mapping_of(const std::string& name) {
    auto mapping = parse_mapping(name);
    if (!mapping) throw Error(ErrorKind::SyntaxError, "unknown mapping '" + name + "'");
    return *mapping;
}

int cmd_ingest(const GlobalOptions& g, const std::string& pef_path, std::ostream& out) {
    const auto model = derive_model(parse_pef(read_text(pef_path)));
    const auto ws = open_workspace(g);
    ws.store_model(model);
    ws.clear_whatif();
    for (const auto* key : {&CohesionModel::c, &CohesionModel::cm, &CohesionModel::cf, &CohesionModel::mf,
                            &CohesionModel::mm}) {
        out << key->name << ' ' << model.facts().size(*key) << '\n';
    }
    return kExitOk;
}

int cmd_rules(const GlobalOptions& g, bool emit_up, bool no_effectiveness, std::ostream& out) {
    const RuleSet rules = metric_rules(g);
    if (!emit_up) {
        out << render(rules.rules);
        return kExitOk;
    }
    out << render(transform(rules, {.effectiveness_tests = !no_effectiveness}));
    return kExitOk;
}

int cmd_metric(const GlobalOptions& g, const std::string& cls, const std::string& mapping_name, std::ostream& out) {
    const Mapping mapping = mapping_of(mapping_name);
    const auto model = open_workspace(g).load_model();
    const auto state = materialize(metric_rules(g), model.snapshot());
    if (!cls.empty()) {
        out << cls << ' ' << lcom1(state, sym(cls), mapping).text() << '\n';
        return kExitOk;
    }
    out << render(lcom1_all(state, mapping));
    return kExitOk;
}

RefactoringSpec spec_from_arguments(const WhatifOptions& w) {
    if (w.kind.empty() || w.element.empty() || w.from.empty()) {
        throw Error(ErrorKind::SyntaxError, "whatif needs <move-method|move-field> <element> <from>");
    }
    if (w.kind != "move-method" && w.kind != "move-field") {
        throw Error(ErrorKind::SyntaxError, "unknown refactoring '" + w.kind + "'");
    }
    std::string target;
    if (!w.to.empty()) {
        target = w.to;
    } else if (w.new_class || !w.new_name.empty()) {
        target = w.new_name.empty() ? "new" : "new:" + w.new_name;
    } else {
        throw Error(ErrorKind::SyntaxError, "whatif needs --to <class> or --new");
    }
    return parse_refactoring_command(w.kind + ' ' + w.element + ' ' + w.from + " -> " + target);
}

std::vector<RefactoringSpec> batch_specs(const std::string& path) {
    std::vector<RefactoringSpec> specs;
    std::istringstream in(read_text(path));
    std::size_t number = 0;
    for (std::string line; std::getline(in, line);) {
        ++number;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%' || line[first] == '#') continue;
        try {
            specs.push_back(parse_refactoring_command(line));
        } catch (const Error& e) {
            throw Error(e.kind(), path + ":" + std::to_string(number) + ": " + e.what(), number);
        }
    }
    return specs;
}

int cmd_whatif(const GlobalOptions& g, const WhatifOptions& w, std::ostream& out) {
    const Mapping mapping = mapping_of(w.mapping);
    const auto specs = w.batch.empty() ? std::vector<RefactoringSpec>{spec_from_arguments(w)} : batch_specs(w.batch);
    const auto ws = open_workspace(g);
    const ImpactAnalyzer analyzer(ws.load_model(), metric_rules(g), mapping);
    std::optional<PendingWhatif> last;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto report = analyzer.whatif(specs[i]);
        if (i > 0) out << '\n';
        out << report.to_text(w.show_deltas);
        last = PendingWhatif{specs[i].to_text(), report.seeds};
    }
    if (last) ws.store_whatif(*last);
    return kExitOk;
}

int cmd_commit(const GlobalOptions& g, const std::string& mapping_name, std::ostream& out, std::ostream& err) {
    const Mapping mapping = mapping_of(mapping_name);
    const auto ws = open_workspace(g);
    const auto pending = ws.load_whatif();
    if (!pending) {
        err << "cohup: no pending what-if to commit\n";
        return kExitDomain;
    }
    ImpactAnalyzer analyzer(ws.load_model(), metric_rules(g), mapping);
    const auto normalized = normalize_seeds(analyzer.model().facts(), pending->seeds);
    if (!normalized.warnings.empty() || normalized.seeds != pending->seeds) {
        throw Error(ErrorKind::ConflictingSeed, "the model changed since '" + pending->command + "'; run whatif again");
    }
    const CohesionModel updated(apply_delta_set(analyzer.model().facts(), pending->seeds));
    ws.store_model(updated);
    ws.clear_whatif();
    out << "committed " << pending->command << '\n'
        << render(lcom1_all(materialize(metric_rules(g), updated.snapshot()), mapping));
    return kExitOk;
}

nlohmann::ordered_json bench_json(const BenchReport& report) {
    nlohmann::ordered_json j;
    j["classes"] = report.params.classes;
    j["methods_per_class"] = report.params.methods_per_class;
    j["fields_per_class"] = report.params.fields_per_class;
    j["density"] = report.params.density;
    j["updates"] = report.params.updates;
    j["seed"] = report.params.seed;
    j["model_facts"] = report.model_facts;
    j["trials"] = nlohmann::ordered_json::array();
    for (const auto& t : report.trials) {
        j["trials"].push_back({{"refactoring", t.refactoring},
                               {"trial_seed", t.trial_seed},
                               {"t_incremental_ns", t.t_incremental_ns},
                               {"t_full_ns", t.t_full_ns},
                               {"speedup", t.speedup()},
                               {"equal", t.equal}});
    }
    j["median_speedup"] = report.median_speedup;
    j["all_equal"] = report.all_equal;
    return j;
}

int cmd_bench(const BenchParams& params, bool json, std::ostream& out) {
    const auto report = run_bench(params);
    if (json) {
        out << bench_json(report).dump(2) << '\n';
    } else {
        out << report.to_text();
    }
    return report.all_equal ? kExitOk : kExitDomain;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cohesion metrics and refactoring impact via update propagation", "cohup"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--workspace", g.workspace, "Directory holding the current model and the last what-if")
        ->capture_default_str();
    app.add_option("--model", g.model, "Model fact file to use instead of the workspace model");
    app.add_option("--rules", g.rules, "Metric rule file (default: built-in LCOM1 rules)");

    std::string pef_path;
    auto* ingest = app.add_subcommand("ingest", "Build the cohesion model from a program element fact file");
    ingest->add_option("pef", pef_path, "Program element fact file")->required();

    bool emit_up = false;
    bool no_effectiveness = false;
    std::string metric_name = "lcom1";
    auto* rules = app.add_subcommand("rules", "Print the metric rules or their update propagation rules");
    rules->add_option("--metric", metric_name, "Metric name")->check(CLI::IsMember({"lcom1"}));
    rules->add_flag("--emit-up", emit_up, "Print the generated propagation and transition rules");
    rules->add_flag("--no-effectiveness", no_effectiveness, "Omit effectiveness tests from propagation rules");

    std::string cls;
    std::string mapping = "prose";
    auto* metric = app.add_subcommand("metric", "Print LCOM1 per class");
    metric->add_option("--class", cls, "Only this class");
    metric->add_option("--mapping", mapping, "prose | as-printed")->check(CLI::IsMember({"prose", "as-printed"}));

    WhatifOptions w;
    auto* whatif = app.add_subcommand("whatif", "Predict the LCOM1 impact of a refactoring");
    whatif->add_option("kind", w.kind, "move-method | move-field");
    whatif->add_option("element", w.element, "Method or field id");
    whatif->add_option("from", w.from, "Class that owns the element");
    auto* to = whatif->add_option("--to", w.to, "Existing target class");
    auto* fresh = whatif->add_flag("--new", w.new_class, "Move into a new class");
    auto* name = whatif->add_option("--name", w.new_name, "Id for the new class (default: first free cN)");
    to->excludes(fresh)->excludes(name);
    whatif->add_flag("--show-deltas", w.show_deltas, "Also print seeds and induced lp/cp deltas");
    whatif->add_option("--batch", w.batch, "File with one refactoring command per line")
        ->excludes(to)
        ->excludes(fresh)
        ->excludes(name);
    whatif->add_option("--mapping", w.mapping, "prose | as-printed")->check(CLI::IsMember({"prose", "as-printed"}));

    auto* commit = app.add_subcommand("commit", "Apply the last what-if to the stored model");
    commit->add_option("--mapping", mapping, "prose | as-printed")->check(CLI::IsMember({"prose", "as-printed"}));

    BenchParams params;
    bool json = false;
    auto* bench = app.add_subcommand("bench", "Compare incremental and full recomputation on a synthetic model");
    bench->add_option("--classes", params.classes)->capture_default_str()->check(CLI::PositiveNumber);
    bench->add_option("--methods", params.methods_per_class)->capture_default_str()->check(CLI::PositiveNumber);
    bench->add_option("--fields", params.fields_per_class)->capture_default_str()->check(CLI::PositiveNumber);
    bench->add_option("--density", params.density)->capture_default_str()->check(CLI::Range(0.0, 1.0));
    bench->add_option("--updates", params.updates)->capture_default_str()->check(CLI::NonNegativeNumber);
    bench->add_option("--seed", params.seed)->capture_default_str();
    bench->add_flag("--json", json, "Machine-readable report");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(g, pef_path, out);
        if (rules->parsed()) return cmd_rules(g, emit_up, no_effectiveness, out);
        if (metric->parsed()) return cmd_metric(g, cls, mapping, out);
        if (whatif->parsed()) return cmd_whatif(g, w, out);
        if (commit->parsed()) return cmd_commit(g, mapping, out, err);
        if (bench->parsed()) return cmd_bench(params, json, out);
    } catch (const Error& e) {
        err << "cohup: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return e.is_input_error() ? kExitInput : kExitDomain;
    } catch (const std::exception& e) {
        err << "cohup: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitInput;
}

} // namespace cohup::cli
