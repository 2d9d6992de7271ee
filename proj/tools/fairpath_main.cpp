// fairpath command-line front end: discover / remove / audit / metrics over
// model and CSV files. See README.md for the file formats and exit codes.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairpath/dataset.hpp"
#include "fairpath/discovery.hpp"
#include "fairpath/errors.hpp"
#include "fairpath/format.hpp"
#include "fairpath/metrics.hpp"
#include "fairpath/model_io.hpp"
#include "fairpath/removal.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDiscrimination = 2;
constexpr int kExitIndeterminate = 3;
constexpr int kExitSolverFailure = 4;

struct Options {
    std::string data_path;
    std::string modified_path;
    std::string graph_path;
    std::string protected_spec;
    std::string decision_spec;
    std::string redlining_spec;
    std::string mode = "both";
    std::string out_model;
    std::string out_data;
    std::string out_report;
    double tau = 0.05;
    double alpha = 1.0;
    long n = -1;  // -1: default to the input dataset's size
    std::uint64_t seed = 0;
    bool expected_counts = false;
};

fairpath::BinaryAttribute parse_attribute(const std::string& spec, const std::string& flag) {
    auto colon = spec.find(':');
    auto comma = spec.find(',', colon == std::string::npos ? 0 : colon + 1);
    if (colon == std::string::npos || comma == std::string::npos)
        throw fairpath::ParseError(flag + " expects NAME:NEG,POS, got '" + spec + "'");
    fairpath::BinaryAttribute a{spec.substr(0, colon), spec.substr(colon + 1, comma - colon - 1),
                                spec.substr(comma + 1)};
    if (a.name.empty() || a.neg.empty() || a.pos.empty())
        throw fairpath::ParseError(flag + " expects NAME:NEG,POS, got '" + spec + "'");
    return a;
}

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> names;
    std::size_t start = 0;
    while (start <= csv.size()) {
        auto comma = csv.find(',', start);
        auto end = comma == std::string::npos ? csv.size() : comma;
        if (end > start) names.push_back(csv.substr(start, end - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return names;
}

fairpath::QueryPair make_queries(const Options& o) {
    auto cause = parse_attribute(o.protected_spec, "--protected");
    auto outcome = parse_attribute(o.decision_spec, "--decision");
    auto redlining = split_names(o.redlining_spec);

    fairpath::QueryPair queries;
    if (o.mode != "direct" && o.mode != "indirect" && o.mode != "both")
        throw fairpath::ParseError("--mode must be one of both, direct, indirect");
    if (o.mode == "direct" || o.mode == "both")
        queries.direct = fairpath::PathQuery::direct(cause, outcome);
    if (o.mode == "indirect" || o.mode == "both") {
        if (redlining.empty())
            throw fairpath::ParseError("mode '" + o.mode + "' needs --redlining");
        queries.indirect = fairpath::PathQuery::indirect(cause, outcome, redlining);
    }
    return queries;
}

// The model under analysis: estimated from --data when given (the file then
// only needs the structure), otherwise the file must carry every CPT.
fairpath::CausalModel load_model(const Options& o, std::optional<fairpath::Dataset>* data_out) {
    fairpath::ModelFile file = fairpath::read_model_file(o.graph_path);
    if (o.data_path.empty()) return file.to_model();
    fairpath::Dataset data = fairpath::read_csv_file(o.data_path, file.graph);
    fairpath::CausalModel model = fairpath::estimate_cpts(data, file.graph, o.alpha);
    if (data_out) *data_out = std::move(data);
    return model;
}

void emit_report(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw fairpath::ParseError("cannot open report file '" + path + "'");
    out << text;
}

int judgment_exit_code(const fairpath::DiscoveryReport& report) {
    if (report.discrimination_claimed()) return kExitDiscrimination;
    if (report.indeterminate()) return kExitIndeterminate;
    return kExitOk;
}

fairpath::QpOptions solver_options() {
    fairpath::QpOptions options;
    if (const char* env = std::getenv("FAIRPATH_SOLVER_ITERS")) {
        long iters = fairpath::parse_long(env);
        if (iters < 1)
            throw fairpath::ParseError("FAIRPATH_SOLVER_ITERS must be a positive integer");
        options.max_iterations = static_cast<int>(iters);
    }
    return options;
}

int run_discover(const Options& o) {
    fairpath::CausalModel model = load_model(o, nullptr);
    fairpath::DiscoveryReport report = fairpath::pse_dd(model, make_queries(o), o.tau);
    emit_report(fairpath::render_report(report), o.out_report);
    return judgment_exit_code(report);
}

int run_remove(const Options& o) {
    std::optional<fairpath::Dataset> data;
    fairpath::CausalModel model = load_model(o, &data);
    long n = o.n;
    if (n < 0) {
        if (!data) throw fairpath::ParseError("--n is required when no --data is given");
        n = data->total_count();
    }

    fairpath::SampleMode mode = o.expected_counts ? fairpath::SampleMode::ExpectedCounts
                                                  : fairpath::SampleMode::Ancestral;
    fairpath::RemovalOutcome outcome =
        fairpath::pse_dr(model, make_queries(o), o.tau, n, o.seed, mode, solver_options());

    if (!o.out_model.empty()) fairpath::write_model_file(outcome.repair.repaired, o.out_model);
    if (!o.out_data.empty()) fairpath::write_csv_file(outcome.dataset, o.out_data);

    std::string report = fairpath::render_report(outcome.repair.post_effects);
    report += "objective_value = " + fairpath::format_double(outcome.repair.objective) + "\n";
    report += "removed_arcs =";
    for (std::size_t i = 0; i < outcome.repair.removed_arcs.size(); ++i) {
        const auto& [from, to] = outcome.repair.removed_arcs[i];
        report += (i ? "," : " ") + from + "->" + to;
    }
    report += "\n";
    emit_report(report, o.out_report);
    return kExitOk;
}

int run_audit(const Options& o) {
    if (o.data_path.empty()) throw fairpath::ParseError("audit needs --data (the test CSV)");
    fairpath::CausalModel model = fairpath::read_model_file(o.graph_path).to_model();
    fairpath::Dataset test = fairpath::read_csv_file(o.data_path, model.graph());
    fairpath::DiscoveryReport report =
        fairpath::predict_and_audit(model, make_queries(o), test, o.tau, o.alpha);
    emit_report(fairpath::render_report(report), o.out_report);
    return judgment_exit_code(report);
}

int run_metrics(const Options& o) {
    fairpath::ModelFile file = fairpath::read_model_file(o.graph_path);
    fairpath::Dataset original = fairpath::read_csv_file(o.data_path, file.graph);
    fairpath::Dataset modified = fairpath::read_csv_file(o.modified_path, file.graph);

    std::string report =
        "chi_square = " + fairpath::format_double(fairpath::chi_square_utility(original, modified)) +
        "\n";
    if (!o.protected_spec.empty() && !o.decision_spec.empty()) {
        auto cause = parse_attribute(o.protected_spec, "--protected");
        auto outcome = parse_attribute(o.decision_spec, "--decision");
        report += "rd_original = " +
                  fairpath::format_double(fairpath::dataset_risk_difference(original, cause, outcome)) +
                  "\n";
        report += "rd_modified = " +
                  fairpath::format_double(fairpath::dataset_risk_difference(modified, cause, outcome)) +
                  "\n";
    }
    emit_report(report, o.out_report);
    return kExitOk;
}

void add_query_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--protected", o.protected_spec, "Protected attribute as NAME:NEG,POS")
        ->required();
    cmd->add_option("--decision", o.decision_spec, "Decision attribute as NAME:NEG,POS")
        ->required();
    cmd->add_option("--redlining", o.redlining_spec,
                    "Comma-separated redlining variables (indirect channel)");
    cmd->add_option("--tau", o.tau, "Discrimination threshold")->capture_default_str();
    cmd->add_option("--mode", o.mode, "Channels to analyze: both, direct, indirect")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Path-specific causal discrimination discovery and removal"};
    app.require_subcommand(1);

    Options od, orm, oa, om;

    CLI::App* discover =
        app.add_subcommand("discover", "Judge direct/indirect discrimination in a model");
    discover->add_option("--graph", od.graph_path, "Model file (structure, optionally CPTs)")
        ->required();
    discover->add_option("--data", od.data_path, "CSV to estimate CPTs from");
    discover->add_option("--alpha", od.alpha, "Additive smoothing for estimation")
        ->capture_default_str();
    discover->add_option("--out-report", od.out_report, "Report path (default: stdout)");
    add_query_flags(discover, od);

    CLI::App* remove =
        app.add_subcommand("remove", "Repair the decision CPT and regenerate a dataset");
    remove->add_option("--graph", orm.graph_path, "Model file (structure, optionally CPTs)")
        ->required();
    remove->add_option("--data", orm.data_path, "CSV to estimate CPTs from");
    remove->add_option("--alpha", orm.alpha, "Additive smoothing for estimation")
        ->capture_default_str();
    remove->add_option("--n", orm.n, "Rows in the regenerated dataset (default: input size)");
    remove->add_option("--seed", orm.seed, "Sampling seed")->capture_default_str();
    remove->add_flag("--expected-counts", orm.expected_counts,
                     "Emit deterministic expected counts instead of sampling");
    remove->add_option("--out-model", orm.out_model, "Repaired model path");
    remove->add_option("--out-data", orm.out_data, "Regenerated CSV path");
    remove->add_option("--out-report", orm.out_report, "Report path (default: stdout)");
    add_query_flags(remove, orm);

    CLI::App* audit =
        app.add_subcommand("audit", "Check a model's predictions on test data for discrimination");
    audit->add_option("--graph", oa.graph_path, "Complete model file")->required();
    audit->add_option("--data", oa.data_path, "Test CSV")->required();
    audit->add_option("--alpha", oa.alpha, "Additive smoothing for re-estimation")
        ->capture_default_str();
    audit->add_option("--out-report", oa.out_report, "Report path (default: stdout)");
    add_query_flags(audit, oa);

    CLI::App* metrics =
        app.add_subcommand("metrics", "Compare two datasets: chi-square utility, risk differences");
    metrics->add_option("--graph", om.graph_path, "Model file providing the schema")->required();
    metrics->add_option("--data", om.data_path, "Baseline CSV")->required();
    metrics->add_option("--modified", om.modified_path, "Comparison CSV")->required();
    metrics->add_option("--protected", om.protected_spec,
                        "Protected attribute as NAME:NEG,POS (adds risk differences)");
    metrics->add_option("--decision", om.decision_spec, "Decision attribute as NAME:NEG,POS");
    metrics->add_option("--out-report", om.out_report, "Report path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (discover->parsed()) return run_discover(od);
        if (remove->parsed()) return run_remove(orm);
        if (audit->parsed()) return run_audit(oa);
        return run_metrics(om);
    } catch (const fairpath::SolverFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolverFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
}
