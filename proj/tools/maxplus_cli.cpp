// maxplus_cli: growth-rate bounds and simulation for stochastic max-plus systems.
//
// Exit codes: 0 success, 1 runtime or estimation failure, 2 usage or config error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxplus/bounds.hpp"
#include "maxplus/expectation.hpp"
#include "maxplus/growth.hpp"
#include "maxplus/model_io.hpp"
#include "maxplus/report_io.hpp"

using namespace maxplus;
using nlohmann::json;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

/// Bad flags, bad model files, inconsistent options.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string model_path;
    std::string model_inline;
    std::string builtin;
    unsigned m = 3;
    unsigned l = 0;  // 0: same as m
    std::size_t samples = 0;  // 0: command default
    std::uint64_t horizon = 0;
    std::size_t replications = 16;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    std::string method = "auto";
    std::string format = "json";
    std::string out;
    std::string kinds = "all";
    std::uint64_t cap = kDefaultEnumerationCap;
    bool with_bounds = false;
    std::string trajectory;
    std::uint64_t record_every = 1000;
};

struct LoadedModel {
    MatrixModel model;
    bool is_paper_test;
};

LoadedModel load(const RunConfig& cfg)
{
    const int sources = !cfg.model_path.empty() + !cfg.model_inline.empty() + !cfg.builtin.empty();
    if (sources == 0) {
        throw ConfigError("one of --model, --model-json or --builtin is required");
    }
    if (sources > 1) {
        throw ConfigError("--model, --model-json and --builtin are mutually exclusive");
    }
    try {
        if (!cfg.builtin.empty()) {
            if (cfg.builtin != "paper-test") {
                throw ConfigError("unknown builtin model '" + cfg.builtin + "' (available: paper-test)");
            }
            return {MatrixModel::paper_test(), true};
        }
        if (!cfg.model_inline.empty()) {
            json doc;
            try {
                doc = json::parse(cfg.model_inline);
            } catch (const json::parse_error& e) {
                throw ConfigError(std::string("--model-json is not valid JSON: ") + e.what());
            }
            return {model_from_json(doc), false};
        }
        return {load_model(cfg.model_path), false};
    } catch (const ModelError& e) {
        throw ConfigError(e.what());
    }
}

void require_m(unsigned m, const char* flag)
{
    if (m < 1) {
        throw ConfigError(std::string(flag) + " must be >= 1");
    }
}

std::uint64_t require_seed(const RunConfig& cfg)
{
    if (!cfg.seed) {
        throw ConfigError("--seed is required for stochastic commands");
    }
    return *cfg.seed;
}

void check_common(const RunConfig& cfg)
{
    if (cfg.threads < 1) {
        throw ConfigError("--threads must be >= 1");
    }
    if (cfg.format != "json" && cfg.format != "csv") {
        throw ConfigError("--format must be csv or json");
    }
}

/// Picks the expectation source named by --method.
std::unique_ptr<ExpectationSource> make_source(const RunConfig& cfg, const LoadedModel& lm, unsigned max_chain,
                                               std::size_t default_samples)
{
    std::string method = cfg.method;
    if (method == "auto") {
        method = lm.model.is_enumerable() && enumeration_size(lm.model, max_chain) <= cfg.cap ? "exact" : "mc";
    }
    if (method == "fixtures") {
        if (!lm.is_paper_test) {
            throw ConfigError("--method fixtures is only valid with --builtin paper-test");
        }
        return std::make_unique<FixtureSource>();
    }
    if (method == "exact") {
        if (!lm.model.is_enumerable()) {
            throw ConfigError("--method exact needs a model with discrete or constant entries");
        }
        return std::make_unique<ExactSource>(lm.model, cfg.cap);
    }
    if (method == "mc") {
        const std::size_t samples = cfg.samples ? cfg.samples : default_samples;
        if (samples < 2) {
            throw ConfigError("--samples must be >= 2");
        }
        return std::make_unique<MonteCarloSource>(lm.model, samples, SeedSpec{require_seed(cfg), {}}, cfg.threads);
    }
    throw ConfigError("--method must be one of auto, mc, exact, fixtures");
}

std::vector<BoundKind> parse_kinds(const std::string& text)
{
    if (text == "all") {
        return {BoundKind::lower_basic, BoundKind::upper_basic, BoundKind::lower_rowmax,
                BoundKind::lower_nested, BoundKind::lower_corollary, BoundKind::error_bound};
    }
    std::vector<BoundKind> kinds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            kinds.push_back(bound_kind_from_string(item));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (kinds.empty()) {
        throw ConfigError("--kinds is empty");
    }
    return kinds;
}

bool wants(const std::vector<BoundKind>& kinds, BoundKind k)
{
    return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
}

std::vector<BoundReport> compute_bounds(const ExpectationSource& source, const std::vector<BoundKind>& kinds,
                                        unsigned max_m, unsigned max_l)
{
    std::vector<BoundReport> reports;
    const bool basic = wants(kinds, BoundKind::lower_basic) || wants(kinds, BoundKind::upper_basic);
    for (unsigned m = 1; m <= max_m && basic; ++m) {
        BasicBounds b = bound_basic(source, m);
        if (wants(kinds, BoundKind::lower_basic)) {
            reports.push_back(std::move(b.lower));
        }
        if (wants(kinds, BoundKind::upper_basic)) {
            reports.push_back(std::move(b.upper));
        }
    }
    for (unsigned m = 1; m <= max_m && wants(kinds, BoundKind::lower_rowmax); ++m) {
        reports.push_back(bound_rowmax(source, m));
    }
    if (wants(kinds, BoundKind::lower_nested)) {
        for (unsigned l = 1; l <= max_l; ++l) {
            for (unsigned m = 1; m <= max_m; ++m) {
                reports.push_back(bound_nested(source, l, m));
            }
        }
    }
    for (unsigned m = 1; m <= max_m && wants(kinds, BoundKind::lower_corollary); ++m) {
        reports.push_back(bound_corollary(source, m));
    }
    for (unsigned m = 1; m <= max_m && wants(kinds, BoundKind::error_bound); ++m) {
        reports.push_back(error_bound(source, m));
    }
    return reports;
}

void emit(const RunConfig& cfg, const std::string& text)
{
    if (cfg.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open output file '" + cfg.out + "'");
    }
    file << text;
}

std::string render_bounds(const RunConfig& cfg, const std::vector<BoundReport>& reports, const BestBounds& best)
{
    if (cfg.format == "csv") {
        std::string out = std::string(kBoundsCsvHeader) + "\n";
        for (const auto& r : reports) {
            out += report_to_csv(r) + "\n";
        }
        for (const auto& row : best_to_csv(best)) {
            out += row + "\n";
        }
        return out;
    }
    json records = json::array();
    for (const auto& r : reports) {
        records.push_back(report_to_json(r));
    }
    return json{{"reports", std::move(records)}, {"best", best_to_json(best)}}.dump(2) + "\n";
}

unsigned max_l_of(const RunConfig& cfg) { return cfg.l ? cfg.l : cfg.m; }

int cmd_bounds(const RunConfig& cfg)
{
    check_common(cfg);
    require_m(cfg.m, "--m");
    const unsigned max_l = max_l_of(cfg);
    const auto kinds = parse_kinds(cfg.kinds);
    const LoadedModel lm = load(cfg);
    if (cfg.method == "fixtures" && (cfg.m > 3 || max_l > 3)) {
        throw ConfigError("fixture constants cover only m, l <= 3");
    }
    const auto source = make_source(cfg, lm, std::max(cfg.m, max_l), 100'000);
    const auto reports = compute_bounds(*source, kinds, cfg.m, max_l);
    emit(cfg, render_bounds(cfg, reports, best_bounds(reports)));
    return 0;
}

int cmd_lambda(const RunConfig& cfg)
{
    check_common(cfg);
    if (cfg.horizon < 1) {
        throw ConfigError("--horizon must be >= 1");
    }
    if (cfg.replications < 2) {
        throw ConfigError("--replications must be >= 2");
    }
    const std::uint64_t seed = require_seed(cfg);
    const LoadedModel lm = load(cfg);
    if (!cfg.trajectory.empty() && cfg.record_every < 1) {
        throw ConfigError("--record-every must be >= 1");
    }

    std::optional<BestBounds> envelope;
    if (cfg.with_bounds) {
        require_m(cfg.m, "--m");
        if (cfg.method == "fixtures" && cfg.m > 3) {
            throw ConfigError("fixture constants cover only m <= 3");
        }
        const auto source = make_source(cfg, lm, cfg.m, 100'000);
        envelope = best_bounds(compute_bounds(*source, parse_kinds("all"), cfg.m, cfg.m));
    }

    const LambdaEstimate est = estimate_lambda(lm.model, cfg.horizon, cfg.replications, SeedSpec{seed, {0}}, cfg.threads);

    if (!cfg.trajectory.empty()) {
        const auto points =
            simulate_state(lm.model, Matrix::zeros(lm.model.n()), cfg.horizon, SeedSpec{seed, {0, 0}}, cfg.record_every);
        std::ofstream file(cfg.trajectory, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw std::runtime_error("cannot open trajectory file '" + cfg.trajectory + "'");
        }
        file << "k,norm\n";
        for (const auto& p : points) {
            file << p.k << ',' << format_sig6(p.norm) << '\n';
        }
    }

    bool violation = false;
    if (envelope) {
        const double slack = 3.0 * est.std_error;
        if (envelope->lower && est.lambda_hat < envelope->lower->value - slack) {
            violation = true;
        }
        if (envelope->upper && est.lambda_hat > envelope->upper->value + slack) {
            violation = true;
        }
        if (violation) {
            std::cerr << "warning: lambda estimate " << format_sig6(est.lambda_hat)
                      << " lies outside the bound envelope\n";
        }
    }

    if (cfg.format == "csv") {
        emit(cfg, std::string(kLambdaCsvHeader) + "\n" + lambda_to_csv(est) + "\n");
    } else {
        json record = lambda_to_json(est);
        if (envelope) {
            record["envelope"] = best_to_json(*envelope);
            record["envelope"]["violation"] = violation;
        }
        emit(cfg, record.dump(2) + "\n");
    }
    return 0;
}

int cmd_reproduce_paper(const RunConfig& cfg)
{
    check_common(cfg);
    RunConfig run = cfg;
    if (run.method == "auto") {
        run.method = "fixtures";
    }
    if (run.method != "fixtures" && run.method != "mc") {
        throw ConfigError("reproduce-paper supports --method fixtures or mc");
    }
    const LoadedModel lm{MatrixModel::paper_test(), true};
    const auto source = make_source(run, lm, 3, 1'000'000);

    std::vector<BoundReport> table1;
    std::vector<BoundReport> rowmax;
    std::vector<BoundReport> table2;
    for (unsigned m = 1; m <= 3; ++m) {
        BasicBounds b = bound_basic(*source, m);
        table1.push_back(std::move(b.upper));
        table1.push_back(std::move(b.lower));
    }
    for (unsigned m = 1; m <= 3; ++m) {
        rowmax.push_back(bound_rowmax(*source, m));
    }
    for (unsigned l = 1; l <= 3; ++l) {
        for (unsigned m = 1; m <= 3; ++m) {
            table2.push_back(bound_nested(*source, l, m));
        }
    }
    const ScalarEstimate c = error_constant(*source);

    if (cfg.format == "csv") {
        std::string out = std::string(kBoundsCsvHeader) + "\n";
        for (const auto* group : {&table1, &rowmax, &table2}) {
            for (const auto& r : *group) {
                out += report_to_csv(r) + "\n";
            }
        }
        out += "error_constant,,," + format_sig6(c.value) + "," + format_sig6(c.std_error) + "," +
               to_string(c.method) + "\n";
        emit(cfg, out);
        return 0;
    }
    auto as_json = [](const std::vector<BoundReport>& rs) {
        json a = json::array();
        for (const auto& r : rs) {
            a.push_back(report_to_json(r));
        }
        return a;
    };
    const json doc{{"table1", as_json(table1)},
                   {"rowmax", as_json(rowmax)},
                   {"table2", as_json(table2)},
                   {"error_constant",
                    {{"value", round_sig6(c.value)}, {"stderr", round_sig6(c.std_error)}, {"method", to_string(c.method)}}}};
    emit(cfg, doc.dump(2) + "\n");
    return 0;
}

struct CheckRow {
    std::string functional;
    double exact;
    double mc;
    double std_error;
    double z;
    bool pass;
};

int cmd_enumerate_check(const RunConfig& cfg)
{
    check_common(cfg);
    require_m(cfg.m, "--m");
    const std::uint64_t seed = require_seed(cfg);
    const LoadedModel lm = load(cfg);
    if (!lm.model.is_enumerable()) {
        throw ConfigError("enumerate-check needs a model with discrete or constant entries");
    }
    const std::size_t samples = cfg.samples ? cfg.samples : 100'000;
    if (samples < 2) {
        throw ConfigError("--samples must be >= 2");
    }

    const Matrix v = conjugate(rowmax(exact_mean(lm.model, ConjMeans{1}, cfg.cap).value));
    std::vector<CheckRow> rows;
    for (unsigned m = 1; m <= cfg.m; ++m) {
        const std::vector<Functional> functionals{EntryMeans{m}, ConjMeans{m}, RowMaxConjMeans{m}, NormMean{m},
                                                  VecProductNormMean{v, m}};
        for (std::size_t f = 0; f < functionals.size(); ++f) {
            const MeanEstimate exact = exact_mean(lm.model, functionals[f], cfg.cap);
            const MeanEstimate mc =
                mc_mean(lm.model, functionals[f], samples, SeedSpec{seed, {m, f}}, cfg.threads);
            for (std::size_t k = 0; k < exact.value.entries().size(); ++k) {
                const double e = exact.value.entries()[k];
                const double x = mc.value.entries()[k];
                const double s = mc.std_error.entries()[k];
                const double z = s > 0.0 ? (x - e) / s : 0.0;
                const bool pass = s > 0.0 ? std::abs(z) <= 4.0 : std::abs(x - e) <= 1e-12 * (1.0 + std::abs(e));
                std::string id = functional_id(functionals[f]);
                if (exact.value.entries().size() > 1) {
                    const std::size_t cols = exact.value.cols();
                    id += "(" + std::to_string(k / cols + 1) + "," + std::to_string(k % cols + 1) + ")";
                }
                rows.push_back({id, e, x, s, z, pass});
            }
        }
    }
    bool all_pass = true;
    std::string out;
    if (cfg.format == "csv") {
        out = "functional,exact,mc,stderr,z,pass\n";
        for (const auto& r : rows) {
            out += "\"" + r.functional + "\"," + format_sig6(r.exact) + "," + format_sig6(r.mc) + "," +
                   format_sig6(r.std_error) + "," + format_sig6(r.z) + "," + (r.pass ? "true" : "false") + "\n";
            all_pass = all_pass && r.pass;
        }
    } else {
        json a = json::array();
        for (const auto& r : rows) {
            a.push_back({{"functional", r.functional},
                         {"exact", round_sig6(r.exact)},
                         {"mc", round_sig6(r.mc)},
                         {"stderr", round_sig6(r.std_error)},
                         {"z", round_sig6(r.z)},
                         {"pass", r.pass}});
            all_pass = all_pass && r.pass;
        }
        out = json{{"checks", std::move(a)}, {"all_pass", all_pass}}.dump(2) + "\n";
    }
    emit(cfg, out);
    return all_pass ? 0 : kExitRuntime;
}

void add_model_options(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--model", cfg.model_path, "Model JSON file");
    cmd->add_option("--model-json", cfg.model_inline, "Model JSON document given inline");
    cmd->add_option("--builtin", cfg.builtin, "Built-in model (paper-test)");
}

void add_output_options(CLI::App* cmd, RunConfig& cfg)
{
    cmd->add_option("--format", cfg.format, "Output format: csv or json")->capture_default_str();
    cmd->add_option("--out", cfg.out, "Output path (default: standard output)");
    cmd->add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Random seed (required for stochastic work)");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Growth-rate bounds and simulation for stochastic max-plus linear systems"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* bounds = app.add_subcommand("bounds", "Compute lower and upper bounds on the growth rate");
    add_model_options(bounds, cfg);
    add_output_options(bounds, cfg);
    bounds->add_option("--m", cfg.m, "Largest chain length m (grid 1..m)")->capture_default_str();
    bounds->add_option("--l", cfg.l, "Largest inner length l for nested bounds (default: --m)");
    bounds->add_option("--method", cfg.method, "auto, mc, exact or fixtures")->capture_default_str();
    bounds->add_option("--samples", cfg.samples, "Monte Carlo samples per expectation (default 100000)");
    bounds->add_option("--kinds", cfg.kinds, "Comma-separated bound kinds, or all")->capture_default_str();
    bounds->add_option("--cap", cfg.cap, "Enumeration budget in joint outcomes")->capture_default_str();

    auto* lambda = app.add_subcommand("lambda", "Estimate the growth rate by simulation");
    add_model_options(lambda, cfg);
    add_output_options(lambda, cfg);
    lambda->add_option("--horizon", cfg.horizon, "Steps K per replicate")->required();
    lambda->add_option("--replications", cfg.replications, "Independent replicates R")->capture_default_str();
    lambda->add_flag("--with-bounds", cfg.with_bounds, "Also compute bounds and check the estimate against them");
    lambda->add_option("--m", cfg.m, "Largest m for --with-bounds")->capture_default_str();
    lambda->add_option("--method", cfg.method, "Expectation method for --with-bounds")->capture_default_str();
    lambda->add_option("--samples", cfg.samples, "Monte Carlo samples for --with-bounds");
    lambda->add_option("--cap", cfg.cap, "Enumeration budget in joint outcomes")->capture_default_str();
    lambda->add_option("--trajectory", cfg.trajectory, "Write k,norm rows of replicate 0 to this CSV file");
    lambda->add_option("--record-every", cfg.record_every, "Trajectory sampling interval")->capture_default_str();

    auto* reproduce = app.add_subcommand("reproduce-paper", "Tables for the 2x2 exponential test model");
    add_output_options(reproduce, cfg);
    reproduce->add_option("--method", cfg.method, "fixtures or mc (default fixtures)");
    reproduce->add_option("--samples", cfg.samples, "Monte Carlo samples (default 1000000)");

    auto* check = app.add_subcommand("enumerate-check", "Compare exact enumeration with Monte Carlo");
    add_model_options(check, cfg);
    add_output_options(check, cfg);
    check->add_option("--m", cfg.m, "Largest chain length")->capture_default_str();
    check->add_option("--samples", cfg.samples, "Monte Carlo samples (default 100000)");
    check->add_option("--cap", cfg.cap, "Enumeration budget in joint outcomes")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (bounds->parsed()) {
            return cmd_bounds(cfg);
        }
        if (lambda->parsed()) {
            return cmd_lambda(cfg);
        }
        if (reproduce->parsed()) {
            return cmd_reproduce_paper(cfg);
        }
        return cmd_enumerate_check(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
