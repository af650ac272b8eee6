// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "algebra_properties.hpp"
#include "cli_harness.hpp"
#include "maxplus/bounds.hpp"
#include "maxplus/growth.hpp"
#include "maxplus/report_io.hpp"

using namespace maxplus;
using nlohmann::json;

namespace {

// Exact constants of the 2x2 exponential(1) model.
constexpr double kEntry[] = {0, 1.0, 11.0 / 4.0, 245.0 / 54.0};
constexpr double kRowMax[] = {0, 3.0 / 2.0, 119.0 / 36.0, 1649.0 / 324.0};
constexpr double kNorm[] = {0, 25.0 / 12.0, 833.0 / 216.0, 21937.0 / 3888.0};
constexpr double kLambda = 407.0 / 228.0;
constexpr double kTableTol = 5e-5;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

json reproduce_fixtures(double& elapsed)
{
    const auto t0 = std::chrono::steady_clock::now();
    const cli::Result r = cli::run("reproduce-paper --method fixtures");
    elapsed = seconds_since(t0);
    if (r.exit_code != 0) {
        throw std::runtime_error("reproduce-paper exited with " + std::to_string(r.exit_code) + ": " + r.err);
    }
    return json::parse(r.out);
}

double lookup(const json& list, const std::string& kind, unsigned m, unsigned l = 0)
{
    for (const json& r : list) {
        if (r["kind"] == kind && r["m"] == m && (l == 0 ? !r.contains("l") : r.value("l", 0u) == l)) {
            return r["value"].get<double>();
        }
    }
    throw std::runtime_error("no " + kind + " record for m = " + std::to_string(m));
}

Outcome table1()
{
    Outcome o;
    double elapsed = 0;
    const json j = reproduce_fixtures(elapsed);
    const double upper[] = {2.0833, 1.9282, 1.8807};
    const double lower[] = {1.0000, 1.3750, 1.5123};
    const FixtureSource fx;
    for (unsigned m = 1; m <= 3; ++m) {
        const BasicBounds b = bound_basic(fx, m);
        o.require(std::abs(b.upper.value - upper[m - 1]) <= kTableTol, fmt("upper m=%g got %.8f", m, b.upper.value));
        o.require(std::abs(b.lower.value - lower[m - 1]) <= kTableTol, fmt("lower m=%g got %.8f", m, b.lower.value));
        o.require(lookup(j["table1"], "upper_basic", m) == round_sig6(b.upper.value), fmt("tool upper m=%g", m));
        o.require(lookup(j["table1"], "lower_basic", m) == round_sig6(b.lower.value), fmt("tool lower m=%g", m));
    }
    o.require(elapsed < 1.0, fmt("runtime %.3f s", elapsed));
    if (o.pass) {
        o.detail = fmt("upper 2.0833/1.9282/1.8807, lower 1/1.375/1.5123 in %.3f s", elapsed);
    }
    return o;
}

Outcome rowmax_triple()
{
    Outcome o;
    double elapsed = 0;
    const json j = reproduce_fixtures(elapsed);
    const double want[] = {1.5000, 1.6528, 1.6965};
    const FixtureSource fx;
    for (unsigned m = 1; m <= 3; ++m) {
        const double v = bound_rowmax(fx, m).value;
        o.require(std::abs(v - want[m - 1]) <= kTableTol, fmt("m=%g got %.8f", m, v));
        o.require(lookup(j["rowmax"], "lower_rowmax", m) == round_sig6(v), fmt("tool m=%g", m));
    }
    if (o.pass) {
        o.detail = "1.5000, 1.6528, 1.6965";
    }
    return o;
}

Outcome table2()
{
    Outcome o;
    double elapsed = 0;
    const json j = reproduce_fixtures(elapsed);
    const FixtureSource fx;
    const double want[3][3] = {{1.5417, 1.6188, 1.6606}, {1.6111, 1.6516, 1.6784}, {1.6551, 1.6787, 1.6965}};
    for (unsigned l = 1; l <= 3; ++l) {
        for (unsigned m = 1; m <= 3; ++m) {
            const double v = bound_nested(fx, l, m).value;
            const double identity = (kEntry[l] + kNorm[m]) / (l + m);
            o.require(std::abs(v - want[l - 1][m - 1]) <= kTableTol, fmt("(l=%g, m=%g) got %.8f", l, m, v));
            o.require(std::abs(v - identity) <= 1e-12, fmt("(l=%g, m=%g) differs from identity %.8f", l, m, identity));
            o.require(lookup(j["table2"], "lower_nested", m, l) == round_sig6(v), fmt("tool (l=%g, m=%g)", l, m));
        }
    }
    if (o.pass) {
        o.detail = "all nine (l, m) cells";
    }
    return o;
}

Outcome error_constant_check()
{
    Outcome o;
    const FixtureSource fx;
    const double c = error_constant(fx).value;
    o.require(std::abs(c - 13.0 / 12.0) <= 1e-6, fmt("C = %.9f", c));
    for (unsigned m = 1; m <= 3; ++m) {
        const double gap = bound_basic(fx, m).upper.value - kLambda;
        o.require(gap >= 0.0 && gap <= c / m, fmt("m=%g gap %.6f vs C/m %.6f", m, gap, c / m));
    }
    if (o.pass) {
        o.detail = fmt("C = %.9f; 0 <= upper_basic(m) - lambda <= C/m for m = 1..3", c);
    }
    return o;
}

Outcome monte_carlo_statistics()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const MatrixModel model = MatrixModel::paper_test();
    const std::size_t n = 1'000'000;
    double worst_z = 0.0, worst_se = 0.0;
    auto check = [&](const std::string& name, double got, double se, double want) {
        const double z = std::abs(got - want) / se;
        worst_z = std::max(worst_z, z);
        worst_se = std::max(worst_se, se);
        o.require(z <= 4.0, name + fmt(" |z| = %.2f", z));
        o.require(se <= 0.01, name + fmt(" stderr %.4f", se));
    };
    for (unsigned m = 1; m <= 3; ++m) {
        const std::string tag = ":" + std::to_string(m);
        const MeanEstimate entries = mc_mean(model, EntryMeans{m}, n, SeedSpec{2024, {1, m}}, workers());
        for (std::size_t k = 0; k < 4; ++k) {
            check("entry" + tag, entries.value.entries()[k], entries.std_error.entries()[k], kEntry[m]);
        }
        const MeanEstimate rows = mc_mean(model, RowMaxConjMeans{m}, n, SeedSpec{2024, {2, m}}, workers());
        for (std::size_t k = 0; k < 2; ++k) {
            check("rowmax" + tag, -rows.value.entries()[k], rows.std_error.entries()[k], kRowMax[m]);
        }
        const MeanEstimate norms = mc_mean(model, NormMean{m}, n, SeedSpec{2024, {3, m}}, workers());
        check("norm" + tag, norms.scalar(), norms.scalar_error(), kNorm[m]);
    }
    const double elapsed = seconds_since(t0);
    o.require(elapsed < 30.0, fmt("runtime %.1f s", elapsed));
    if (o.pass) {
        o.detail = fmt("max |z| %.2f, max stderr %.4f, %.1f s", worst_z, worst_se, elapsed);
    }
    return o;
}

Outcome lambda_estimation()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const LambdaEstimate est = estimate_lambda(MatrixModel::paper_test(), 200'000, 16, SeedSpec{2024, {0}}, workers());
    const double elapsed = seconds_since(t0);
    o.require(std::abs(est.lambda_hat - 1.7851) <= 0.01, fmt("lambda_hat %.5f", est.lambda_hat));
    o.require(est.lambda_hat >= 1.7851 - 3 * est.std_error,
              fmt("lambda_hat %.5f below 1.7851 - 3*%.5f", est.lambda_hat, est.std_error));
    o.require(elapsed < 60.0, fmt("runtime %.1f s", elapsed));
    if (o.pass) {
        o.detail = fmt("lambda_hat %.5f +- %.5f in %.1f s", est.lambda_hat, est.std_error, elapsed);
    }
    return o;
}

Outcome oracle_equivalence()
{
    Outcome o;
    const MatrixModel model = MatrixModel::uniform_grid(2, Discrete{{{0.0, 0.5}, {1.0, 0.5}}});
    const Matrix v = conjugate(rowmax(exact_mean(model, ConjMeans{1}).value));
    double worst_z = 0.0;
    for (unsigned m = 1; m <= 2; ++m) {
        const std::vector<Functional> fs{EntryMeans{m}, ConjMeans{m}, RowMaxConjMeans{m}, NormMean{m},
                                         VecProductNormMean{v, m}};
        for (std::size_t f = 0; f < fs.size(); ++f) {
            const MeanEstimate exact = exact_mean(model, fs[f]);
            const MeanEstimate mc = mc_mean(model, fs[f], 100'000, SeedSpec{2024, {m, f}}, workers());
            for (std::size_t k = 0; k < exact.value.entries().size(); ++k) {
                const double se = mc.std_error.entries()[k];
                const double diff = std::abs(mc.value.entries()[k] - exact.value.entries()[k]);
                const double z = se > 0 ? diff / se : (diff == 0 ? 0 : INFINITY);
                worst_z = std::max(worst_z, z);
                o.require(z <= 4.0, functional_id(fs[f]) + fmt(" entry %g |z| = %.2f", k, z));
            }
        }
    }
    const Matrix e1 = exact_mean(model, EntryMeans{1}).value;
    const Matrix e2 = exact_mean(model, EntryMeans{2}).value;
    o.require(leq(mat_otimes(e1, e1), e2), "E[A2] >= E[A1] (x) E[A1] fails");
    o.require(exact_mean(model, NormMean{1}).scalar() >= norm(e1), "E|A1| >= |E[A1]| fails");
    if (o.pass) {
        o.detail = fmt("max |z| %.2f over 5 functionals, m = 1, 2; both inequalities hold", worst_z);
    }
    return o;
}

Outcome algebra_properties()
{
    Outcome o;
    const std::size_t cases = 10'000;
    const std::pair<const char*, std::function<std::size_t()>> suites[] = {
        {"semiring laws", [&] { return props::semiring_laws(cases, 101); }},
        {"monotonicity", [&] { return props::monotonicity(cases, 102); }},
        {"row-max inequality", [&] { return props::rowmax_inequality(cases, 103); }},
        {"norm inequalities", [&] { return props::norm_inequalities(cases, 104); }},
        {"conjugate involution", [&] { return props::conjugate_involution(cases, 105); }},
        {"power law", [&] { return props::power_law(cases, 106); }},
        {"spectral radius oracle", [&] { return props::spectral_radius_oracle(1000, 107); }},
    };
    for (const auto& [name, run] : suites) {
        const std::size_t failures = run();
        o.require(failures == 0, std::string(name) + ": " + std::to_string(failures) + " failures");
    }
    if (o.pass) {
        o.detail = "6 laws x 10^4 cases, spectral radius x 10^3 cases, 0 failures";
    }
    return o;
}

Outcome determinism()
{
    Outcome o;
    const std::vector<std::string> commands{
        "bounds --builtin paper-test --method mc --seed 31 --m 3 --samples 20000",
        "bounds --builtin paper-test --method mc --seed 31 --m 2 --samples 20000 --format csv",
        "lambda --builtin paper-test --seed 31 --horizon 5000 --replications 8 --with-bounds --method mc "
        "--m 2 --samples 20000",
        "lambda --builtin paper-test --seed 31 --horizon 5000 --replications 8 --format csv",
        "reproduce-paper --method mc --seed 31 --samples 20000",
        "enumerate-check --model-json " + cli::quote(cli::kBernoulli) + " --seed 31 --m 2 --samples 20000",
    };
    for (const std::string& cmd : commands) {
        const cli::Result first = cli::run(cmd + " --threads 1");
        const cli::Result again = cli::run(cmd + " --threads 1");
        const cli::Result wide = cli::run(cmd + " --threads 8");
        const std::string head = cmd.substr(0, cmd.find(' '));
        o.require(first.exit_code == 0, head + " exited with " + std::to_string(first.exit_code) + ": " + first.err);
        o.require(!first.out.empty() && first.out == again.out && first.out == wide.out,
                  head + " output differs between runs");
    }
    if (o.pass) {
        o.detail = std::to_string(commands.size()) + " commands byte-identical at --threads 1, 1, 8";
    }
    return o;
}

}  // namespace

int main()
{
    const std::pair<const char*, Outcome (*)()> criteria[] = {
        {"basic bounds (fixtures)", table1},
        {"row-max lower bounds (fixtures)", rowmax_triple},
        {"nested lower bounds (fixtures)", table2},
        {"error constant and error bound", error_constant_check},
        {"Monte Carlo expectation statistics", monte_carlo_statistics},
        {"growth-rate estimation", lambda_estimation},
        {"exact vs Monte Carlo oracle equivalence", oracle_equivalence},
        {"algebra property suite", algebra_properties},
        {"determinism across runs and thread counts", determinism},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %d %s: %s (%s)\n", index, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
