#include "maxplus/expectation.hpp"

#include <cmath>
#include <limits>

#include "maxplus/parallel.hpp"
#include "maxplus/stats.hpp"

namespace maxplus {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct Shape {
    std::size_t rows;
    std::size_t cols;
};

Shape result_shape(const Functional& f, std::size_t n)
{
    return std::visit(overloaded{
                          [n](const EntryMeans&) { return Shape{n, n}; },
                          [n](const ConjMeans&) { return Shape{n, n}; },
                          [n](const RowMaxConjMeans&) { return Shape{1, n}; },
                          [](const NormMean&) { return Shape{1, 1}; },
                          [](const VecProductNormMean&) { return Shape{1, 1}; },
                      },
                      f);
}

struct ChunkResult {
    std::vector<RunningStats> entries;
    RunningStats norms;
};

}  // namespace

unsigned chain_length(const Functional& f)
{
    return std::visit([](const auto& g) { return g.m; }, f);
}

std::string functional_id(const Functional& f)
{
    const std::string m = std::to_string(chain_length(f));
    return std::visit(overloaded{
                          [&](const EntryMeans&) { return "entry_means:" + m; },
                          [&](const ConjMeans&) { return "conj_means:" + m; },
                          [&](const RowMaxConjMeans&) { return "rowmax_conj_means:" + m; },
                          [&](const NormMean&) { return "norm_mean:" + m; },
                          [&](const VecProductNormMean& g) {
                              return "vec_product_norm_mean:" + m + "[" + to_literal(g.v) + "]";
                          },
                      },
                      f);
}

bool is_scalar_functional(const Functional& f)
{
    return std::holds_alternative<NormMean>(f) || std::holds_alternative<VecProductNormMean>(f);
}

void evaluate_into(const Functional& f, const Matrix& chain, std::span<double> out)
{
    const std::size_t n = chain.rows();
    std::visit(overloaded{
                   [&](const EntryMeans&) { std::copy(chain.entries().begin(), chain.entries().end(), out.begin()); },
                   [&](const ConjMeans&) {
                       for (std::size_t i = 0; i < n; ++i) {
                           for (std::size_t j = 0; j < n; ++j) {
                               out[i * n + j] = sinv(chain(j, i));
                           }
                       }
                   },
                   [&](const RowMaxConjMeans&) {
                       for (std::size_t i = 0; i < n; ++i) {
                           double best = eps;
                           for (std::size_t j = 0; j < n; ++j) {
                               best = oplus(best, chain(i, j));
                           }
                           out[i] = sinv(best);
                       }
                   },
                   [&](const NormMean&) { out[0] = norm(chain); },
                   [&](const VecProductNormMean& g) {
                       // ‖v ⊗ A‖ = max_{i,j} (v_i + a_ij)
                       double best = eps;
                       for (std::size_t i = 0; i < n; ++i) {
                           for (std::size_t j = 0; j < n; ++j) {
                               best = oplus(best, otimes(g.v(0, i), chain(i, j)));
                           }
                       }
                       out[0] = best;
                   },
               },
               f);
}

Matrix evaluate(const Functional& f, const Matrix& chain)
{
    const Shape shape = result_shape(f, chain.rows());
    Matrix out(shape.rows, shape.cols, eps);
    evaluate_into(f, chain, out.entries());
    return out;
}

void validate(const Functional& f, std::size_t n)
{
    if (chain_length(f) == 0) {
        throw std::invalid_argument("functional chain length m must be >= 1");
    }
    if (const auto* g = std::get_if<VecProductNormMean>(&f)) {
        if (g->v.rows() != 1 || g->v.cols() != n) {
            throw DimensionError("vec_product_norm_mean: v must be 1 x n");
        }
        if (!g->v.all_finite()) {
            throw std::invalid_argument("vec_product_norm_mean: v must have finite entries");
        }
    }
}

std::string to_string(EstimateMethod method)
{
    switch (method) {
    case EstimateMethod::monte_carlo:
        return "monte_carlo";
    case EstimateMethod::exact_enumeration:
        return "exact_enumeration";
    case EstimateMethod::fixture_constant:
        return "fixture_constant";
    }
    return "unknown";
}

EstimateMethod method_from_string(const std::string& name)
{
    if (name == "monte_carlo") {
        return EstimateMethod::monte_carlo;
    }
    if (name == "exact_enumeration") {
        return EstimateMethod::exact_enumeration;
    }
    if (name == "fixture_constant") {
        return EstimateMethod::fixture_constant;
    }
    throw std::invalid_argument("unknown estimate method '" + name + "'");
}

BudgetExceededError::BudgetExceededError(std::uint64_t outcomes, std::uint64_t cap)
    : std::runtime_error("exact enumeration needs " +
                         (outcomes == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                                : std::to_string(outcomes)) +
                         " joint outcomes, cap is " + std::to_string(cap)),
      outcomes_(outcomes)
{
}

MeanEstimate mc_mean(const MatrixModel& model, const Functional& f, std::size_t n_samples, const SeedSpec& stream,
                     unsigned threads)
{
    validate(f, model.n());
    if (n_samples < 2) {
        throw std::invalid_argument("mc_mean needs at least 2 samples");
    }
    const Shape shape = result_shape(f, model.n());
    const std::size_t cells = shape.rows * shape.cols;
    const unsigned m = chain_length(f);
    const bool track_norm = !is_scalar_functional(f);

    const std::size_t chunks = (n_samples + kReductionChunk - 1) / kReductionChunk;
    std::vector<ChunkResult> partial(chunks);
    parallel_for(chunks, threads, [&](std::size_t c) {
        ChunkResult& out = partial[c];
        out.entries.assign(cells, RunningStats{});
        const std::size_t begin = c * kReductionChunk;
        const std::size_t end = std::min(n_samples, begin + kReductionChunk);
        ChainSampler sampler(model, m);
        std::vector<double> values(cells);
        for (std::size_t i = begin; i < end; ++i) {
            Stream rng(stream, i);
            evaluate_into(f, sampler.draw(rng), values);
            double sample_norm = eps;
            for (std::size_t k = 0; k < cells; ++k) {
                out.entries[k].add(values[k]);
                sample_norm = oplus(sample_norm, values[k]);
            }
            if (track_norm) {
                out.norms.add(sample_norm);
            }
        }
    });

    ChunkResult total;
    total.entries.assign(cells, RunningStats{});
    for (const ChunkResult& part : partial) {
        for (std::size_t k = 0; k < cells; ++k) {
            total.entries[k].merge(part.entries[k]);
        }
        total.norms.merge(part.norms);
    }

    MeanEstimate est{Matrix(shape.rows, shape.cols, 0.0), Matrix(shape.rows, shape.cols, 0.0), n_samples,
                     EstimateMethod::monte_carlo, std::nullopt};
    for (std::size_t k = 0; k < cells; ++k) {
        est.value.entries()[k] = total.entries[k].mean;
        est.std_error.entries()[k] = total.entries[k].stderr_of_mean();
    }
    if (track_norm) {
        est.sample_norm_mean = total.norms.mean;
        // The average of maxima dominates the maximum of averages for every
        // sample set; only rounding can make the two sides differ.
        const double mean_norm = norm(est.value);
        const double slack = 1e-12 * (1.0 + std::abs(mean_norm));
        if (*est.sample_norm_mean < mean_norm - slack) {
            throw std::logic_error("mc_mean: mean of norms fell below norm of means");
        }
    }
    return est;
}

std::uint64_t enumeration_size(const MatrixModel& model, unsigned m)
{
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 1;
    for (unsigned step = 0; step < m; ++step) {
        for (const auto& d : model.entries()) {
            const std::uint64_t s = support_size(d);
            if (total > kMax / s) {
                return kMax;
            }
            total *= s;
        }
    }
    return total;
}

MeanEstimate exact_mean(const MatrixModel& model, const Functional& f, std::uint64_t cap)
{
    validate(f, model.n());
    if (!model.is_enumerable()) {
        throw UnsupportedModelError("exact enumeration needs discrete or constant entry distributions");
    }
    const unsigned m = chain_length(f);
    const std::uint64_t outcomes = enumeration_size(model, m);
    if (outcomes > cap) {
        throw BudgetExceededError(outcomes, cap);
    }

    const std::size_t n = model.n();
    const std::size_t per_matrix = n * n;
    const std::size_t draws = per_matrix * m;
    std::vector<std::vector<Atom>> supports;
    supports.reserve(per_matrix);
    for (const auto& d : model.entries()) {
        supports.push_back(support(d));
    }

    const Shape shape = result_shape(f, n);
    Matrix acc(shape.rows, shape.cols, 0.0);
    std::vector<std::size_t> index(draws, 0);
    std::vector<Matrix> factors(m, Matrix(n, n, 0.0));

    for (std::uint64_t outcome = 0; outcome < outcomes; ++outcome) {
        double weight = 1.0;
        for (std::size_t d = 0; d < draws; ++d) {
            const Atom& a = supports[d % per_matrix][index[d]];
            weight *= a.prob;
            factors[d / per_matrix].entries()[d % per_matrix] = a.value;
        }
        Matrix chain = factors[0];
        for (unsigned k = 1; k < m; ++k) {
            chain = mat_otimes(chain, factors[k]);
        }
        const Matrix x = evaluate(f, chain);
        for (std::size_t k = 0; k < x.entries().size(); ++k) {
            acc.entries()[k] += weight * x.entries()[k];
        }
        // odometer, last draw fastest
        for (std::size_t d = draws; d-- > 0;) {
            if (++index[d] < supports[d % per_matrix].size()) {
                break;
            }
            index[d] = 0;
        }
    }
    return MeanEstimate{std::move(acc), Matrix(shape.rows, shape.cols, 0.0), 0, EstimateMethod::exact_enumeration,
                        std::nullopt};
}

MonteCarloSource::MonteCarloSource(MatrixModel model, std::size_t n_samples, SeedSpec seed, unsigned threads)
    : model_(std::move(model)), n_samples_(n_samples), seed_(std::move(seed)), threads_(threads)
{
    if (n_samples_ < 2) {
        throw std::invalid_argument("Monte Carlo needs at least 2 samples");
    }
}

MeanEstimate MonteCarloSource::mean(const Functional& f, std::uint64_t phase) const
{
    return mc_mean(model_, f, n_samples_, seed_.child({phase, chain_length(f)}), threads_);
}

ExactSource::ExactSource(MatrixModel model, std::uint64_t cap) : model_(std::move(model)), cap_(cap)
{
    if (!model_.is_enumerable()) {
        throw UnsupportedModelError("exact enumeration needs discrete or constant entry distributions");
    }
}

MeanEstimate ExactSource::mean(const Functional& f, std::uint64_t) const { return exact_mean(model_, f, cap_); }

double FixtureSource::entry_mean(unsigned m)
{
    switch (m) {
    case 1:
        return 1.0;
    case 2:
        return 2.75;
    case 3:
        return 245.0 / 54.0;
    default:
        throw UnsupportedModelError("fixture constants exist only for m = 1, 2, 3");
    }
}

double FixtureSource::row_max_mean(unsigned m)
{
    switch (m) {
    case 1:
        return 1.5;
    case 2:
        return 119.0 / 36.0;
    case 3:
        return 1649.0 / 324.0;
    default:
        throw UnsupportedModelError("fixture constants exist only for m = 1, 2, 3");
    }
}

double FixtureSource::norm_mean(unsigned m)
{
    switch (m) {
    case 1:
        return 25.0 / 12.0;
    case 2:
        return 833.0 / 216.0;
    case 3:
        return 21937.0 / 3888.0;
    default:
        throw UnsupportedModelError("fixture constants exist only for m = 1, 2, 3");
    }
}

MeanEstimate FixtureSource::mean(const Functional& f, std::uint64_t) const
{
    validate(f, 2);
    const unsigned m = chain_length(f);
    Matrix value = std::visit(
        overloaded{
            [m](const EntryMeans&) { return Matrix(2, 2, entry_mean(m)); },
            // Every entry has the same mean, so transposition changes nothing.
            [m](const ConjMeans&) { return Matrix(2, 2, -entry_mean(m)); },
            [m](const RowMaxConjMeans&) { return Matrix(1, 2, -row_max_mean(m)); },
            [m](const NormMean&) { return Matrix(1, 1, norm_mean(m)); },
            [m](const VecProductNormMean& g) {
                // ‖c·𝟘ᵀ ⊗ A‖ = c + ‖A‖; other rows have no closed form here.
                const double c = g.v(0, 0);
                for (double x : g.v.entries()) {
                    if (x != c) {
                        throw UnsupportedModelError("fixture constants cover only constant inner vectors");
                    }
                }
                return Matrix(1, 1, c + norm_mean(m));
            },
        },
        f);
    const std::size_t rows = value.rows();
    const std::size_t cols = value.cols();
    return MeanEstimate{std::move(value), Matrix(rows, cols, 0.0), 0, EstimateMethod::fixture_constant,
                        std::nullopt};
}

}  // namespace maxplus
