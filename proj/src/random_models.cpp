#include "maxplus/random_models.hpp"

#include <cmath>

namespace maxplus {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t kPathSalt = 0x6a09e667f3bcc909ULL;

std::uint64_t absorb(std::uint64_t state, std::uint64_t v) noexcept
{
    return splitmix64(state ^ splitmix64(v));
}

std::uint64_t absorb_path(const std::vector<std::uint64_t>& path) noexcept
{
    std::uint64_t state = kPathSalt;
    for (std::uint64_t v : path) {
        state = absorb(state, v);
    }
    return state;
}

// Mixing in the length keeps (1) and (1, 0) on different streams.
std::uint64_t finish_path(std::uint64_t state, std::size_t length) noexcept
{
    return splitmix64(state ^ (0x9e3779b97f4a7c15ULL * (length + 1)));
}

constexpr double kProbTolerance = 1e-12;

}  // namespace

void validate(const DistributionSpec& dist)
{
    std::visit(overloaded{
                   [](const Exponential& d) {
                       if (!(d.mean > 0.0) || !std::isfinite(d.mean)) {
                           throw ModelError("exponential mean must be positive and finite");
                       }
                   },
                   [](const Uniform& d) {
                       if (!std::isfinite(d.lo) || !std::isfinite(d.hi) || !(d.lo < d.hi)) {
                           throw ModelError("uniform bounds must be finite with lo < hi");
                       }
                   },
                   [](const Discrete& d) {
                       if (d.atoms.empty()) {
                           throw ModelError("discrete distribution needs at least one atom");
                       }
                       double total = 0.0;
                       for (const Atom& a : d.atoms) {
                           if (is_eps(a.value)) {
                               throw ModelError("atoms at eps are not supported; models must be finite w.p. 1");
                           }
                           if (!std::isfinite(a.value)) {
                               throw ModelError("discrete atom value must be finite");
                           }
                           if (!(a.prob > 0.0)) {
                               throw ModelError("discrete atom probability must be positive");
                           }
                           total += a.prob;
                       }
                       if (std::abs(total - 1.0) > kProbTolerance) {
                           throw ModelError("discrete probabilities must sum to 1");
                       }
                   },
                   [](const Constant& d) {
                       if (is_eps(d.value)) {
                           throw ModelError("constant eps entries are not supported; models must be finite w.p. 1");
                       }
                       if (!std::isfinite(d.value)) {
                           throw ModelError("constant value must be finite");
                       }
                   },
               },
               dist);
}

double dist_mean(const DistributionSpec& dist)
{
    return std::visit(overloaded{
                          [](const Exponential& d) { return d.mean; },
                          [](const Uniform& d) { return 0.5 * (d.lo + d.hi); },
                          [](const Discrete& d) {
                              double m = 0.0;
                              for (const Atom& a : d.atoms) {
                                  m += a.prob * a.value;
                              }
                              return m;
                          },
                          [](const Constant& d) { return d.value; },
                      },
                      dist);
}

double dist_variance(const DistributionSpec& dist)
{
    return std::visit(overloaded{
                          [](const Exponential& d) { return d.mean * d.mean; },
                          [](const Uniform& d) { return (d.hi - d.lo) * (d.hi - d.lo) / 12.0; },
                          [](const Discrete& d) {
                              double m = 0.0;
                              for (const Atom& a : d.atoms) {
                                  m += a.prob * a.value;
                              }
                              double v = 0.0;
                              for (const Atom& a : d.atoms) {
                                  v += a.prob * (a.value - m) * (a.value - m);
                              }
                              return v;
                          },
                          [](const Constant&) { return 0.0; },
                      },
                      dist);
}

bool is_enumerable(const DistributionSpec& dist)
{
    return std::holds_alternative<Discrete>(dist) || std::holds_alternative<Constant>(dist);
}

std::size_t support_size(const DistributionSpec& dist)
{
    if (const auto* d = std::get_if<Discrete>(&dist)) {
        return d->atoms.size();
    }
    return 1;
}

std::vector<Atom> support(const DistributionSpec& dist)
{
    if (const auto* d = std::get_if<Discrete>(&dist)) {
        return d->atoms;
    }
    if (const auto* c = std::get_if<Constant>(&dist)) {
        return {Atom{c->value, 1.0}};
    }
    throw ModelError("distribution '" + dist_name(dist) + "' has no finite support");
}

std::string dist_name(const DistributionSpec& dist)
{
    return std::visit(overloaded{
                          [](const Exponential&) { return std::string("exponential"); },
                          [](const Uniform&) { return std::string("uniform"); },
                          [](const Discrete&) { return std::string("discrete"); },
                          [](const Constant&) { return std::string("constant"); },
                      },
                      dist);
}

MatrixModel::MatrixModel(std::size_t n, std::vector<DistributionSpec> entries)
    : n_(n), entries_(std::move(entries))
{
    if (n_ == 0) {
        throw ModelError("model dimension must be positive");
    }
    if (entries_.size() != n_ * n_) {
        throw ModelError("model needs exactly n*n entry distributions");
    }
    for (const auto& d : entries_) {
        validate(d);
    }
}

MatrixModel MatrixModel::uniform_grid(std::size_t n, DistributionSpec dist)
{
    return MatrixModel(n, std::vector<DistributionSpec>(n * n, dist));
}

MatrixModel MatrixModel::paper_test() { return uniform_grid(2, Exponential{1.0}); }

bool MatrixModel::is_enumerable() const
{
    for (const auto& d : entries_) {
        if (!maxplus::is_enumerable(d)) {
            return false;
        }
    }
    return true;
}

Matrix MatrixModel::mean_matrix() const
{
    Matrix m(n_, n_, 0.0);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        m.entries()[k] = dist_mean(entries_[k]);
    }
    return m;
}

SeedSpec SeedSpec::child(std::uint64_t index) const
{
    SeedSpec s = *this;
    s.path.push_back(index);
    return s;
}

SeedSpec SeedSpec::child(std::initializer_list<std::uint64_t> indices) const
{
    SeedSpec s = *this;
    s.path.insert(s.path.end(), indices.begin(), indices.end());
    return s;
}

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept
{
    constexpr std::uint64_t kMul0 = 0xD2511F53;
    constexpr std::uint64_t kMul1 = 0xCD9E8D57;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = kMul0 * ctr[0];
        const std::uint64_t p1 = kMul1 * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

Stream::Stream(const SeedSpec& spec)
    : key_{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32)},
      path_hash_(finish_path(absorb_path(spec.path), spec.path.size()))
{
}

Stream::Stream(const SeedSpec& base, std::uint64_t index)
    : key_{static_cast<std::uint32_t>(base.seed), static_cast<std::uint32_t>(base.seed >> 32)},
      path_hash_(finish_path(absorb(absorb_path(base.path), index), base.path.size() + 1))
{
}

void Stream::refill()
{
    buffer_ = philox4x32({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                          static_cast<std::uint32_t>(path_hash_), static_cast<std::uint32_t>(path_hash_ >> 32)},
                         key_);
    ++block_;
    used_ = 0;
}

std::uint64_t Stream::next_u64()
{
    if (used_ >= 4) {
        refill();
    }
    const std::uint64_t v = (static_cast<std::uint64_t>(buffer_[used_]) << 32) | buffer_[used_ + 1];
    used_ += 2;
    return v;
}

double Stream::uniform()
{
    // Centre of one of 2^53 equal cells, so 0 and 1 are never returned.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double sample(const DistributionSpec& dist, Stream& stream)
{
    return std::visit(overloaded{
                          [&](const Exponential& d) { return -d.mean * std::log1p(-stream.uniform()); },
                          [&](const Uniform& d) { return d.lo + (d.hi - d.lo) * stream.uniform(); },
                          [&](const Discrete& d) {
                              const double u = stream.uniform();
                              double cumulative = 0.0;
                              for (const Atom& a : d.atoms) {
                                  cumulative += a.prob;
                                  if (u < cumulative) {
                                      return a.value;
                                  }
                              }
                              return d.atoms.back().value;
                          },
                          [](const Constant& d) { return d.value; },
                      },
                      dist);
}

void sample_matrix_into(const MatrixModel& model, Stream& stream, Matrix& out)
{
    const std::size_t n = model.n();
    if (out.rows() != n || out.cols() != n) {
        out = Matrix(n, n, 0.0);
    }
    auto entries = out.entries();
    for (std::size_t k = 0; k < entries.size(); ++k) {
        entries[k] = sample(model.entries()[k], stream);
    }
}

Matrix sample_matrix(const MatrixModel& model, Stream& stream)
{
    Matrix out(model.n(), model.n(), 0.0);
    sample_matrix_into(model, stream, out);
    return out;
}

Matrix sample_matrix(const MatrixModel& model, const SeedSpec& spec)
{
    Stream stream(spec);
    return sample_matrix(model, stream);
}

ChainSampler::ChainSampler(const MatrixModel& model, unsigned m)
    : model_(&model), m_(m), product_(model.n(), model.n(), 0.0), factor_(model.n(), model.n(), 0.0),
      scratch_(model.n(), model.n(), 0.0)
{
    if (m == 0) {
        throw std::invalid_argument("chain length m must be >= 1");
    }
}

const Matrix& ChainSampler::draw(Stream& stream)
{
    sample_matrix_into(*model_, stream, product_);
    for (unsigned k = 1; k < m_; ++k) {
        sample_matrix_into(*model_, stream, factor_);
        mat_otimes_into(product_, factor_, scratch_);
        std::swap(product_, scratch_);
    }
    return product_;
}

Matrix sample_chain(const MatrixModel& model, unsigned m, Stream& stream)
{
    ChainSampler sampler(model, m);
    return sampler.draw(stream);
}

Matrix sample_chain(const MatrixModel& model, unsigned m, const SeedSpec& spec)
{
    Stream stream(spec);
    return sample_chain(model, m, stream);
}

}  // namespace maxplus
