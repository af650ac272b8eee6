#include "maxplus/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace maxplus {

namespace {

void require_order(unsigned m, const char* name)
{
    if (m == 0) {
        throw std::invalid_argument(std::string(name) + " must be >= 1");
    }
}

void require_finite(const MeanEstimate& est, const Functional& f)
{
    if (!est.value.all_finite()) {
        throw PreconditionError("expectation " + functional_id(f) +
                                " is not finite; the bound needs entries finite w.p. 1");
    }
}

/// Monte Carlo taints everything it touches; exact beats fixture.
EstimateMethod combine(EstimateMethod a, EstimateMethod b)
{
    auto rank = [](EstimateMethod x) {
        switch (x) {
        case EstimateMethod::monte_carlo:
            return 2;
        case EstimateMethod::exact_enumeration:
            return 1;
        case EstimateMethod::fixture_constant:
            return 0;
        }
        return 0;
    };
    return rank(a) >= rank(b) ? a : b;
}

/// Standard error of the entry at which ‖value‖ is attained.
double argmax_error(const MeanEstimate& est)
{
    const auto values = est.value.entries();
    const auto errors = est.std_error.entries();
    const auto it = std::max_element(values.begin(), values.end());
    return errors[static_cast<std::size_t>(it - values.begin())];
}

double max_error(const MeanEstimate& est)
{
    const auto errors = est.std_error.entries();
    return *std::max_element(errors.begin(), errors.end());
}

}  // namespace

std::string to_string(BoundKind kind)
{
    switch (kind) {
    case BoundKind::lower_basic:
        return "lower_basic";
    case BoundKind::upper_basic:
        return "upper_basic";
    case BoundKind::lower_rowmax:
        return "lower_rowmax";
    case BoundKind::lower_nested:
        return "lower_nested";
    case BoundKind::lower_corollary:
        return "lower_corollary";
    case BoundKind::error_bound:
        return "error_bound";
    }
    return "unknown";
}

BoundKind bound_kind_from_string(const std::string& name)
{
    for (BoundKind k : {BoundKind::lower_basic, BoundKind::upper_basic, BoundKind::lower_rowmax,
                        BoundKind::lower_nested, BoundKind::lower_corollary, BoundKind::error_bound}) {
        if (to_string(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown bound kind '" + name + "'");
}

bool is_lower(BoundKind kind) noexcept
{
    return kind == BoundKind::lower_basic || kind == BoundKind::lower_rowmax || kind == BoundKind::lower_nested ||
           kind == BoundKind::lower_corollary;
}

bool is_upper(BoundKind kind) noexcept { return kind == BoundKind::upper_basic; }

BasicBounds bound_basic(const ExpectationSource& source, unsigned m)
{
    require_order(m, "m");
    const double order = m;

    const Functional entries_f = EntryMeans{m};
    const MeanEstimate entries = source.mean(entries_f);
    const Functional norm_f = NormMean{m};
    const MeanEstimate norm_est = source.mean(norm_f);
    require_finite(norm_est, norm_f);

    BoundReport lower;
    lower.kind = BoundKind::lower_basic;
    lower.m = m;
    lower.method = entries.method;
    lower.inputs = {functional_id(entries_f)};
    const double rho = spectral_radius(entries.value);
    if (is_eps(rho)) {
        lower.unbounded = true;
        lower.value = eps;
    } else {
        lower.value = rho / order;
        // A cycle mean averages entries of E[A_m], so its error is at most
        // the largest entry error.
        lower.std_error = max_error(entries) / order;
    }

    BoundReport upper;
    upper.kind = BoundKind::upper_basic;
    upper.m = m;
    upper.value = norm_est.scalar() / order;
    upper.std_error = norm_est.scalar_error() / order;
    upper.method = norm_est.method;
    upper.inputs = {functional_id(norm_f)};
    return {std::move(lower), std::move(upper)};
}

BoundReport bound_rowmax(const ExpectationSource& source, unsigned m)
{
    require_order(m, "m");
    const Functional f = RowMaxConjMeans{m};
    const MeanEstimate est = source.mean(f);
    require_finite(est, f);

    BoundReport r;
    r.kind = BoundKind::lower_rowmax;
    r.m = m;
    r.value = -norm(est.value) / m;
    r.std_error = argmax_error(est) / m;
    r.method = est.method;
    r.inputs = {functional_id(f)};
    return r;
}

BoundReport bound_nested(const ExpectationSource& source, unsigned l, unsigned m)
{
    require_order(l, "l");
    require_order(m, "m");
    const Functional inner_f = ConjMeans{l};
    const MeanEstimate inner = source.mean(inner_f, 1);
    require_finite(inner, inner_f);

    const Matrix v = conjugate(rowmax(inner.value));
    const Functional outer_f = VecProductNormMean{v, m};
    const MeanEstimate outer = source.mean(outer_f, 2);
    require_finite(outer, outer_f);

    const double order = l + m;
    BoundReport r;
    r.kind = BoundKind::lower_nested;
    r.l = l;
    r.m = m;
    r.value = outer.scalar() / order;
    r.std_error = outer.scalar_error() / order;
    r.method = combine(inner.method, outer.method);
    r.inputs = {functional_id(inner_f), functional_id(outer_f)};
    if (inner.method == EstimateMethod::monte_carlo) {
        r.note = "inner mean estimated and frozen; its error is not in stderr";
    }
    return r;
}

BoundReport bound_corollary(const ExpectationSource& source, unsigned m)
{
    require_order(m, "m");
    const Functional conj_f = ConjMeans{1};
    const MeanEstimate conj = source.mean(conj_f);
    require_finite(conj, conj_f);

    BoundReport r;
    r.kind = BoundKind::lower_corollary;
    r.m = m;
    r.method = conj.method;
    r.inputs = {functional_id(conj_f)};

    double tail = 0.0;  // E‖A_0‖ = ‖E‖ = 0
    double tail_error = 0.0;
    if (m > 1) {
        const Functional norm_f = NormMean{m - 1};
        const MeanEstimate norm_est = source.mean(norm_f, 1);
        require_finite(norm_est, norm_f);
        tail = norm_est.scalar();
        tail_error = norm_est.scalar_error();
        r.method = combine(r.method, norm_est.method);
        r.inputs.push_back(functional_id(norm_f));
    }
    const double head_error = argmax_error(conj);
    r.value = (-norm(conj.value) + tail) / m;
    r.std_error = std::hypot(head_error, tail_error) / m;
    return r;
}

ScalarEstimate error_constant(const ExpectationSource& source)
{
    const Functional norm_f = NormMean{1};
    const MeanEstimate norm_est = source.mean(norm_f);
    require_finite(norm_est, norm_f);
    const Functional conj_f = ConjMeans{1};
    const MeanEstimate conj = source.mean(conj_f, 1);
    require_finite(conj, conj_f);
    return {norm_est.scalar() + norm(conj.value), std::hypot(norm_est.scalar_error(), argmax_error(conj)),
            combine(norm_est.method, conj.method)};
}

BoundReport error_bound(const ExpectationSource& source, unsigned m)
{
    require_order(m, "m");
    const ScalarEstimate c = error_constant(source);
    BoundReport r;
    r.kind = BoundKind::error_bound;
    r.m = m;
    r.value = c.value / m;
    r.std_error = c.std_error / m;
    r.method = c.method;
    r.inputs = {functional_id(NormMean{1}), functional_id(ConjMeans{1})};
    return r;
}

BestBounds best_bounds(const std::vector<BoundReport>& reports)
{
    if (reports.empty()) {
        throw std::invalid_argument("best_bounds needs at least one report");
    }
    BestBounds best;
    for (const BoundReport& r : reports) {
        if (is_lower(r.kind) && !r.unbounded) {
            if (!best.lower || r.value > best.lower->value) {
                best.lower = r;
            }
        } else if (is_upper(r.kind)) {
            if (!best.upper || r.value < best.upper->value) {
                best.upper = r;
            }
        }
    }
    return best;
}

}  // namespace maxplus
