#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"

namespace border3 {

enum class FailureKind { none, negative_epsilon_power, eps0_slice_mismatch, low_degree_garbage };

inline std::string to_string(FailureKind k)
{
    switch (k) {
    case FailureKind::none: return "none";
    case FailureKind::negative_epsilon_power: return "negative-epsilon-power";
    case FailureKind::eps0_slice_mismatch: return "eps0-slice-mismatch";
    case FailureKind::low_degree_garbage: return "low-degree-garbage";
    }
    return "none";
}

enum class VerifyMethod { truncated, full, random };

inline std::string to_string(VerifyMethod m)
{
    switch (m) {
    case VerifyMethod::truncated: return "exact-truncated";
    case VerifyMethod::full: return "exact-full";
    case VerifyMethod::random: return "random";
    }
    return "exact-truncated";
}

/// Outcome of checking C == P + eps*Q with every monomial of Q of x-degree > d.
struct BorderReport {
    bool pass = true;
    FailureKind failure_kind = FailureKind::none;
    VerifyMethod method = VerifyMethod::truncated;
    unsigned degree = 0;
    CircuitParams params;
    /// False when the verdict only covers x-degrees <= d and the circuit is not epsilon-graded.
    bool truncation_complete = true;

    // Exact witness: the offending monomial and the circuit's coefficient there.
    std::optional<Exponent> witness_monomial;
    LaurentScalar witness_coeff;

    // Random witness: the point, the circuit value there and P's value there.
    std::optional<std::vector<Rational>> witness_point;
    LaurentScalar witness_value;
    LaurentScalar witness_target;

    // Random-mode bookkeeping.
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    long range = 0;
    double error_bound = 0.0;
};

struct VerifyOptions {
    /// Always expand fully instead of truncating at degree d.
    bool full_expand = false;
    /// Non-graded circuits are expanded fully when the estimated size stays under this many monomials.
    double auto_full_limit = 50000.0;
};

namespace detail {

inline void require_target(const SparsePoly& p, std::size_t num_vars, unsigned d)
{
    if (p.num_vars() != num_vars) {
        throw std::invalid_argument("target polynomial and circuit disagree on the number of variables");
    }
    if (!p.is_homogeneous(d) || !p.is_epsilon_free()) {
        throw std::invalid_argument("target polynomial must be homogeneous of degree d and epsilon-free");
    }
}

/// Upper bound on the monomial count of a full expansion (sum over gates of C(n + deg, n)).
inline double full_expansion_size(const Depth3Circuit& c)
{
    double total = 0.0;
    for (const auto& s : c.summands) {
        unsigned deg = s.gate.formal_degree();
        double count = 1.0;
        for (std::size_t i = 1; i <= c.num_vars; ++i) {
            count = count * static_cast<double>(deg + i) / static_cast<double>(i);
        }
        total += count;
    }
    return total;
}

inline void fail_with_monomial(BorderReport& r, FailureKind kind, const Exponent& e, const LaurentScalar& coeff)
{
    r.pass = false;
    r.failure_kind = kind;
    r.witness_monomial = e;
    r.witness_coeff = coeff;
}

} // namespace detail

/// Exact border check by (truncated or full) expansion.
///
/// Truncation at x-degree d decides the full condition for epsilon-graded circuits, where every
/// term's eps-degree is its x-degree minus d. Other circuits are expanded fully when small enough;
/// otherwise the report carries truncation_complete = false.
inline BorderReport verify_border(const Depth3Circuit& c, const SparsePoly& p, unsigned d,
                                  const VerifyOptions& options = {})
{
    detail::require_target(p, c.num_vars, d);
    BorderReport report;
    report.degree = d;
    report.params = circuit_params(c);
    const bool graded = is_epsilon_graded(c, d);
    const bool full = options.full_expand || (!graded && detail::full_expansion_size(c) <= options.auto_full_limit);
    report.method = full ? VerifyMethod::full : VerifyMethod::truncated;
    report.truncation_complete = full || graded;

    const SparsePoly e = full ? expand(c) : expand(c, d);

    for (const auto& [mono, coeff] : e.terms()) {
        if (coeff.ord() < 0) {
            detail::fail_with_monomial(report, FailureKind::negative_epsilon_power, mono, coeff);
            return report;
        }
    }
    SparsePoly mismatch = epsilon_slice(e, 0) - p;
    if (!mismatch.is_zero()) {
        const Exponent& mono = mismatch.terms().begin()->first;
        detail::fail_with_monomial(report, FailureKind::eps0_slice_mismatch, mono, e.coefficient(mono));
        return report;
    }
    for (const auto& [mono, coeff] : e.terms()) {
        if (total_degree(mono) > d) {
            break;
        }
        if (coeff.max_power() > 0) {
            detail::fail_with_monomial(report, FailureKind::low_degree_garbage, mono, coeff);
            return report;
        }
    }
    return report;
}

namespace detail {

/// Power series in t truncated after t^bound, coefficients LaurentScalar.
using Series = std::vector<LaurentScalar>;

inline Series series_mul(const Series& a, const Series& b, std::size_t bound)
{
    Series r(bound + 1);
    for (std::size_t i = 0; i < a.size() && i <= bound; ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.size() && i + j <= bound; ++j) {
            if (!b[j].is_zero()) {
                r[i + j] += a[i] * b[j];
            }
        }
    }
    return r;
}

/// C(t * point) modulo t^(bound+1).
inline Series line_series(const Depth3Circuit& c, std::span<const LaurentScalar> point, std::size_t bound)
{
    auto affine_series = [&](const AffineForm& f) {
        Series s(bound + 1);
        s[0] = f.constant;
        if (bound >= 1) {
            LaurentScalar slope;
            for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
                if (!f.coeffs[i].is_zero()) {
                    slope += f.coeffs[i] * point[i];
                }
            }
            s[1] = slope;
        }
        return s;
    };
    Series total(bound + 1);
    for (const auto& sm : c.summands) {
        Series acc(bound + 1);
        acc[0] = sm.coeff;
        for (const auto& f : sm.gate.factors) {
            acc = series_mul(acc, affine_series(f), bound);
        }
        for (const auto& cf : sm.gate.composed) {
            Series base = affine_series(cf.base);
            Series arg(bound + 1);
            arg[0] = LaurentScalar(1);
            for (unsigned k = 0; k < cf.power; ++k) {
                arg = series_mul(arg, base, bound);
            }
            Series u(bound + 1);
            for (std::size_t i = cf.u.coeffs.size(); i-- > 0;) {
                u = series_mul(u, arg, bound);
                u[0] += cf.u.coeffs[i];
            }
            acc = series_mul(acc, u, bound);
        }
        for (std::size_t k = 0; k <= bound; ++k) {
            total[k] += acc[k];
        }
    }
    return total;
}

inline bool has_negative(const LaurentScalar& v) { return !v.is_zero() && v.ord() < 0; }
inline bool has_positive(const LaurentScalar& v) { return !v.is_zero() && v.max_power() > 0; }

} // namespace detail

/// Randomized check of the same condition. At each integer point p in [-range, range]^n:
/// the full value C(p) must have no negative eps power and eps^0 part P(p); the series C(t p)
/// modulo t^(d+1) must vanish below t^d and equal P(p) (eps-free) at t^d.
/// A fail carries a point reproducing the violation; a pass errs with probability <= error_bound.
inline BorderReport verify_border_random(const Depth3Circuit& c, const SparsePoly& p, unsigned d, std::size_t trials,
                                         std::uint64_t seed, std::optional<long> range = std::nullopt)
{
    if (trials == 0) {
        throw std::invalid_argument("verify_border_random: trials must be >= 1");
    }
    detail::require_target(p, c.num_vars, d);
    BorderReport report;
    report.method = VerifyMethod::random;
    report.degree = d;
    report.params = circuit_params(c);
    report.trials = trials;
    report.seed = seed;
    const long default_range =
        std::max<long>(1, 2L * static_cast<long>(report.params.formal_degree) * static_cast<long>(report.params.top_fan_in));
    report.range = range.value_or(default_range);
    if (report.range < 1) {
        throw std::invalid_argument("verify_border_random: range must be >= 1");
    }
    const double degree_bound = static_cast<double>(std::max(report.params.formal_degree, d));
    const double per_trial = std::min(1.0, degree_bound / static_cast<double>(2 * report.range + 1));
    report.error_bound = std::pow(per_trial, static_cast<double>(trials));

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-report.range, report.range);
    std::vector<LaurentScalar> point(c.num_vars);
    std::vector<Rational> coords(c.num_vars);

    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t i = 0; i < c.num_vars; ++i) {
            long v = dist(rng);
            coords[i] = Rational(v);
            point[i] = LaurentScalar(v);
        }
        const LaurentScalar value = eval_circuit(c, point);
        const LaurentScalar target = eval_at_point(p, point);
        const detail::Series series = detail::line_series(c, point, d);

        auto fail = [&](FailureKind kind) {
            report.pass = false;
            report.failure_kind = kind;
            report.witness_point = coords;
            report.witness_value = value;
            report.witness_target = target;
            return report;
        };

        bool negative = detail::has_negative(value) ||
                        std::any_of(series.begin(), series.end(), [](const LaurentScalar& s) { return detail::has_negative(s); });
        if (negative) {
            return fail(FailureKind::negative_epsilon_power);
        }
        bool mismatch = !(value.coefficient(0) == target.coefficient(0));
        for (std::size_t k = 0; k <= d && !mismatch; ++k) {
            CycloElem expected = k == d ? target.coefficient(0) : CycloElem();
            mismatch = !(series[k].coefficient(0) == expected);
        }
        if (mismatch) {
            return fail(FailureKind::eps0_slice_mismatch);
        }
        if (std::any_of(series.begin(), series.end(), [](const LaurentScalar& s) { return detail::has_positive(s); })) {
            return fail(FailureKind::low_degree_garbage);
        }
    }
    return report;
}

} // namespace border3
