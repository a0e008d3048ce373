#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "circuit.hpp"

namespace border3 {

// Demonstration-only: splits a composed factor u(l^b) into explicit floating affine factors.
// Nothing here participates in verification.

using Complex = std::complex<double>;

/// sum_i coeffs_i * eps^eps_power * x_i + constant
struct NumericAffineForm {
    std::vector<Complex> coeffs;
    Complex constant;
    int eps_power = 0;
};

struct NumericSplit {
    Complex leading;
    std::vector<Complex> roots; // roots of u
    std::vector<NumericAffineForm> factors;
    double residual = 0.0;
};

namespace detail {

inline Complex to_complex_eps_free(const LaurentScalar& v)
{
    if (v.is_zero()) {
        return {0.0, 0.0};
    }
    if (!v.is_epsilon_free()) {
        throw std::invalid_argument("numeric split: coefficient depends on epsilon");
    }
    return v.coefficient(0).to_complex();
}

inline Complex horner(const std::vector<Complex>& p, Complex z)
{
    Complex acc(0.0, 0.0);
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = acc * z + p[i];
    }
    return acc;
}

/// Durand-Kerner on a monic polynomial (lowest degree first, leading 1 implied by p.back()).
inline std::vector<Complex> polynomial_roots(const std::vector<Complex>& monic)
{
    const std::size_t n = monic.size() - 1;
    double radius = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        radius = std::max(radius, std::abs(monic[i]));
    }
    radius = 1.0 + radius;
    std::vector<Complex> z(n);
    const Complex seed(0.4, 0.9);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = radius * std::pow(seed, static_cast<double>(i));
    }
    bool converged = false;
    for (int iter = 0; iter < 5000 && !converged; ++iter) {
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex denom(1.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    Complex diff = z[i] - z[j];
                    if (diff == Complex(0.0, 0.0)) {
                        diff = Complex(1e-300, 0.0);
                    }
                    denom *= diff;
                }
            }
            Complex step = horner(monic, z[i]) / denom;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        converged = change <= 1e-15 * radius;
    }
    for (const auto& r : z) {
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) {
            throw std::runtime_error("numeric split: root finding diverged");
        }
    }
    return z;
}

using NumericPoly = std::map<Exponent, Complex>;

inline NumericPoly numeric_mul(const NumericPoly& a, const NumericPoly& b)
{
    NumericPoly r;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            Exponent e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
            }
            r[e] += ca * cb;
        }
    }
    return r;
}

inline NumericPoly numeric_affine(const std::vector<Complex>& coeffs, Complex constant)
{
    NumericPoly p;
    p[Exponent(coeffs.size(), 0)] = constant;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Exponent e(coeffs.size(), 0);
        e[i] = 1;
        p[e] += coeffs[i];
    }
    return p;
}

} // namespace detail

/// Roots r_i of u give u(t) = lead * prod_i (t - r_i) and t^b - r_i = prod_s (t - rho_{i,s}),
/// so u(l^b) = lead * prod_{i,s} (l - rho_{i,s}). The base form may carry a uniform eps power on its
/// linear part; the residual is measured with eps = 1 against the exact expansion and must be <= tol.
inline NumericSplit numeric_split_gate(const ComposedFactor& entry, const Rational& tol)
{
    if (tol <= 0) {
        throw std::invalid_argument("numeric split: tolerance must be positive");
    }
    const unsigned deg = entry.u.degree();
    if (deg == 0) {
        throw std::invalid_argument("numeric split: u must have degree >= 1");
    }
    if (entry.power == 0) {
        throw std::invalid_argument("numeric split: power must be >= 1");
    }
    const std::size_t n = entry.base.num_vars();

    std::optional<int> eps_power;
    std::vector<Complex> lin(n);
    for (std::size_t i = 0; i < n; ++i) {
        const LaurentScalar& c = entry.base.coeffs[i];
        if (c.is_zero()) {
            continue;
        }
        if (!c.is_monomial() || (eps_power && *eps_power != c.ord())) {
            throw std::invalid_argument("numeric split: base form is not uniformly graded in epsilon");
        }
        eps_power = c.ord();
        lin[i] = c.coefficient(c.ord()).to_complex();
    }
    const Complex base_const = detail::to_complex_eps_free(entry.base.constant);

    std::vector<Complex> u(deg + 1);
    for (unsigned k = 0; k <= deg; ++k) {
        u[k] = detail::to_complex_eps_free(entry.u.coeffs[k]);
    }
    NumericSplit out;
    out.leading = u[deg];
    // Zero roots come from exactly vanishing low coefficients; split them off before iterating.
    unsigned zeros = 0;
    while (entry.u.coeffs[zeros].is_zero()) {
        ++zeros;
    }
    std::vector<Complex> monic(deg + 1 - zeros);
    for (unsigned k = zeros; k <= deg; ++k) {
        monic[k - zeros] = u[k] / out.leading;
    }
    out.roots.assign(zeros, Complex(0.0, 0.0));
    for (const Complex& r : detail::polynomial_roots(monic)) {
        out.roots.push_back(r);
    }

    const double two_pi = 2.0 * std::numbers::pi;
    const double b = static_cast<double>(entry.power);
    for (const Complex& r : out.roots) {
        double mag = std::pow(std::abs(r), 1.0 / b);
        double arg = std::arg(r);
        for (unsigned s = 0; s < entry.power; ++s) {
            Complex rho = std::polar(mag, (arg + two_pi * s) / b);
            out.factors.push_back(NumericAffineForm{lin, base_const - rho, eps_power.value_or(0)});
        }
    }

    // Residual against the exact expansion of u(l^b) with eps = 1.
    detail::NumericPoly approx;
    approx[Exponent(n, 0)] = out.leading;
    for (const auto& f : out.factors) {
        approx = detail::numeric_mul(approx, detail::numeric_affine(f.coeffs, f.constant));
    }
    detail::NumericPoly exact;
    {
        detail::NumericPoly base = detail::numeric_affine(lin, base_const);
        detail::NumericPoly base_pow;
        base_pow[Exponent(n, 0)] = Complex(1.0, 0.0);
        for (unsigned k = 0; k < entry.power; ++k) {
            base_pow = detail::numeric_mul(base_pow, base);
        }
        for (unsigned k = deg + 1; k-- > 0;) {
            exact = detail::numeric_mul(exact, base_pow);
            exact[Exponent(n, 0)] += u[k];
        }
    }
    double residual = 0.0;
    for (const auto& [e, c] : exact) {
        auto it = approx.find(e);
        residual = std::max(residual, std::abs(c - (it == approx.end() ? Complex() : it->second)));
    }
    for (const auto& [e, c] : approx) {
        if (exact.find(e) == exact.end()) {
            residual = std::max(residual, std::abs(c));
        }
    }
    out.residual = residual;
    if (!(residual <= tol.get_d())) {
        throw std::runtime_error("numeric split: residual " + std::to_string(residual) + " exceeds tolerance");
    }
    return out;
}

} // namespace border3
