#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace border3 {

/// Dense univariate integer polynomial, lowest degree first.
using IntPoly = std::vector<Integer>;

namespace detail {

/// Dense univariate rational polynomial, lowest degree first, no trailing zeros (empty == 0).
using QPoly = std::vector<Rational>;

inline void trim(QPoly& p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

inline IntPoly compute_cyclotomic(unsigned d, const std::map<unsigned, IntPoly>& known)
{
    // z^d - 1 divided by every Phi_e with e | d, e < d.
    IntPoly num(d + 1, Integer(0));
    num[0] = -1;
    num[d] = 1;
    for (unsigned e = 1; e < d; ++e) {
        if (d % e != 0) {
            continue;
        }
        const IntPoly& div = known.at(e);
        std::size_t dd = div.size() - 1;
        IntPoly quot(num.size() - dd, Integer(0));
        for (std::size_t i = num.size(); i-- > dd;) {
            Integer c = num[i]; // divisor is monic
            quot[i - dd] = c;
            if (c != 0) {
                for (std::size_t k = 0; k <= dd; ++k) {
                    num[i - dd + k] -= c * div[k];
                }
            }
        }
        for (std::size_t k = 0; k < dd; ++k) {
            if (num[k] != 0) {
                throw std::logic_error("cyclotomic division left a remainder");
            }
        }
        num = std::move(quot);
    }
    return num;
}

} // namespace detail

/// The d-th cyclotomic polynomial Phi_d (monic, integer coefficients). Results are cached process-wide.
inline const IntPoly& cyclotomic_polynomial(unsigned d)
{
    if (d == 0) {
        throw std::invalid_argument("cyclotomic_polynomial: order must be positive");
    }
    static std::mutex mutex;
    static std::map<unsigned, IntPoly> cache;
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(d); it != cache.end()) {
        return it->second;
    }
    for (unsigned e = 1; e <= d; ++e) {
        if (d % e == 0 && cache.find(e) == cache.end()) {
            cache.emplace(e, detail::compute_cyclotomic(e, cache));
        }
    }
    return cache.at(d);
}

/// Euler's totient, i.e. deg Phi_d.
inline unsigned totient(unsigned d)
{
    return static_cast<unsigned>(cyclotomic_polynomial(d).size() - 1);
}

/// An element of Q(zeta_d), stored as a residue of Q[z] modulo Phi_d.
///
/// The representation is canonical: coefficient vector of length deg Phi_d.
/// Values of different orders interoperate by lifting both operands into
/// Q(zeta_lcm) through zeta_a = zeta_L^(L/a).
class CycloElem {
public:
    CycloElem() : order_(1), coeffs_(1, Rational(0)) {}

    CycloElem(const Rational& value, unsigned order = 1) // NOLINT(google-explicit-constructor)
        : order_(order), coeffs_(totient(order), Rational(0))
    {
        coeffs_[0] = value;
    }

    CycloElem(long value) : CycloElem(Rational(value)) {} // NOLINT(google-explicit-constructor)

    /// Builds from arbitrary polynomial coefficients in z, reducing modulo Phi_order.
    static CycloElem from_poly(unsigned order, std::vector<Rational> poly)
    {
        CycloElem r;
        r.order_ = order;
        r.coeffs_ = reduce(order, std::move(poly));
        return r;
    }

    /// zeta_order^k for any integer k.
    static CycloElem root_of_unity(unsigned order, long k = 1)
    {
        long m = static_cast<long>(order);
        long e = ((k % m) + m) % m;
        std::vector<Rational> poly(static_cast<std::size_t>(e) + 1, Rational(0));
        poly[static_cast<std::size_t>(e)] = 1;
        return from_poly(order, std::move(poly));
    }

    unsigned order() const { return order_; }
    std::span<const Rational> coeffs() const { return coeffs_; }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
    }

    bool is_rational() const
    {
        return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
    }

    /// Only meaningful when is_rational().
    const Rational& rational_part() const { return coeffs_[0]; }

    /// Embeds into Q(zeta_new_order); new_order must be a multiple of order() unless the value is rational.
    CycloElem lift(unsigned new_order) const
    {
        if (new_order == order_) {
            return *this;
        }
        if (is_rational()) {
            return CycloElem(rational_part(), new_order);
        }
        if (new_order % order_ != 0) {
            throw std::invalid_argument("CycloElem::lift: target order is not a multiple");
        }
        unsigned step = new_order / order_;
        std::vector<Rational> poly(static_cast<std::size_t>(coeffs_.size() - 1) * step + 1, Rational(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            poly[i * step] = coeffs_[i];
        }
        return from_poly(new_order, std::move(poly));
    }

    CycloElem operator-() const
    {
        CycloElem r = *this;
        for (auto& c : r.coeffs_) {
            c = -c;
        }
        return r;
    }

    CycloElem& operator+=(const CycloElem& other)
    {
        if (other.order_ != order_) {
            return *this = *this + other;
        }
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            coeffs_[i] += other.coeffs_[i];
        }
        return *this;
    }

    CycloElem& operator-=(const CycloElem& other) { return *this += -other; }

    CycloElem& operator*=(const CycloElem& other) { return *this = *this * other; }

    friend CycloElem operator+(const CycloElem& a, const CycloElem& b)
    {
        if (a.order_ != b.order_) {
            unsigned l = std::lcm(a.order_, b.order_);
            return a.lift(l) + b.lift(l);
        }
        CycloElem r = a;
        for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
            r.coeffs_[i] += b.coeffs_[i];
        }
        return r;
    }

    friend CycloElem operator-(const CycloElem& a, const CycloElem& b) { return a + (-b); }

    friend CycloElem operator*(const CycloElem& a, const CycloElem& b)
    {
        if (a.order_ != b.order_) {
            unsigned l = std::lcm(a.order_, b.order_);
            return a.lift(l) * b.lift(l);
        }
        if (a.coeffs_.size() == 1) {
            CycloElem r = a;
            r.coeffs_[0] *= b.coeffs_[0];
            return r;
        }
        if (b.is_rational()) {
            return a.scaled(b.coeffs_[0]);
        }
        if (a.is_rational()) {
            return b.scaled(a.coeffs_[0]);
        }
        std::vector<Rational> prod(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                if (b.coeffs_[j] != 0) {
                    prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
                }
            }
        }
        return from_poly(a.order_, std::move(prod));
    }

    CycloElem scaled(const Rational& s) const
    {
        CycloElem r = *this;
        for (auto& c : r.coeffs_) {
            c *= s;
        }
        return r;
    }

    CycloElem pow(unsigned e) const
    {
        CycloElem result(Rational(1), order_);
        CycloElem base = *this;
        while (e != 0) {
            if (e & 1U) {
                result *= base;
            }
            e >>= 1U;
            if (e != 0) {
                base *= base;
            }
        }
        return result;
    }

    /// Multiplicative inverse via extended Euclid against Phi_order.
    CycloElem inverse() const
    {
        if (is_zero()) {
            throw std::domain_error("CycloElem::inverse: zero is not invertible");
        }
        if (is_rational()) {
            return CycloElem(Rational(1) / coeffs_[0], order_);
        }
        const IntPoly& phi = cyclotomic_polynomial(order_);
        detail::QPoly r0(phi.begin(), phi.end());
        detail::QPoly r1(coeffs_.begin(), coeffs_.end());
        detail::trim(r1);
        detail::QPoly t0;            // 0
        detail::QPoly t1{Rational(1)};
        while (r1.size() != 1) {
            auto [q, rem] = divmod(r0, r1);
            detail::QPoly t2 = sub(t0, mul(q, t1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            t0 = std::move(t1);
            t1 = std::move(t2);
            if (r1.empty()) {
                throw std::logic_error("CycloElem::inverse: Phi_d shares a factor with the element");
            }
        }
        Rational inv_c = Rational(1) / r1[0];
        for (auto& c : t1) {
            c *= inv_c;
        }
        return from_poly(order_, std::move(t1));
    }

    std::complex<double> to_complex() const
    {
        std::complex<double> acc(0.0, 0.0);
        double two_pi = 2.0 * std::numbers::pi;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] != 0) {
                double angle = two_pi * static_cast<double>(k) / static_cast<double>(order_);
                acc += coeffs_[k].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
            }
        }
        return acc;
    }

    friend bool operator==(const CycloElem& a, const CycloElem& b)
    {
        if (a.order_ != b.order_) {
            unsigned l = std::lcm(a.order_, b.order_);
            return a.lift(l).coeffs_ == b.lift(l).coeffs_;
        }
        return a.coeffs_ == b.coeffs_;
    }

private:
    static std::vector<Rational> reduce(unsigned order, std::vector<Rational> poly)
    {
        const IntPoly& phi = cyclotomic_polynomial(order);
        std::size_t deg = phi.size() - 1;
        for (std::size_t i = poly.size(); i-- > deg;) {
            if (poly[i] == 0) {
                continue;
            }
            Rational c = poly[i];
            for (std::size_t k = 0; k <= deg; ++k) {
                if (phi[k] != 0) {
                    poly[i - deg + k] -= c * phi[k];
                }
            }
        }
        poly.resize(deg, Rational(0));
        return poly;
    }

    static std::pair<detail::QPoly, detail::QPoly> divmod(detail::QPoly num, const detail::QPoly& den)
    {
        detail::trim(num);
        if (num.size() < den.size()) {
            return {{}, std::move(num)};
        }
        const Rational& lead = den.back();
        std::size_t top = num.size() - den.size();
        detail::QPoly quot(top + 1, Rational(0));
        for (std::size_t s = top + 1; s-- > 0;) {
            Rational c = num[s + den.size() - 1] / lead;
            quot[s] = c;
            if (c != 0) {
                for (std::size_t k = 0; k < den.size(); ++k) {
                    num[s + k] -= c * den[k];
                }
            }
        }
        detail::trim(num);
        detail::trim(quot);
        return {std::move(quot), std::move(num)};
    }

    static detail::QPoly mul(const detail::QPoly& a, const detail::QPoly& b)
    {
        if (a.empty() || b.empty()) {
            return {};
        }
        detail::QPoly r(a.size() + b.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                r[i + j] += a[i] * b[j];
            }
        }
        detail::trim(r);
        return r;
    }

    static detail::QPoly sub(detail::QPoly a, const detail::QPoly& b)
    {
        if (a.size() < b.size()) {
            a.resize(b.size(), Rational(0));
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            a[i] -= b[i];
        }
        detail::trim(a);
        return a;
    }

    unsigned order_;
    std::vector<Rational> coeffs_;
};

} // namespace border3
