#pragma once

#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "cyclotomic.hpp"

namespace border3 {

/// A Laurent polynomial in the formal parameter epsilon with cyclotomic coefficients.
///
/// This is the universal constant type of the circuit IR. No stored coefficient is zero.
class LaurentScalar {
public:
    using TermMap = std::map<int, CycloElem>;

    LaurentScalar() = default;

    LaurentScalar(const CycloElem& c, int eps_power = 0) // NOLINT(google-explicit-constructor)
    {
        if (!c.is_zero()) {
            terms_.emplace(eps_power, c);
        }
    }

    LaurentScalar(const Rational& r) : LaurentScalar(CycloElem(r)) {} // NOLINT(google-explicit-constructor)
    LaurentScalar(long v) : LaurentScalar(CycloElem(v)) {}            // NOLINT(google-explicit-constructor)
    LaurentScalar(int v) : LaurentScalar(CycloElem(static_cast<long>(v))) {} // NOLINT(google-explicit-constructor)

    static LaurentScalar epsilon(int power = 1) { return LaurentScalar(CycloElem(1L), power); }

    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_epsilon_free() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

    /// Minimum epsilon exponent; undefined (throws) for zero.
    int ord() const
    {
        if (terms_.empty()) {
            throw std::domain_error("LaurentScalar::ord of zero");
        }
        return terms_.begin()->first;
    }

    int max_power() const
    {
        if (terms_.empty()) {
            throw std::domain_error("LaurentScalar::max_power of zero");
        }
        return terms_.rbegin()->first;
    }

    CycloElem coefficient(int eps_power) const
    {
        auto it = terms_.find(eps_power);
        return it == terms_.end() ? CycloElem() : it->second;
    }

    /// lcm of the cyclotomic orders of all non-rational coefficients (1 for zero).
    unsigned order() const
    {
        unsigned l = 1;
        for (const auto& [k, c] : terms_) {
            if (!c.is_rational()) {
                l = std::lcm(l, c.order());
            }
        }
        return l;
    }

    /// Multiplies by epsilon^k.
    LaurentScalar shifted(int k) const
    {
        LaurentScalar r;
        for (const auto& [e, c] : terms_) {
            r.terms_.emplace_hint(r.terms_.end(), e + k, c);
        }
        return r;
    }

    LaurentScalar lifted(unsigned new_order) const
    {
        LaurentScalar r;
        for (const auto& [e, c] : terms_) {
            r.terms_.emplace_hint(r.terms_.end(), e, c.lift(new_order));
        }
        return r;
    }

    LaurentScalar operator-() const
    {
        LaurentScalar r = *this;
        for (auto& [e, c] : r.terms_) {
            c = -c;
        }
        return r;
    }

    LaurentScalar& operator+=(const LaurentScalar& other)
    {
        for (const auto& [e, c] : other.terms_) {
            add_term(e, c);
        }
        return *this;
    }

    LaurentScalar& operator-=(const LaurentScalar& other)
    {
        for (const auto& [e, c] : other.terms_) {
            add_term(e, -c);
        }
        return *this;
    }

    LaurentScalar& operator*=(const LaurentScalar& other) { return *this = *this * other; }

    friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
    friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }

    friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b)
    {
        LaurentScalar r;
        if (a.is_zero() || b.is_zero()) {
            return r;
        }
        if (a.terms_.size() == 1 && b.terms_.size() == 1) {
            const auto& [ea, ca] = *a.terms_.begin();
            const auto& [eb, cb] = *b.terms_.begin();
            return LaurentScalar(ca * cb, ea + eb);
        }
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                r.add_term(ea + eb, ca * cb);
            }
        }
        return r;
    }

    /// Inverse of a unit c*eps^k. Multi-term values are not invertible here.
    LaurentScalar inverse() const
    {
        if (terms_.empty()) {
            throw std::domain_error("LaurentScalar::inverse of zero");
        }
        if (terms_.size() != 1) {
            throw std::domain_error("LaurentScalar::inverse of a multi-term Laurent value is unsupported");
        }
        const auto& [e, c] = *terms_.begin();
        return LaurentScalar(c.inverse(), -e);
    }

    LaurentScalar pow(unsigned e) const
    {
        LaurentScalar result(1L);
        LaurentScalar base = *this;
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

    friend bool operator==(const LaurentScalar& a, const LaurentScalar& b) { return a.terms_ == b.terms_; }

private:
    void add_term(int e, const CycloElem& c)
    {
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    TermMap terms_;
};

} // namespace border3
