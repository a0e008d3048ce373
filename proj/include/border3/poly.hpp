#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "laurent.hpp"

namespace border3 {

using Exponent = std::vector<unsigned>;

inline unsigned total_degree(const Exponent& e)
{
    return std::accumulate(e.begin(), e.end(), 0U);
}

/// Graded lexicographic order: total degree first, then lexicographic on the exponent vector.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const
    {
        unsigned da = total_degree(a);
        unsigned db = total_degree(b);
        if (da != db) {
            return da < db;
        }
        return a < b;
    }
};

/// Sparse multivariate polynomial in x_1..x_n over LaurentScalar.
class SparsePoly {
public:
    using TermMap = std::map<Exponent, LaurentScalar, GrlexLess>;

    SparsePoly() = default;
    explicit SparsePoly(std::size_t num_vars) : num_vars_(num_vars) {}

    static SparsePoly constant(std::size_t num_vars, const LaurentScalar& c)
    {
        SparsePoly p(num_vars);
        p.add_term(Exponent(num_vars, 0), c);
        return p;
    }

    static SparsePoly variable(std::size_t num_vars, std::size_t index, const LaurentScalar& c = LaurentScalar(1))
    {
        if (index >= num_vars) {
            throw std::out_of_range("SparsePoly::variable: index out of range");
        }
        Exponent e(num_vars, 0);
        e[index] = 1;
        SparsePoly p(num_vars);
        p.add_term(std::move(e), c);
        return p;
    }

    std::size_t num_vars() const { return num_vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    void add_term(Exponent e, const LaurentScalar& c)
    {
        if (e.size() != num_vars_) {
            throw std::invalid_argument("SparsePoly::add_term: exponent length does not match num_vars");
        }
        if (c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    LaurentScalar coefficient(const Exponent& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? LaurentScalar() : it->second;
    }

    /// Maximum total x-degree; nullopt for the zero polynomial.
    std::optional<unsigned> degree() const
    {
        if (terms_.empty()) {
            return std::nullopt;
        }
        return total_degree(terms_.rbegin()->first);
    }

    std::optional<unsigned> min_degree() const
    {
        if (terms_.empty()) {
            return std::nullopt;
        }
        return total_degree(terms_.begin()->first);
    }

    /// True when every term has x-degree exactly d (the zero polynomial is homogeneous of every degree).
    bool is_homogeneous(unsigned d) const
    {
        return terms_.empty() || (*min_degree() == d && *degree() == d);
    }

    bool is_epsilon_free() const
    {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_epsilon_free(); });
    }

    unsigned order() const
    {
        unsigned l = 1;
        for (const auto& [e, c] : terms_) {
            l = std::lcm(l, c.order());
        }
        return l;
    }

    SparsePoly operator-() const
    {
        SparsePoly r = *this;
        for (auto& [e, c] : r.terms_) {
            c = -c;
        }
        return r;
    }

    SparsePoly& operator+=(const SparsePoly& other)
    {
        check_vars(other);
        for (const auto& [e, c] : other.terms_) {
            add_term(e, c);
        }
        return *this;
    }

    SparsePoly& operator-=(const SparsePoly& other) { return *this += -other; }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b)
    {
        return multiply(a, b, std::numeric_limits<unsigned>::max());
    }

    SparsePoly scaled(const LaurentScalar& s) const
    {
        SparsePoly r(num_vars_);
        if (s.is_zero()) {
            return r;
        }
        for (const auto& [e, c] : terms_) {
            r.terms_.emplace_hint(r.terms_.end(), e, c * s);
        }
        return r;
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b)
    {
        return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
    }

    /// Product with every monomial of total x-degree > bound discarded.
    static SparsePoly multiply(const SparsePoly& a, const SparsePoly& b, unsigned bound)
    {
        a.check_vars(b);
        SparsePoly r(a.num_vars_);
        if (a.is_zero() || b.is_zero()) {
            return r;
        }
        struct Entry {
            const Exponent* exp;
            const LaurentScalar* coeff;
            unsigned degree;
        };
        std::vector<Entry> bterms;
        bterms.reserve(b.terms_.size());
        for (const auto& [e, c] : b.terms_) {
            bterms.push_back({&e, &c, total_degree(e)});
        }
        Exponent sum(a.num_vars_, 0);
        for (const auto& [ea, ca] : a.terms_) {
            unsigned da = total_degree(ea);
            if (da > bound) {
                break;
            }
            for (const Entry& bt : bterms) {
                if (bt.degree > bound - da) {
                    break;
                }
                for (std::size_t i = 0; i < sum.size(); ++i) {
                    sum[i] = ea[i] + (*bt.exp)[i];
                }
                r.add_term(sum, ca * *bt.coeff);
            }
        }
        return r;
    }

private:
    void check_vars(const SparsePoly& other) const
    {
        if (other.num_vars_ != num_vars_) {
            throw std::invalid_argument("SparsePoly: mismatched variable counts");
        }
    }

    std::size_t num_vars_ = 0;
    TermMap terms_;
};

/// (A*B) with every monomial of total x-degree > bound discarded.
inline SparsePoly poly_mul_truncated(const SparsePoly& a, const SparsePoly& b, unsigned bound)
{
    return SparsePoly::multiply(a, b, bound);
}

/// Terms of total x-degree <= bound.
inline SparsePoly truncate(const SparsePoly& p, unsigned bound)
{
    SparsePoly r(p.num_vars());
    for (const auto& [e, c] : p.terms()) {
        if (total_degree(e) > bound) {
            break;
        }
        r.add_term(e, c);
    }
    return r;
}

/// The degree-i homogeneous component of p.
inline SparsePoly homogeneous_component(const SparsePoly& p, unsigned i)
{
    SparsePoly r(p.num_vars());
    for (const auto& [e, c] : p.terms()) {
        if (total_degree(e) == i) {
            r.add_term(e, c);
        }
    }
    return r;
}

/// x_i -> eps*x_i followed by division by eps^d: a term of x-degree k picks up eps^(k-d).
inline SparsePoly epsilon_scale_poly(const SparsePoly& p, unsigned d)
{
    SparsePoly r(p.num_vars());
    for (const auto& [e, c] : p.terms()) {
        r.add_term(e, c.shifted(static_cast<int>(total_degree(e)) - static_cast<int>(d)));
    }
    return r;
}

/// Coefficient of eps^k as an eps-free polynomial.
inline SparsePoly epsilon_slice(const SparsePoly& p, int k)
{
    SparsePoly r(p.num_vars());
    for (const auto& [e, c] : p.terms()) {
        CycloElem ck = c.coefficient(k);
        if (!ck.is_zero()) {
            r.add_term(e, LaurentScalar(ck));
        }
    }
    return r;
}

inline SparsePoly pow_truncated(const SparsePoly& p, unsigned e, unsigned bound)
{
    SparsePoly result = SparsePoly::constant(p.num_vars(), LaurentScalar(1));
    SparsePoly base = truncate(p, bound);
    while (e != 0) {
        if (e & 1U) {
            result = poly_mul_truncated(result, base, bound);
        }
        e >>= 1U;
        if (e != 0) {
            base = poly_mul_truncated(base, base, bound);
        }
    }
    return result;
}

inline SparsePoly pow(const SparsePoly& p, unsigned e)
{
    return pow_truncated(p, e, std::numeric_limits<unsigned>::max());
}

/// Exact substitution x_i -> point[i]; epsilon stays formal.
inline LaurentScalar eval_at_point(const SparsePoly& p, std::span<const LaurentScalar> point)
{
    if (point.size() != p.num_vars()) {
        throw std::invalid_argument("eval_at_point: point length does not match num_vars");
    }
    // Per-variable power tables, filled lazily.
    std::vector<std::vector<LaurentScalar>> powers(point.size());
    LaurentScalar acc;
    for (const auto& [e, c] : p.terms()) {
        LaurentScalar term = c;
        for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            auto& table = powers[i];
            if (table.empty()) {
                table.emplace_back(1);
            }
            while (table.size() <= e[i]) {
                table.push_back(table.back() * point[i]);
            }
            term *= table[e[i]];
        }
        acc += term;
    }
    return acc;
}

/// Dense univariate polynomial over LaurentScalar, lowest degree first.
struct UnivariatePoly {
    std::vector<LaurentScalar> coeffs;

    /// Degree, with the zero polynomial reported as 0.
    unsigned degree() const
    {
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            if (!coeffs[i].is_zero()) {
                return static_cast<unsigned>(i);
            }
        }
        return 0;
    }

    bool is_constant() const { return degree() == 0; }

    bool is_epsilon_free() const
    {
        return std::all_of(coeffs.begin(), coeffs.end(), [](const LaurentScalar& c) { return c.is_epsilon_free(); });
    }

    /// u(s*y)
    UnivariatePoly rescaled(const LaurentScalar& s) const
    {
        UnivariatePoly r;
        r.coeffs.reserve(coeffs.size());
        LaurentScalar power(1);
        for (const auto& c : coeffs) {
            r.coeffs.push_back(c * power);
            power *= s;
        }
        return r;
    }

    friend bool operator==(const UnivariatePoly& a, const UnivariatePoly& b)
    {
        std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
        for (std::size_t i = 0; i < n; ++i) {
            LaurentScalar ca = i < a.coeffs.size() ? a.coeffs[i] : LaurentScalar();
            LaurentScalar cb = i < b.coeffs.size() ? b.coeffs[i] : LaurentScalar();
            if (!(ca == cb)) {
                return false;
            }
        }
        return true;
    }
};

} // namespace border3
