#pragma once

// Builders, random generators and independent oracles shared by the test binaries.
// The oracles deliberately avoid SparsePoly::multiply, expand() and the extraction closed form.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "border3/border3.hpp"

namespace testing_support {

using namespace border3;

inline LaurentScalar S(const std::string& text, unsigned order = 1) { return parse_scalar(text, order); }

/// poly(2, {{{1, 1}, "1"}, {{0, 2}, "3"}}) is x1*x2 + 3*x2^2.
inline SparsePoly poly(std::size_t n, std::initializer_list<std::pair<Exponent, std::string>> terms, unsigned order = 1)
{
    SparsePoly p(n);
    for (const auto& [e, c] : terms) {
        p.add_term(e, S(c, order));
    }
    return p;
}

inline SparsePoly var(std::size_t n, std::size_t i) { return SparsePoly::variable(n, i); }

inline AffineForm form(std::initializer_list<std::string> linear, const std::string& constant = "0", unsigned order = 1)
{
    std::vector<LaurentScalar> coeffs;
    for (const auto& c : linear) {
        coeffs.push_back(S(c, order));
    }
    return AffineForm(std::move(coeffs), S(constant, order));
}

// Oracles ---------------------------------------------------------------------------------------

/// Schoolbook product into a plain std::map keyed lexicographically.
inline SparsePoly naive_mul(const SparsePoly& a, const SparsePoly& b)
{
    std::map<Exponent, LaurentScalar> acc;
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Exponent e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = ea[i] + eb[i];
            }
            acc[e] = acc[e] + ca * cb;
        }
    }
    SparsePoly r(a.num_vars());
    for (const auto& [e, c] : acc) {
        r.add_term(e, c);
    }
    return r;
}

inline SparsePoly naive_pow(const SparsePoly& p, unsigned k)
{
    SparsePoly r = SparsePoly::constant(p.num_vars(), LaurentScalar(1));
    for (unsigned i = 0; i < k; ++i) {
        r = naive_mul(r, p);
    }
    return r;
}

inline SparsePoly naive_truncate(const SparsePoly& p, unsigned bound)
{
    SparsePoly r(p.num_vars());
    for (const auto& [e, c] : p.terms()) {
        unsigned deg = 0;
        for (auto x : e) {
            deg += x;
        }
        if (deg <= bound) {
            r.add_term(e, c);
        }
    }
    return r;
}

/// Multiplies every factor out with naive_mul, composed entries as sum_k u_k * (base^power)^k.
inline SparsePoly naive_expand(const Depth3Circuit& c)
{
    SparsePoly total(c.num_vars);
    for (const auto& s : c.summands) {
        SparsePoly acc = SparsePoly::constant(c.num_vars, s.coeff);
        for (const auto& f : s.gate.factors) {
            acc = naive_mul(acc, f.to_poly());
        }
        for (const auto& cf : s.gate.composed) {
            SparsePoly arg = naive_pow(cf.base.to_poly(), cf.power);
            SparsePoly u(c.num_vars);
            SparsePoly power = SparsePoly::constant(c.num_vars, LaurentScalar(1));
            for (const auto& uc : cf.u.coeffs) {
                u += power.scaled(uc);
                power = naive_mul(power, arg);
            }
            acc = naive_mul(acc, u);
        }
        total += acc;
    }
    return total;
}

/// SYM_d over an explicit subset enumeration.
inline SparsePoly brute_sym(const std::vector<AffineForm>& forms, std::size_t n, unsigned d)
{
    SparsePoly total(n);
    const std::size_t m = forms.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        if (static_cast<unsigned>(__builtin_popcountll(mask)) != d) {
            continue;
        }
        SparsePoly prod = SparsePoly::constant(n, LaurentScalar(1));
        for (std::size_t i = 0; i < m; ++i) {
            if ((mask >> i) & 1U) {
                prod = naive_mul(prod, forms[i].to_poly());
            }
        }
        total += prod;
    }
    return total;
}

/// Solves sum_j beta_j alpha_j^k = delta_{k,i} for k = 0..rows-1 by Gauss-Jordan elimination.
inline std::vector<Rational> vandermonde_solve(const std::vector<Rational>& nodes, unsigned i, std::size_t rows)
{
    const std::size_t cols = nodes.size();
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
    for (std::size_t k = 0; k < rows; ++k) {
        for (std::size_t j = 0; j < cols; ++j) {
            Rational p(1);
            for (std::size_t e = 0; e < k; ++e) {
                p *= nodes[j];
            }
            m[k][j] = p;
        }
        m[k][cols] = k == i ? 1 : 0;
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && m[piv][col] == 0) {
            ++piv;
        }
        if (piv == rows) {
            continue;
        }
        std::swap(m[piv], m[row]);
        Rational inv = Rational(1) / m[row][col];
        for (auto& v : m[row]) {
            v *= inv;
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (r != row && m[r][col] != 0) {
                Rational f = m[r][col];
                for (std::size_t c2 = 0; c2 <= cols; ++c2) {
                    m[r][c2] -= f * m[row][c2];
                }
            }
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<Rational> beta(cols, Rational(0));
    for (std::size_t r = 0; r < pivot_col.size(); ++r) {
        beta[pivot_col[r]] = m[r][cols];
    }
    return beta;
}

/// Evaluates a polynomial by summing c * prod x_i^e_i term by term.
inline LaurentScalar naive_eval(const SparsePoly& p, const std::vector<LaurentScalar>& point)
{
    LaurentScalar total;
    for (const auto& [e, c] : p.terms()) {
        LaurentScalar t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (unsigned k = 0; k < e[i]; ++k) {
                t = t * point[i];
            }
        }
        total += t;
    }
    return total;
}

// Random generators -------------------------------------------------------------------------------

inline Rational random_rational(std::mt19937_64& rng, long num_range = 5, long den_max = 4)
{
    std::uniform_int_distribution<long> num(-num_range, num_range);
    std::uniform_int_distribution<long> den(1, den_max);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline Rational random_nonzero_rational(std::mt19937_64& rng, long num_range = 5, long den_max = 4)
{
    Rational r;
    do {
        r = random_rational(rng, num_range, den_max);
    } while (r == 0);
    return r;
}

/// All exponent vectors of total degree d in n variables.
inline std::vector<Exponent> monomials_of_degree(std::size_t n, unsigned d)
{
    std::vector<Exponent> out;
    Exponent e(n, 0);
    auto rec = [&](auto& self, std::size_t i, unsigned left) -> void {
        if (i + 1 == n) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[i] = k;
            self(self, i + 1, left - k);
        }
    };
    rec(rec, 0, d);
    return out;
}

/// Homogeneous degree-d polynomial with between 1 and max_terms monomials and nonzero rational coefficients.
inline SparsePoly random_homogeneous(std::mt19937_64& rng, std::size_t n, unsigned d, std::size_t max_terms)
{
    auto monos = monomials_of_degree(n, d);
    std::shuffle(monos.begin(), monos.end(), rng);
    std::uniform_int_distribution<std::size_t> count(1, std::min(max_terms, monos.size()));
    std::size_t k = count(rng);
    SparsePoly p(n);
    for (std::size_t i = 0; i < k; ++i) {
        p.add_term(monos[i], LaurentScalar(random_nonzero_rational(rng)));
    }
    return p;
}

/// Nonzero homogeneous linear form with small rational coefficients.
inline AffineForm random_linear_form(std::mt19937_64& rng, std::size_t n)
{
    while (true) {
        std::vector<LaurentScalar> coeffs;
        for (std::size_t i = 0; i < n; ++i) {
            coeffs.emplace_back(random_rational(rng, 3, 2));
        }
        AffineForm f(std::move(coeffs));
        if (f.has_linear_part()) {
            return f;
        }
    }
}

/// Affine form with a nonzero linear part; coefficients may carry eps^{-1..1}.
inline AffineForm random_affine_form(std::mt19937_64& rng, std::size_t n, bool with_eps)
{
    std::uniform_int_distribution<int> eps(-1, 1);
    auto coeff = [&] {
        LaurentScalar c(random_rational(rng, 3, 2));
        return with_eps ? c.shifted(eps(rng)) : c;
    };
    while (true) {
        std::vector<LaurentScalar> coeffs;
        for (std::size_t i = 0; i < n; ++i) {
            coeffs.push_back(coeff());
        }
        AffineForm f(std::move(coeffs), coeff());
        if (f.has_linear_part()) {
            return f;
        }
    }
}

/// Random circuit with at most max_factors affine factors per gate and occasionally a composed entry.
inline Depth3Circuit random_circuit(std::mt19937_64& rng, std::size_t n, std::size_t max_factors, bool with_eps,
                                    bool with_composed)
{
    std::uniform_int_distribution<std::size_t> fan_in(1, 3);
    std::uniform_int_distribution<std::size_t> factors(0, max_factors);
    std::uniform_int_distribution<int> coin(0, 2);
    Depth3Circuit c(n);
    std::size_t k = fan_in(rng);
    for (std::size_t s = 0; s < k; ++s) {
        Summand sm;
        sm.coeff = LaurentScalar(random_nonzero_rational(rng));
        if (with_eps) {
            sm.coeff = sm.coeff.shifted(coin(rng) - 1);
        }
        std::size_t f = factors(rng);
        for (std::size_t i = 0; i < f; ++i) {
            sm.gate.factors.push_back(random_affine_form(rng, n, with_eps));
        }
        if (with_composed && coin(rng) == 0) {
            ComposedFactor cf;
            cf.u.coeffs = {LaurentScalar(1), LaurentScalar(random_rational(rng)), LaurentScalar(random_nonzero_rational(rng))};
            cf.base = random_affine_form(rng, n, false);
            cf.power = 1 + static_cast<unsigned>(coin(rng) % 2);
            sm.gate.composed.push_back(std::move(cf));
        }
        c.summands.push_back(std::move(sm));
    }
    return c;
}

} // namespace testing_support
