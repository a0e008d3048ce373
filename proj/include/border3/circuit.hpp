#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace border3 {

/// c_1 x_1 + ... + c_n x_n + constant.
struct AffineForm {
    std::vector<LaurentScalar> coeffs;
    LaurentScalar constant;

    AffineForm() = default;
    explicit AffineForm(std::vector<LaurentScalar> linear, LaurentScalar c = LaurentScalar())
        : coeffs(std::move(linear)), constant(std::move(c))
    {
    }

    static AffineForm variable(std::size_t num_vars, std::size_t index, const LaurentScalar& c = LaurentScalar(1))
    {
        AffineForm f{std::vector<LaurentScalar>(num_vars)};
        f.coeffs.at(index) = c;
        return f;
    }

    std::size_t num_vars() const { return coeffs.size(); }

    bool has_linear_part() const
    {
        return std::any_of(coeffs.begin(), coeffs.end(), [](const LaurentScalar& c) { return !c.is_zero(); });
    }

    /// Zero constant and epsilon-free coefficients.
    bool is_homogeneous_linear() const
    {
        return constant.is_zero() &&
               std::all_of(coeffs.begin(), coeffs.end(), [](const LaurentScalar& c) { return c.is_epsilon_free(); });
    }

    AffineForm scaled(const LaurentScalar& s) const
    {
        AffineForm r;
        r.coeffs.reserve(coeffs.size());
        for (const auto& c : coeffs) {
            r.coeffs.push_back(c * s);
        }
        r.constant = constant * s;
        return r;
    }

    /// Multiplies the linear part only.
    AffineForm linear_scaled(const LaurentScalar& s) const
    {
        AffineForm r = *this;
        for (auto& c : r.coeffs) {
            c *= s;
        }
        return r;
    }

    AffineForm with_constant(const LaurentScalar& c) const
    {
        AffineForm r = *this;
        r.constant = c;
        return r;
    }

    SparsePoly to_poly() const
    {
        SparsePoly p = SparsePoly::constant(coeffs.size(), constant);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (!coeffs[i].is_zero()) {
                p += SparsePoly::variable(coeffs.size(), i, coeffs[i]);
            }
        }
        return p;
    }

    unsigned order() const
    {
        unsigned l = constant.order();
        for (const auto& c : coeffs) {
            l = std::lcm(l, c.order());
        }
        return l;
    }

    friend bool operator==(const AffineForm& a, const AffineForm& b)
    {
        return a.coeffs == b.coeffs && a.constant == b.constant;
    }
};

/// u(base^power). Over C this splits into deg(u)*power affine factors; the IR keeps it unsplit.
struct ComposedFactor {
    UnivariatePoly u;
    AffineForm base;
    unsigned power = 1;

    unsigned formal_degree() const { return u.degree() * power * (base.has_linear_part() ? 1U : 0U); }

    friend bool operator==(const ComposedFactor& a, const ComposedFactor& b)
    {
        return a.u == b.u && a.base == b.base && a.power == b.power;
    }
};

struct ProductGate {
    std::vector<AffineForm> factors;
    std::vector<ComposedFactor> composed;

    unsigned formal_degree() const
    {
        unsigned deg = 0;
        for (const auto& f : factors) {
            deg += f.has_linear_part() ? 1U : 0U;
        }
        for (const auto& c : composed) {
            deg += c.formal_degree();
        }
        return deg;
    }

    bool empty() const { return factors.empty() && composed.empty(); }

    friend bool operator==(const ProductGate& a, const ProductGate& b)
    {
        return a.factors == b.factors && a.composed == b.composed;
    }
};

struct Summand {
    LaurentScalar coeff;
    ProductGate gate;

    friend bool operator==(const Summand& a, const Summand& b) { return a.coeff == b.coeff && a.gate == b.gate; }
};

struct CircuitParams {
    std::size_t top_fan_in = 0;
    unsigned formal_degree = 0;

    friend bool operator==(const CircuitParams&, const CircuitParams&) = default;
};

/// Sum of products of affine forms (the depth-3 IR).
struct Depth3Circuit {
    std::size_t num_vars = 0;
    std::vector<Summand> summands;

    Depth3Circuit() = default;
    explicit Depth3Circuit(std::size_t n) : num_vars(n) {}

    unsigned order() const
    {
        unsigned l = 1;
        auto take = [&l](const AffineForm& f) { l = std::lcm(l, f.order()); };
        for (const auto& s : summands) {
            l = std::lcm(l, s.coeff.order());
            for (const auto& f : s.gate.factors) {
                take(f);
            }
            for (const auto& c : s.gate.composed) {
                take(c.base);
                for (const auto& uc : c.u.coeffs) {
                    l = std::lcm(l, uc.order());
                }
            }
        }
        return l;
    }

    /// Rejects wrong form lengths and factors without a linear part (those belong in the summand coefficient).
    void validate() const
    {
        for (const auto& s : summands) {
            for (const auto& f : s.gate.factors) {
                if (f.num_vars() != num_vars) {
                    throw std::invalid_argument("affine factor length does not match num_vars");
                }
                if (!f.has_linear_part()) {
                    throw std::invalid_argument("affine factor has no linear part; fold it into the summand coefficient");
                }
            }
            for (const auto& c : s.gate.composed) {
                if (c.base.num_vars() != num_vars) {
                    throw std::invalid_argument("composed base length does not match num_vars");
                }
                if (c.power == 0 || c.u.degree() == 0 || !c.base.has_linear_part()) {
                    throw std::invalid_argument("composed factor is constant; fold it into the summand coefficient");
                }
            }
        }
    }

    friend bool operator==(const Depth3Circuit& a, const Depth3Circuit& b)
    {
        return a.num_vars == b.num_vars && a.summands == b.summands;
    }
};

inline CircuitParams circuit_params(const Depth3Circuit& c)
{
    CircuitParams p;
    p.top_fan_in = c.summands.size();
    for (const auto& s : c.summands) {
        p.formal_degree = std::max(p.formal_degree, s.gate.formal_degree());
    }
    return p;
}

namespace detail {

constexpr unsigned kNoBound = std::numeric_limits<unsigned>::max();

inline SparsePoly eval_univariate(const UnivariatePoly& u, const SparsePoly& arg, unsigned bound)
{
    SparsePoly acc(arg.num_vars());
    for (std::size_t i = u.coeffs.size(); i-- > 0;) {
        acc = poly_mul_truncated(acc, arg, bound);
        acc += SparsePoly::constant(arg.num_vars(), u.coeffs[i]);
    }
    return acc;
}

inline SparsePoly expand_summand(const Summand& s, std::size_t num_vars, unsigned bound)
{
    SparsePoly acc = SparsePoly::constant(num_vars, s.coeff);
    for (const auto& f : s.gate.factors) {
        if (acc.is_zero()) {
            break;
        }
        acc = poly_mul_truncated(acc, f.to_poly(), bound);
    }
    for (const auto& c : s.gate.composed) {
        if (acc.is_zero()) {
            break;
        }
        SparsePoly inner = pow_truncated(c.base.to_poly(), c.power, bound);
        acc = poly_mul_truncated(acc, eval_univariate(c.u, inner, bound), bound);
    }
    return acc;
}

} // namespace detail

/// The polynomial computed by the circuit; with a bound, all terms of x-degree > bound are dropped
/// (truncation is applied after every product, which is exact for the retained slice).
///
/// Summands are expanded concurrently when hardware allows; the result is summed in summand order.
inline SparsePoly expand(const Depth3Circuit& c, std::optional<unsigned> bound = std::nullopt)
{
    unsigned b = bound.value_or(detail::kNoBound);
    SparsePoly total(c.num_vars);
    unsigned workers = std::max(1U, std::thread::hardware_concurrency());
    if (workers == 1 || c.summands.size() < 2) {
        for (const auto& s : c.summands) {
            total += detail::expand_summand(s, c.num_vars, b);
        }
        return total;
    }
    std::vector<std::future<SparsePoly>> parts;
    parts.reserve(c.summands.size());
    for (const auto& s : c.summands) {
        parts.push_back(std::async(std::launch::async, [&s, &c, b] { return detail::expand_summand(s, c.num_vars, b); }));
    }
    for (auto& part : parts) {
        total += part.get();
    }
    return total;
}

/// Value of an affine form at a point.
inline LaurentScalar eval_affine(const AffineForm& f, std::span<const LaurentScalar> point)
{
    LaurentScalar acc = f.constant;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (!f.coeffs[i].is_zero()) {
            acc += f.coeffs[i] * point[i];
        }
    }
    return acc;
}

/// Exact value of the circuit at a point; epsilon stays formal.
inline LaurentScalar eval_circuit(const Depth3Circuit& c, std::span<const LaurentScalar> point)
{
    if (point.size() != c.num_vars) {
        throw std::invalid_argument("eval_circuit: point length does not match num_vars");
    }
    LaurentScalar total;
    for (const auto& s : c.summands) {
        LaurentScalar v = s.coeff;
        for (const auto& f : s.gate.factors) {
            v *= eval_affine(f, point);
        }
        for (const auto& cf : s.gate.composed) {
            LaurentScalar arg = eval_affine(cf.base, point).pow(cf.power);
            LaurentScalar u;
            for (std::size_t i = cf.u.coeffs.size(); i-- > 0;) {
                u = u * arg + cf.u.coeffs[i];
            }
            v *= u;
        }
        total += v;
    }
    return total;
}

/// x_i -> eps*x_i in every form, and every summand coefficient multiplied by eps^(-d).
inline Depth3Circuit epsilon_scale_circuit(const Depth3Circuit& c, unsigned d)
{
    const LaurentScalar eps = LaurentScalar::epsilon(1);
    const LaurentScalar inv = LaurentScalar::epsilon(-static_cast<int>(d));
    Depth3Circuit r = c;
    for (auto& s : r.summands) {
        s.coeff *= inv;
        for (auto& f : s.gate.factors) {
            f = f.linear_scaled(eps);
        }
        for (auto& cf : s.gate.composed) {
            cf.base = cf.base.linear_scaled(eps);
        }
    }
    return r;
}

/// True when every monomial of x-degree k the circuit can produce carries exactly eps^(k-d):
/// summand coefficients are pure eps^(-d), linear coefficients pure eps^1, constants and u
/// coefficients eps-free. The output of epsilon_scale_circuit on an eps-free circuit has this shape.
inline bool is_epsilon_graded(const Depth3Circuit& c, unsigned d)
{
    auto pure = [](const LaurentScalar& v, int k) { return v.is_zero() || (v.ord() == k && v.max_power() == k); };
    auto form_ok = [&pure](const AffineForm& f) {
        return pure(f.constant, 0) &&
               std::all_of(f.coeffs.begin(), f.coeffs.end(), [&pure](const LaurentScalar& x) { return pure(x, 1); });
    };
    for (const auto& s : c.summands) {
        if (!pure(s.coeff, -static_cast<int>(d))) {
            return false;
        }
        if (!std::all_of(s.gate.factors.begin(), s.gate.factors.end(), form_ok)) {
            return false;
        }
        for (const auto& cf : s.gate.composed) {
            if (!form_ok(cf.base) || !cf.u.is_epsilon_free()) {
                return false;
            }
        }
    }
    return true;
}

/// P = sum_i w_i * l_i^d with homogeneous linear forms l_i. Empty weights mean all ones.
struct WaringDecomposition {
    std::size_t num_vars = 0;
    unsigned degree = 1;
    std::vector<AffineForm> forms;
    std::vector<Rational> weights;

    Rational weight(std::size_t i) const { return weights.empty() ? Rational(1) : weights.at(i); }

    void validate() const
    {
        if (degree == 0) {
            throw std::invalid_argument("Waring decomposition degree must be >= 1");
        }
        if (!weights.empty() && weights.size() != forms.size()) {
            throw std::invalid_argument("Waring decomposition has mismatched weights");
        }
        for (const auto& f : forms) {
            if (f.num_vars() != num_vars) {
                throw std::invalid_argument("Waring form length does not match num_vars");
            }
            if (!f.is_homogeneous_linear()) {
                throw std::invalid_argument("Waring forms must be homogeneous linear and epsilon-free");
            }
        }
    }

    /// Exact expansion of sum_i w_i l_i^d.
    SparsePoly to_poly() const
    {
        SparsePoly p(num_vars);
        for (std::size_t i = 0; i < forms.size(); ++i) {
            p += pow(forms[i].to_poly(), degree).scaled(LaurentScalar(weight(i)));
        }
        return p;
    }
};

/// sum_t ( sum_j l_{t,j}^{b_t} )^{a_t} with a_t * b_t = d for every t.
struct Depth5PowCircuit {
    struct InnerPower {
        unsigned power = 1;
        AffineForm form;
    };
    struct Term {
        unsigned outer_power = 1;
        std::vector<InnerPower> inner;

        unsigned inner_power() const { return inner.empty() ? 1 : inner.front().power; }
    };

    std::size_t num_vars = 0;
    std::vector<Term> terms;

    /// Checks the shape invariants and returns the common degree d (0 for an empty circuit).
    unsigned validate() const
    {
        std::optional<unsigned> degree;
        for (const auto& t : terms) {
            if (t.outer_power == 0 || t.inner.empty()) {
                throw std::invalid_argument("depth-5 term needs outer power >= 1 and at least one inner form");
            }
            unsigned b = t.inner.front().power;
            for (const auto& in : t.inner) {
                if (in.power != b || b == 0) {
                    throw std::invalid_argument("inner powers within a depth-5 term must be equal and >= 1");
                }
                if (in.form.num_vars() != num_vars || !in.form.is_homogeneous_linear()) {
                    throw std::invalid_argument("depth-5 inner forms must be homogeneous linear over num_vars");
                }
            }
            unsigned d = t.outer_power * b;
            if (degree && *degree != d) {
                throw std::invalid_argument("inconsistent powers across depth-5 terms");
            }
            degree = d;
        }
        return degree.value_or(0);
    }

    SparsePoly to_poly() const
    {
        SparsePoly p(num_vars);
        for (const auto& t : terms) {
            SparsePoly inner(num_vars);
            for (const auto& in : t.inner) {
                inner += pow(in.form.to_poly(), in.power);
            }
            p += pow(inner, t.outer_power);
        }
        return p;
    }
};

} // namespace border3
