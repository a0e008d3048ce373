#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "extraction.hpp"

namespace border3 {

using NodeOverride = std::optional<std::vector<Rational>>;

namespace detail {

inline void require_homogeneous_forms(const std::vector<AffineForm>& forms, std::size_t num_vars)
{
    for (const auto& f : forms) {
        if (f.num_vars() != num_vars) {
            throw std::invalid_argument("linear form length does not match num_vars");
        }
        if (!f.is_homogeneous_linear()) {
            throw std::invalid_argument("forms must be homogeneous linear and epsilon-free");
        }
    }
}

inline std::vector<Rational> pick_nodes(const NodeOverride& nodes, std::size_t count)
{
    if (!nodes) {
        return default_nodes(count);
    }
    if (nodes->size() != count) {
        throw std::invalid_argument("node override has " + std::to_string(nodes->size()) + " entries, " +
                                    std::to_string(count) + " required");
    }
    return *nodes;
}

/// sum_j weights_j * prod_i (nodes_j * l_i + 1); factors that collapse to the constant 1 are dropped.
inline Depth3Circuit node_product_circuit(const std::vector<AffineForm>& forms, std::size_t num_vars,
                                          const std::vector<Rational>& nodes, const std::vector<Rational>& weights)
{
    Depth3Circuit c(num_vars);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (weights[j] == 0) {
            continue;
        }
        Summand s;
        s.coeff = LaurentScalar(weights[j]);
        for (const auto& form : forms) {
            AffineForm f = form.linear_scaled(LaurentScalar(nodes[j])).with_constant(LaurentScalar(1));
            if (f.has_linear_part()) {
                s.gate.factors.push_back(std::move(f));
            }
        }
        c.summands.push_back(std::move(s));
    }
    return c;
}

inline std::optional<Integer> exact_root(const Integer& value, unsigned d)
{
    Integer r;
    if (mpz_root(r.get_mpz_t(), value.get_mpz_t(), d) != 0) {
        return r;
    }
    return std::nullopt;
}

} // namespace detail

/// Degree-d border circuit for SYM_d(forms): sum_j beta_j prod_i (alpha_j l_i + 1), epsilon-scaled at d.
/// Top fan-in d+1, formal degree m. The expansion is SYM_d(forms) + eps*Q with Q in x-degrees > d.
inline Depth3Circuit border_component_circuit(const std::vector<AffineForm>& forms, std::size_t num_vars,
                                              unsigned d, const NodeOverride& nodes = std::nullopt)
{
    detail::require_homogeneous_forms(forms, num_vars);
    if (d > forms.size()) {
        return Depth3Circuit(num_vars);
    }
    ExtractionScheme scheme = lagrange_extraction_coefficients(detail::pick_nodes(nodes, d + 1), d);
    Depth3Circuit raw = detail::node_product_circuit(forms, num_vars, scheme.nodes, scheme.weights);
    return epsilon_scale_circuit(raw, d);
}

/// Ben-Or's exact circuit for SYM_d(forms): m+1 nodes and the full inverse-Vandermonde row for index d.
inline Depth3Circuit exact_symd_ben_or(const std::vector<AffineForm>& forms, std::size_t num_vars, unsigned d,
                                       const NodeOverride& nodes = std::nullopt)
{
    detail::require_homogeneous_forms(forms, num_vars);
    if (d > forms.size()) {
        return Depth3Circuit(num_vars);
    }
    std::vector<Rational> pts = detail::pick_nodes(nodes, forms.size() + 1);
    std::vector<Rational> row = interpolation_row(pts, d);
    return detail::node_product_circuit(forms, num_vars, pts, row);
}

/// -SYM_d(forms) for the roots-of-unity expansion of a Waring decomposition.
struct SymdForms {
    std::vector<AffineForm> forms;
    int sign = -1;
};

/// { -omega^r l_i : 0 <= r < d } with omega a primitive d-th root of unity, and sign -1:
/// -SYM_d of the returned forms equals sum_i l_i^d.
inline SymdForms waring_to_symd_forms(const WaringDecomposition& decomp)
{
    decomp.validate();
    for (std::size_t i = 0; i < decomp.forms.size(); ++i) {
        if (decomp.weight(i) != 1) {
            throw std::invalid_argument("waring_to_symd_forms expects unit weights");
        }
    }
    unsigned base_order = 1;
    for (const auto& f : decomp.forms) {
        base_order = std::lcm(base_order, f.order());
    }
    unsigned order = std::lcm(base_order, decomp.degree);
    CycloElem omega = CycloElem::root_of_unity(order, static_cast<long>(order / decomp.degree));
    SymdForms out;
    out.forms.reserve(decomp.forms.size() * decomp.degree);
    for (const auto& form : decomp.forms) {
        CycloElem power(Rational(-1), order);
        for (unsigned r = 0; r < decomp.degree; ++r) {
            out.forms.push_back(form.scaled(LaurentScalar(power)));
            power *= omega;
        }
    }
    return out;
}

/// Rewrites sum_i w_i l_i^d as scale * sum_i (g_i l_i)^d with unit weights. The magnitude ratios
/// |w_i| / |w_0| must be d-th powers of rationals; a negative sign is absorbed by a d-th root of -1
/// (-1 for odd d, a primitive 2d-th root of unity for even d).
inline std::pair<Rational, WaringDecomposition> normalize_weights(const WaringDecomposition& decomp)
{
    decomp.validate();
    WaringDecomposition unit;
    unit.num_vars = decomp.num_vars;
    unit.degree = decomp.degree;
    if (decomp.forms.empty()) {
        return {Rational(1), unit};
    }
    Rational scale = Rational(abs(decomp.weight(0)));
    if (scale == 0) {
        throw std::invalid_argument("Waring weights must be nonzero");
    }
    const unsigned d = decomp.degree;
    for (std::size_t i = 0; i < decomp.forms.size(); ++i) {
        Rational w = decomp.weight(i);
        if (w == 0) {
            continue;
        }
        Rational ratio = Rational(abs(w) / scale);
        auto num = detail::exact_root(ratio.get_num(), d);
        auto den = detail::exact_root(ratio.get_den(), d);
        if (!num || !den) {
            throw std::invalid_argument("Waring weight ratio is not a rational d-th power");
        }
        LaurentScalar factor(Rational(*num, *den));
        if (w < 0) {
            if (d % 2 == 1) {
                factor = -factor;
            } else {
                unsigned order = std::lcm(decomp.forms[i].order(), 2 * d);
                factor *= LaurentScalar(CycloElem::root_of_unity(order, static_cast<long>(order / (2 * d))));
            }
        }
        unit.forms.push_back(decomp.forms[i].scaled(factor));
    }
    return {scale, std::move(unit)};
}

/// Fischer's formula per monomial. For c*x_{s_1}...x_{s_d}, with the coefficient folded into the first slot,
///   c x_{s_1}...x_{s_d} = 1/(2^(d-1) d!) sum_{r in {+-1}^(d-1)} (prod r) (c x_{s_1} + r_1 x_{s_2} + ... )^d.
/// Every weight is +-1/(2^(d-1) d!). Degree 1 is returned as the single form P itself.
inline WaringDecomposition fischer_decompose(const SparsePoly& p, std::optional<unsigned> degree = std::nullopt)
{
    WaringDecomposition out;
    out.num_vars = p.num_vars();
    if (p.is_zero()) {
        out.degree = degree.value_or(1);
        return out;
    }
    const unsigned d = *p.degree();
    if (!p.is_homogeneous(d) || (degree && *degree != d)) {
        throw std::invalid_argument("fischer_decompose: polynomial is not homogeneous of the stated degree");
    }
    if (!p.is_epsilon_free()) {
        throw std::invalid_argument("fischer_decompose: coefficients must be epsilon-free");
    }
    if (d == 0) {
        throw std::invalid_argument("fischer_decompose: degree-0 polynomials have no Waring decomposition");
    }
    out.degree = d;
    if (d == 1) {
        AffineForm f{std::vector<LaurentScalar>(p.num_vars())};
        for (const auto& [e, c] : p.terms()) {
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 1) {
                    f.coeffs[i] = c;
                }
            }
        }
        out.forms.push_back(std::move(f));
        out.weights.emplace_back(1);
        return out;
    }
    const Rational unit = Rational(1) / (pow(Rational(2), d - 1) * factorial(d));
    for (const auto& [e, c] : p.terms()) {
        std::vector<std::size_t> slots;
        for (std::size_t i = 0; i < e.size(); ++i) {
            slots.insert(slots.end(), e[i], i);
        }
        const std::size_t signs = std::size_t{1} << (d - 1);
        for (std::size_t mask = 0; mask < signs; ++mask) {
            AffineForm f{std::vector<LaurentScalar>(p.num_vars())};
            f.coeffs[slots[0]] += c;
            int parity = 1;
            for (unsigned k = 1; k < d; ++k) {
                bool negative = ((mask >> (k - 1)) & 1U) != 0;
                f.coeffs[slots[k]] += LaurentScalar(negative ? -1 : 1);
                parity = negative ? -parity : parity;
            }
            if (!f.has_linear_part()) {
                continue;
            }
            out.forms.push_back(std::move(f));
            out.weights.push_back(parity > 0 ? unit : -unit);
        }
    }
    return out;
}

/// Waring -> roots-of-unity SYM_d -> border circuit. Top fan-in <= d+1, formal degree <= d*T.
inline Depth3Circuit approx_waring(const WaringDecomposition& decomp, const NodeOverride& nodes = std::nullopt)
{
    decomp.validate();
    auto [scale, unit] = normalize_weights(decomp);
    if (unit.forms.empty()) {
        return Depth3Circuit(decomp.num_vars);
    }
    SymdForms sym = waring_to_symd_forms(unit);
    Depth3Circuit c = border_component_circuit(sym.forms, decomp.num_vars, decomp.degree, nodes);
    LaurentScalar factor(Rational(scale * sym.sign));
    for (auto& s : c.summands) {
        s.coeff *= factor;
    }
    return c;
}

/// Every homogeneous degree-d P: Fischer -> roots of unity -> border circuit.
/// Top fan-in <= d+1, formal degree <= d * 2^(d-1) * sparsity(P).
inline Depth3Circuit approx_general(const SparsePoly& p, const NodeOverride& nodes = std::nullopt)
{
    if (p.is_zero()) {
        return Depth3Circuit(p.num_vars());
    }
    return approx_waring(fischer_decompose(p), nodes);
}

/// E_a(y) = 1 + y + y^2/2! + ... + y^a/a!
inline UnivariatePoly truncated_exponential(unsigned a)
{
    UnivariatePoly e;
    e.coeffs.reserve(a + 1);
    for (unsigned k = 0; k <= a; ++k) {
        e.coeffs.emplace_back(Rational(1) / factorial(k));
    }
    return e;
}

/// Border circuit for (sum_j l_j^b)^a from the y^a coefficient of prod_j E_a(y l_j^b):
/// a+1 nodes alpha_u, summands a! beta_u prod_j E_a(alpha_u l_j^b), epsilon-scaled at a*b.
/// Top fan-in a+1, formal degree k*a*b.
inline Depth3Circuit approx_duality(const std::vector<AffineForm>& forms, unsigned a, unsigned b,
                                    const NodeOverride& nodes = std::nullopt)
{
    if (a == 0 || b == 0) {
        throw std::invalid_argument("approx_duality: a and b must be >= 1");
    }
    if (forms.empty()) {
        throw std::invalid_argument("approx_duality: at least one form is required");
    }
    const std::size_t n = forms.front().num_vars();
    detail::require_homogeneous_forms(forms, n);
    ExtractionScheme scheme = lagrange_extraction_coefficients(detail::pick_nodes(nodes, a + 1), a);
    const UnivariatePoly exp_a = truncated_exponential(a);
    const Rational a_fact = factorial(a);
    Depth3Circuit raw(n);
    for (std::size_t u = 0; u < scheme.nodes.size(); ++u) {
        Summand s;
        s.coeff = LaurentScalar(Rational(a_fact * scheme.weights[u]));
        if (scheme.nodes[u] != 0) {
            UnivariatePoly at_node = exp_a.rescaled(LaurentScalar(scheme.nodes[u]));
            for (const auto& form : forms) {
                if (form.has_linear_part()) {
                    s.gate.composed.push_back(ComposedFactor{at_node, form, b});
                }
            }
        }
        raw.summands.push_back(std::move(s));
    }
    return epsilon_scale_circuit(raw, a * b);
}

/// Sum of approx_duality over the terms of a depth-5 powering circuit.
/// Top fan-in <= T*(a+1), formal degree <= max_t M_t * a * b.
inline Depth3Circuit depth5_to_depth3(const Depth5PowCircuit& c5, const NodeOverride& nodes = std::nullopt)
{
    c5.validate();
    Depth3Circuit out(c5.num_vars);
    for (const auto& term : c5.terms) {
        std::vector<AffineForm> forms;
        forms.reserve(term.inner.size());
        for (const auto& in : term.inner) {
            forms.push_back(in.form);
        }
        Depth3Circuit part = approx_duality(forms, term.outer_power, term.inner_power(), nodes);
        for (auto& s : part.summands) {
            out.summands.push_back(std::move(s));
        }
    }
    return out;
}

} // namespace border3
