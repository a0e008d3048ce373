#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace border3;
using namespace testing_support;

namespace {

std::vector<AffineForm> unit_forms(std::size_t n)
{
    std::vector<AffineForm> f;
    for (std::size_t i = 0; i < n; ++i) {
        f.push_back(AffineForm::variable(n, i));
    }
    return f;
}

WaringDecomposition waring(std::size_t n, unsigned d, std::vector<AffineForm> forms)
{
    WaringDecomposition w;
    w.num_vars = n;
    w.degree = d;
    w.forms = std::move(forms);
    return w;
}

void expect_border(const Depth3Circuit& c, const SparsePoly& p, unsigned d)
{
    BorderReport r = verify_border(c, p, d, VerifyOptions{true});
    EXPECT_TRUE(r.pass) << to_string(r.failure_kind);
}

} // namespace

TEST(BorderComponent, Examples)
{
    Depth3Circuit c = border_component_circuit(unit_forms(2), 2, 1);
    EXPECT_EQ(expand(c), poly(2, {{{1, 0}, "1"}, {{0, 1}, "1"}, {{1, 1}, "e"}}));
    EXPECT_EQ(circuit_params(c), (CircuitParams{2, 2}));

    Depth3Circuit x = border_component_circuit(unit_forms(1), 1, 1);
    EXPECT_EQ(expand(x), var(1, 0));
    EXPECT_EQ(circuit_params(x), (CircuitParams{2, 1}));

    Depth3Circuit three = border_component_circuit(unit_forms(3), 3, 2);
    EXPECT_EQ(epsilon_slice(expand(three), 0), brute_sym(unit_forms(3), 3, 2));
}

TEST(BorderComponent, RandomFormsAgainstBruteSym)
{
    std::mt19937_64 rng(31);
    for (std::size_t m = 1; m <= 4; ++m) {
        std::vector<AffineForm> forms;
        for (std::size_t i = 0; i < m; ++i) {
            forms.push_back(random_linear_form(rng, 2));
        }
        for (unsigned d = 1; d <= m; ++d) {
            Depth3Circuit c = border_component_circuit(forms, 2, d);
            EXPECT_LE(c.summands.size(), d + 1);
            expect_border(c, brute_sym(forms, 2, d), d);
        }
    }
}

TEST(BenOr, Examples)
{
    Depth3Circuit c2 = exact_symd_ben_or(unit_forms(2), 2, 2);
    EXPECT_EQ(expand(c2), poly(2, {{{1, 1}, "1"}}));
    EXPECT_EQ(circuit_params(c2), (CircuitParams{3, 2}));

    Depth3Circuit c1 = exact_symd_ben_or(unit_forms(2), 2, 1);
    EXPECT_EQ(expand(c1), var(2, 0) + var(2, 1));
    EXPECT_EQ(circuit_params(c1), (CircuitParams{3, 2}));

    EXPECT_EQ(expand(exact_symd_ben_or(unit_forms(1), 1, 1)), var(1, 0));
}

TEST(BenOr, AllDegreesAgainstBruteSym)
{
    std::mt19937_64 rng(1);
    for (std::size_t m = 1; m <= 5; ++m) {
        std::vector<AffineForm> forms;
        for (std::size_t i = 0; i < m; ++i) {
            forms.push_back(random_linear_form(rng, 2));
        }
        for (unsigned d = 0; d <= m; ++d) {
            EXPECT_EQ(expand(exact_symd_ben_or(forms, 2, d)), brute_sym(forms, 2, d)) << m << " " << d;
        }
    }
}

TEST(WaringToSymd, Examples)
{
    SymdForms one = waring_to_symd_forms(waring(1, 1, {form({"1"})}));
    ASSERT_EQ(one.forms.size(), 1U);
    EXPECT_EQ(one.forms[0].to_poly(), var(1, 0).scaled(LaurentScalar(-1)));
    EXPECT_EQ(one.sign, -1);

    SymdForms two = waring_to_symd_forms(waring(1, 2, {form({"1"})}));
    ASSERT_EQ(two.forms.size(), 2U);
    EXPECT_EQ(two.forms[0].to_poly(), var(1, 0).scaled(LaurentScalar(-1)));
    EXPECT_EQ(two.forms[1].to_poly(), var(1, 0));

    SymdForms three = waring_to_symd_forms(waring(1, 3, {form({"1"})}));
    ASSERT_EQ(three.forms.size(), 3U);
    SparsePoly sym = brute_sym(three.forms, 1, 3).scaled(LaurentScalar(three.sign));
    EXPECT_EQ(sym, poly(1, {{{3}, "1"}}));
}

TEST(WaringToSymd, RootsOfUnityIdentity)
{
    std::mt19937_64 rng(44);
    for (unsigned d = 1; d <= 5; ++d) {
        for (std::size_t t = 1; t <= 3; ++t) {
            std::vector<AffineForm> forms;
            SparsePoly target(2);
            for (std::size_t i = 0; i < t; ++i) {
                forms.push_back(random_linear_form(rng, 2));
                target += naive_pow(forms.back().to_poly(), d);
            }
            SymdForms s = waring_to_symd_forms(waring(2, d, forms));
            EXPECT_EQ(s.forms.size(), t * d);
            EXPECT_EQ(brute_sym(s.forms, 2, d).scaled(LaurentScalar(s.sign)), target) << d << " " << t;
        }
    }
}

TEST(Fischer, Examples)
{
    WaringDecomposition w = fischer_decompose(poly(2, {{{1, 1}, "1"}}));
    EXPECT_EQ(w.forms.size(), 2U);
    EXPECT_EQ(w.to_poly(), poly(2, {{{1, 1}, "1"}}));

    WaringDecomposition x = fischer_decompose(var(1, 0));
    ASSERT_EQ(x.forms.size(), 1U);
    EXPECT_EQ(x.to_poly(), var(1, 0));

    WaringDecomposition xyz = fischer_decompose(poly(3, {{{1, 1, 1}, "1"}}));
    EXPECT_EQ(xyz.forms.size(), 4U);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(abs(xyz.weight(i)), make_rational(1, 24));
    }
    EXPECT_EQ(xyz.to_poly(), poly(3, {{{1, 1, 1}, "1"}}));
}

TEST(Fischer, AllMonomials)
{
    for (std::size_t n = 1; n <= 4; ++n) {
        for (unsigned d = 1; d <= 5; ++d) {
            for (const Exponent& e : monomials_of_degree(n, d)) {
                SparsePoly m(n);
                m.add_term(e, LaurentScalar(1));
                WaringDecomposition w = fischer_decompose(m);
                EXPECT_LE(w.forms.size(), std::size_t{1} << (d - 1));
                // Independent check of the powers through naive_pow.
                SparsePoly sum(n);
                for (std::size_t i = 0; i < w.forms.size(); ++i) {
                    sum += naive_pow(w.forms[i].to_poly(), d).scaled(LaurentScalar(w.weight(i)));
                }
                EXPECT_EQ(sum, m);
            }
        }
    }
}

TEST(NormalizeWeights, AbsorbsSignsAndPowers)
{
    WaringDecomposition w = waring(2, 2, {form({"1", "1"}), form({"1", "-1"})});
    w.weights = {make_rational(1, 4), make_rational(-1, 4)};
    auto [scale, unit] = normalize_weights(w);
    EXPECT_EQ(unit.to_poly().scaled(LaurentScalar(scale)), w.to_poly());

    WaringDecomposition cube = waring(3, 3, {form({"1", "2", "0"}), form({"0", "-1", "1/2"})});
    cube.weights = {Rational(1), Rational(-8)};
    auto [s3, u3] = normalize_weights(cube);
    EXPECT_EQ(u3.to_poly().scaled(LaurentScalar(s3)), cube.to_poly());

    WaringDecomposition bad = waring(1, 2, {form({"1"}), form({"2"})});
    bad.weights = {Rational(1), Rational(2)};
    EXPECT_THROW(normalize_weights(bad), std::invalid_argument);
}

TEST(ApproxGeneral, Examples)
{
    SparsePoly ip2 = poly(4, {{{1, 0, 1, 0}, "1"}, {{0, 1, 0, 1}, "1"}});
    Depth3Circuit c = approx_general(ip2);
    CircuitParams p = circuit_params(c);
    EXPECT_EQ(p.top_fan_in, 3U);
    EXPECT_LE(p.formal_degree, 8U);
    expect_border(c, ip2, 2);

    SparsePoly x2 = poly(1, {{{2}, "1"}});
    Depth3Circuit cx = approx_general(x2);
    EXPECT_LE(circuit_params(cx).top_fan_in, 3U);
    EXPECT_EQ(epsilon_slice(expand(cx), 0), x2);

    EXPECT_TRUE(approx_general(SparsePoly(3)).summands.empty());
}

TEST(ApproxGeneral, NodeOverride)
{
    SparsePoly p = poly(2, {{{1, 1}, "2"}, {{0, 2}, "-1/3"}});
    Depth3Circuit c = approx_general(p, std::vector<Rational>{Rational(-1), Rational(1), Rational(3)});
    expect_border(c, p, 2);
    EXPECT_THROW(approx_general(p, std::vector<Rational>{Rational(1)}), std::invalid_argument);
}

TEST(ApproxWaring, Examples)
{
    Depth3Circuit c = approx_waring(waring(1, 2, {form({"1"})}));
    EXPECT_LE(circuit_params(c).top_fan_in, 3U);
    EXPECT_LE(circuit_params(c).formal_degree, 2U);
    EXPECT_EQ(epsilon_slice(expand(c), 0), poly(1, {{{2}, "1"}}));

    Depth3Circuit xy = approx_waring(waring(2, 3, {form({"1", "0"}), form({"0", "1"})}));
    EXPECT_LE(circuit_params(xy).formal_degree, 6U);
    EXPECT_EQ(epsilon_slice(expand(xy), 0), poly(2, {{{3, 0}, "1"}, {{0, 3}, "1"}}));

    Depth3Circuit lin = approx_waring(waring(1, 1, {form({"1"})}));
    EXPECT_EQ(expand(lin), var(1, 0));
}

TEST(TruncatedExponential, Examples)
{
    EXPECT_EQ(truncated_exponential(0).coeffs, (std::vector<LaurentScalar>{LaurentScalar(1)}));
    EXPECT_EQ(truncated_exponential(1).coeffs, (std::vector<LaurentScalar>{LaurentScalar(1), LaurentScalar(1)}));
    EXPECT_EQ(truncated_exponential(3).coeffs, (std::vector<LaurentScalar>{LaurentScalar(1), LaurentScalar(1), S("1/2"),
                                                                         S("1/6")}));
}

TEST(ApproxDuality, Examples)
{
    Depth3Circuit a2 = approx_duality({form({"1"})}, 2, 1);
    EXPECT_EQ(expand(a2), poly(1, {{{2}, "1"}}));

    Depth3Circuit xy = approx_duality({form({"1", "0"}), form({"0", "1"})}, 1, 1);
    EXPECT_EQ(expand(xy), poly(2, {{{1, 0}, "1"}, {{0, 1}, "1"}, {{1, 1}, "e"}}));

    Depth3Circuit b2 = approx_duality({form({"1"})}, 1, 2);
    EXPECT_EQ(epsilon_slice(expand(b2), 0), poly(1, {{{2}, "1"}}));

    EXPECT_THROW(approx_duality({form({"1"})}, 0, 1), std::invalid_argument);
    EXPECT_THROW(approx_duality({}, 1, 1), std::invalid_argument);
}

TEST(ApproxDuality, YCoefficientIdentity)
{
    // In n+1 variables with y last: Coeff_{y^a} prod_j E_a(y l_j^b) = (sum_j l_j^b)^a / a!.
    std::mt19937_64 rng(14);
    for (unsigned k = 1; k <= 3; ++k) {
        for (unsigned a = 1; a <= 3; ++a) {
            for (unsigned b = 1; b <= 2; ++b) {
                const std::size_t n = 2;
                SparsePoly prod = SparsePoly::constant(n + 1, LaurentScalar(1));
                SparsePoly inner(n + 1);
                for (unsigned j = 0; j < k; ++j) {
                    AffineForm l = random_linear_form(rng, n);
                    std::vector<LaurentScalar> ext = l.coeffs;
                    ext.emplace_back();
                    SparsePoly lb = naive_pow(AffineForm(ext).to_poly(), b);
                    SparsePoly arg = naive_mul(var(n + 1, n), lb);
                    SparsePoly e(n + 1);
                    SparsePoly power = SparsePoly::constant(n + 1, LaurentScalar(1));
                    for (unsigned i = 0; i <= a; ++i) {
                        e += power.scaled(LaurentScalar(Rational(Rational(1) / factorial(i))));
                        power = naive_mul(power, arg);
                    }
                    prod = naive_mul(prod, e);
                    inner += lb;
                }
                SparsePoly coeff(n + 1);
                for (const auto& [ex, c] : prod.terms()) {
                    if (ex[n] == a) {
                        coeff.add_term(ex, c);
                    }
                }
                SparsePoly expected = naive_mul(naive_pow(inner, a), var(n + 1, n) * naive_pow(var(n + 1, n), a - 1))
                                          .scaled(LaurentScalar(Rational(Rational(1) / factorial(a))));
                EXPECT_EQ(coeff, expected) << k << " " << a << " " << b;
            }
        }
    }
}

TEST(ApproxDuality, RandomBorders)
{
    std::mt19937_64 rng(23);
    for (unsigned k = 1; k <= 3; ++k) {
        for (unsigned a = 1; a <= 2; ++a) {
            for (unsigned b = 1; b <= 2; ++b) {
                std::vector<AffineForm> forms;
                SparsePoly inner(2);
                for (unsigned j = 0; j < k; ++j) {
                    forms.push_back(random_linear_form(rng, 2));
                    inner += naive_pow(forms.back().to_poly(), b);
                }
                Depth3Circuit c = approx_duality(forms, a, b);
                CircuitParams p = circuit_params(c);
                EXPECT_LE(p.top_fan_in, a + 1);
                EXPECT_LE(p.formal_degree, k * a * b);
                expect_border(c, naive_pow(inner, a), a * b);
            }
        }
    }
}

TEST(Depth5, Examples)
{
    Depth5PowCircuit one;
    one.num_vars = 1;
    one.terms.push_back({2, {{1, form({"1"})}}});
    EXPECT_EQ(expand(depth5_to_depth3(one)), expand(approx_duality({form({"1"})}, 2, 1)));
    EXPECT_EQ(expand(depth5_to_depth3(one)), poly(1, {{{2}, "1"}}));

    Depth5PowCircuit two;
    two.num_vars = 2;
    two.terms.push_back({1, {{2, form({"1", "0"})}}});
    two.terms.push_back({1, {{2, form({"0", "1"})}}});
    Depth3Circuit c = depth5_to_depth3(two);
    EXPECT_LE(circuit_params(c).top_fan_in, 4U);
    EXPECT_EQ(epsilon_slice(expand(c), 0), poly(2, {{{2, 0}, "1"}, {{0, 2}, "1"}}));

    Depth5PowCircuit m2;
    m2.num_vars = 2;
    m2.terms.push_back({1, {{1, form({"1", "0"})}, {1, form({"0", "1"})}}});
    EXPECT_EQ(expand(depth5_to_depth3(m2)), expand(approx_duality({form({"1", "0"}), form({"0", "1"})}, 1, 1)));
}
