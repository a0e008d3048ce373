#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "circuit.hpp"
#include "numeric_split.hpp"
#include "scalar_io.hpp"
#include "verify.hpp"

namespace border3 {

// File formats. Every scalar is a string in the scalar text format; "w" refers to the primitive
// root of unity of the top-level "order" field, which is omitted when no coefficient needs it.
//
//   polynomial:  {"n": 2, "terms": [{"exp": [1, 1], "coeff": "3/2"}]}
//   circuit:     {"n": 2, "summands": [{"coeff": "e^-1", "factors": [["e^1", "0", "1"]],
//                 "composed": [{"u": ["1", "1"], "base": ["e^1", "0", "0"], "power": 2}]}], "meta": {...}}
//   waring:      {"n": 2, "d": 3, "forms": [["1", "0"], ["0", "1"]], "weights": ["1", "1"]}
//   duality:     {"n": 1, "a": 2, "b": 1, "forms": [["1"]]}
//   depth-5:     {"n": 2, "terms": [{"a": 1, "inner": [{"b": 2, "form": ["1", "0"]}]}]}
//
// Affine forms are n linear coefficients followed by the constant; homogeneous inputs may omit
// the constant. Terms are written in graded lexicographic order.

using Json = nlohmann::ordered_json;

namespace detail {

inline unsigned file_order(unsigned order) { return totient(order) >= 2 ? order : 1; }

inline void put_order(Json& j, unsigned order)
{
    if (order != 1) {
        j["order"] = order;
    }
}

inline unsigned get_order(const Json& j)
{
    if (!j.contains("order")) {
        return 1;
    }
    long order = j.at("order").get<long>();
    if (order < 1 || order > 100000) {
        throw parse_error("order must be a positive integer");
    }
    return static_cast<unsigned>(order);
}

inline std::string scalar_text(const LaurentScalar& v, unsigned order)
{
    // Values whose coefficients are all rational serialize identically at any order.
    unsigned own = v.order();
    return to_string(v, order % own == 0 ? order : own);
}

inline LaurentScalar scalar_from(const Json& j, unsigned order)
{
    if (!j.is_string()) {
        throw parse_error("scalar must be a JSON string");
    }
    return parse_scalar(j.get<std::string>(), order);
}

inline std::size_t get_size(const Json& j, const char* key)
{
    long v = j.at(key).get<long>();
    if (v < 0) {
        throw parse_error(std::string(key) + " must be non-negative");
    }
    return static_cast<std::size_t>(v);
}

inline unsigned get_positive(const Json& j, const char* key)
{
    long v = j.at(key).get<long>();
    if (v < 1 || v > 1000) {
        throw parse_error(std::string(key) + " must be a positive integer (at most 1000)");
    }
    return static_cast<unsigned>(v);
}

inline Json form_to_json(const AffineForm& f, unsigned order, bool with_constant)
{
    Json arr = Json::array();
    for (const auto& c : f.coeffs) {
        arr.push_back(scalar_text(c, order));
    }
    if (with_constant) {
        arr.push_back(scalar_text(f.constant, order));
    }
    return arr;
}

inline AffineForm form_from_json(const Json& j, std::size_t n, unsigned order, bool require_constant)
{
    if (!j.is_array()) {
        throw parse_error("affine form must be an array of scalar strings");
    }
    if (j.size() != n + 1 && (require_constant || j.size() != n)) {
        throw parse_error("affine form has " + std::to_string(j.size()) + " entries, expected " +
                          (require_constant ? std::to_string(n + 1) : std::to_string(n) + " or " + std::to_string(n + 1)));
    }
    AffineForm f;
    f.coeffs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        f.coeffs.push_back(scalar_from(j[i], order));
    }
    if (j.size() == n + 1) {
        f.constant = scalar_from(j[n], order);
    }
    return f;
}

inline std::vector<AffineForm> homogeneous_forms_from_json(const Json& j, std::size_t n, unsigned order)
{
    std::vector<AffineForm> forms;
    for (const auto& fj : j) {
        AffineForm f = form_from_json(fj, n, order, false);
        if (!f.is_homogeneous_linear()) {
            throw parse_error("forms must be homogeneous linear (zero constant, epsilon-free)");
        }
        forms.push_back(std::move(f));
    }
    return forms;
}

template <typename Fn>
auto guarded(Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace detail

inline Json poly_to_json(const SparsePoly& p)
{
    unsigned order = detail::file_order(p.order());
    Json j;
    j["n"] = p.num_vars();
    detail::put_order(j, order);
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        terms.push_back(Json{{"exp", e}, {"coeff", detail::scalar_text(c, order)}});
    }
    j["terms"] = std::move(terms);
    return j;
}

inline SparsePoly poly_from_json(const Json& j)
{
    return detail::guarded([&] {
        std::size_t n = detail::get_size(j, "n");
        unsigned order = detail::get_order(j);
        SparsePoly p(n);
        for (const auto& t : j.at("terms")) {
            Exponent e = t.at("exp").get<Exponent>();
            if (e.size() != n) {
                throw parse_error("term exponent length does not match n");
            }
            p.add_term(std::move(e), detail::scalar_from(t.at("coeff"), order));
        }
        return p;
    });
}

inline Json circuit_to_json(const Depth3Circuit& c, const Json& meta = Json())
{
    unsigned order = detail::file_order(c.order());
    Json j;
    j["n"] = c.num_vars;
    detail::put_order(j, order);
    Json summands = Json::array();
    for (const auto& s : c.summands) {
        Json sj;
        sj["coeff"] = detail::scalar_text(s.coeff, order);
        Json factors = Json::array();
        for (const auto& f : s.gate.factors) {
            factors.push_back(detail::form_to_json(f, order, true));
        }
        sj["factors"] = std::move(factors);
        if (!s.gate.composed.empty()) {
            Json composed = Json::array();
            for (const auto& cf : s.gate.composed) {
                Json u = Json::array();
                for (const auto& uc : cf.u.coeffs) {
                    u.push_back(detail::scalar_text(uc, order));
                }
                composed.push_back(
                    Json{{"u", std::move(u)}, {"base", detail::form_to_json(cf.base, order, true)}, {"power", cf.power}});
            }
            sj["composed"] = std::move(composed);
        }
        summands.push_back(std::move(sj));
    }
    j["summands"] = std::move(summands);
    if (!meta.is_null()) {
        j["meta"] = meta;
    }
    return j;
}

inline Depth3Circuit circuit_from_json(const Json& j)
{
    return detail::guarded([&] {
        std::size_t n = detail::get_size(j, "n");
        unsigned order = detail::get_order(j);
        Depth3Circuit c(n);
        for (const auto& sj : j.at("summands")) {
            Summand s;
            s.coeff = detail::scalar_from(sj.at("coeff"), order);
            if (sj.contains("factors")) {
                for (const auto& fj : sj.at("factors")) {
                    s.gate.factors.push_back(detail::form_from_json(fj, n, order, true));
                }
            }
            if (sj.contains("composed")) {
                for (const auto& cj : sj.at("composed")) {
                    ComposedFactor cf;
                    for (const auto& uc : cj.at("u")) {
                        cf.u.coeffs.push_back(detail::scalar_from(uc, order));
                    }
                    cf.base = detail::form_from_json(cj.at("base"), n, order, true);
                    cf.power = detail::get_positive(cj, "power");
                    s.gate.composed.push_back(std::move(cf));
                }
            }
            c.summands.push_back(std::move(s));
        }
        try {
            c.validate();
        } catch (const std::invalid_argument& e) {
            throw parse_error(e.what());
        }
        return c;
    });
}

inline Json waring_to_json(const WaringDecomposition& w)
{
    unsigned order = 1;
    for (const auto& f : w.forms) {
        order = std::lcm(order, f.order());
    }
    order = detail::file_order(order);
    Json j;
    j["n"] = w.num_vars;
    j["d"] = w.degree;
    detail::put_order(j, order);
    Json forms = Json::array();
    for (const auto& f : w.forms) {
        forms.push_back(detail::form_to_json(f, order, false));
    }
    j["forms"] = std::move(forms);
    if (!w.weights.empty()) {
        Json weights = Json::array();
        for (const auto& r : w.weights) {
            weights.push_back(to_string(r));
        }
        j["weights"] = std::move(weights);
    }
    return j;
}

inline WaringDecomposition waring_from_json(const Json& j)
{
    return detail::guarded([&] {
        WaringDecomposition w;
        w.num_vars = detail::get_size(j, "n");
        w.degree = detail::get_positive(j, "d");
        unsigned order = detail::get_order(j);
        w.forms = detail::homogeneous_forms_from_json(j.at("forms"), w.num_vars, order);
        if (j.contains("weights")) {
            for (const auto& r : j.at("weights")) {
                w.weights.push_back(parse_rational(r.get<std::string>()));
            }
            if (w.weights.size() != w.forms.size()) {
                throw parse_error("weights and forms differ in length");
            }
        }
        return w;
    });
}

/// Input of the duality construction: (sum_j l_j^b)^a.
struct DualityInput {
    std::size_t num_vars = 0;
    unsigned a = 1;
    unsigned b = 1;
    std::vector<AffineForm> forms;

    SparsePoly target() const
    {
        SparsePoly inner(num_vars);
        for (const auto& f : forms) {
            inner += pow(f.to_poly(), b);
        }
        return pow(inner, a);
    }
};

inline DualityInput duality_from_json(const Json& j)
{
    return detail::guarded([&] {
        DualityInput in;
        in.num_vars = detail::get_size(j, "n");
        in.a = detail::get_positive(j, "a");
        in.b = detail::get_positive(j, "b");
        in.forms = detail::homogeneous_forms_from_json(j.at("forms"), in.num_vars, detail::get_order(j));
        if (in.forms.empty()) {
            throw parse_error("duality input needs at least one form");
        }
        return in;
    });
}

inline Json depth5_to_json(const Depth5PowCircuit& c5)
{
    unsigned order = 1;
    for (const auto& t : c5.terms) {
        for (const auto& in : t.inner) {
            order = std::lcm(order, in.form.order());
        }
    }
    order = detail::file_order(order);
    Json j;
    j["n"] = c5.num_vars;
    detail::put_order(j, order);
    Json terms = Json::array();
    for (const auto& t : c5.terms) {
        Json inner = Json::array();
        for (const auto& in : t.inner) {
            inner.push_back(Json{{"b", in.power}, {"form", detail::form_to_json(in.form, order, false)}});
        }
        terms.push_back(Json{{"a", t.outer_power}, {"inner", std::move(inner)}});
    }
    j["terms"] = std::move(terms);
    return j;
}

inline Depth5PowCircuit depth5_from_json(const Json& j)
{
    return detail::guarded([&] {
        Depth5PowCircuit c5;
        c5.num_vars = detail::get_size(j, "n");
        unsigned order = detail::get_order(j);
        for (const auto& tj : j.at("terms")) {
            Depth5PowCircuit::Term t;
            t.outer_power = detail::get_positive(tj, "a");
            for (const auto& ij : tj.at("inner")) {
                Depth5PowCircuit::InnerPower in;
                in.power = detail::get_positive(ij, "b");
                Json single = Json::array({ij.at("form")});
                in.form = detail::homogeneous_forms_from_json(single, c5.num_vars, order).front();
                t.inner.push_back(std::move(in));
            }
            c5.terms.push_back(std::move(t));
        }
        return c5;
    });
}

inline Json report_to_json(const BorderReport& r)
{
    Json j;
    j["verdict"] = r.pass ? "pass" : "fail";
    j["failure_kind"] = to_string(r.failure_kind);
    j["method"] = to_string(r.method);
    j["degree"] = r.degree;
    j["params"] = Json{{"top_fan_in", r.params.top_fan_in}, {"formal_degree", r.params.formal_degree}};
    j["truncation_complete"] = r.truncation_complete;
    if (r.witness_monomial) {
        j["witness"] = Json{{"monomial", *r.witness_monomial}, {"coeff", to_string(r.witness_coeff)}};
    } else if (r.witness_point) {
        Json pt = Json::array();
        for (const auto& v : *r.witness_point) {
            pt.push_back(to_string(v));
        }
        j["witness"] = Json{{"point", std::move(pt)},
                            {"value", to_string(r.witness_value)},
                            {"target", to_string(r.witness_target)}};
    } else {
        j["witness"] = nullptr;
    }
    if (r.method == VerifyMethod::random) {
        j["trials"] = r.trials;
        j["seed"] = r.seed;
        j["range"] = r.range;
        j["error_bound"] = r.error_bound;
    }
    return j;
}

inline Json split_to_json(const NumericSplit& s)
{
    auto cplx = [](Complex z) { return Json::array({z.real(), z.imag()}); };
    Json j;
    j["leading"] = cplx(s.leading);
    Json roots = Json::array();
    for (const auto& r : s.roots) {
        roots.push_back(cplx(r));
    }
    j["roots"] = std::move(roots);
    Json factors = Json::array();
    for (const auto& f : s.factors) {
        Json coeffs = Json::array();
        for (const auto& c : f.coeffs) {
            coeffs.push_back(cplx(c));
        }
        factors.push_back(Json{{"coeffs", std::move(coeffs)}, {"eps_power", f.eps_power}, {"constant", cplx(f.constant)}});
    }
    j["factors"] = std::move(factors);
    j["residual"] = s.residual;
    return j;
}

inline Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw parse_error("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << j.dump(2) << '\n';
}

} // namespace border3
