#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "construct.hpp"
#include "json_io.hpp"
#include "numeric_split.hpp"
#include "verify.hpp"

namespace border3::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInputError = 2 };

struct JobSpec {
    std::string command;
    std::vector<std::string> inputs;
    std::optional<std::string> out;
    NodeOverride nodes;
    bool no_verify = false;
    std::optional<std::size_t> random_trials;
    std::uint64_t seed = 1;
    bool full_expand = false;
    std::optional<unsigned> trunc;
    std::optional<Rational> split_tol;
    std::optional<unsigned> degree;
};

/// "0,1,5/2" -> {0, 1, 5/2}
inline std::vector<Rational> parse_node_list(const std::string& text)
{
    std::vector<Rational> nodes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto first = item.find_first_not_of(" \t");
        auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) {
            throw parse_error("empty entry in node list '" + text + "'");
        }
        nodes.push_back(parse_rational(item.substr(first, last - first + 1)));
    }
    if (nodes.empty()) {
        throw parse_error("empty node list");
    }
    return nodes;
}

struct Synthesis {
    std::string construction;
    Depth3Circuit circuit;
    SparsePoly target;
    unsigned degree = 0;
    CircuitParams bound;
    Json extra_bounds = Json::object();
};

namespace detail {

inline Synthesis synth_general(const JobSpec& job)
{
    SparsePoly p = poly_from_json(read_json_file(job.inputs.at(0)));
    Synthesis s;
    s.construction = "synth-general";
    s.target = p;
    if (p.is_zero()) {
        s.degree = 0;
        s.circuit = Depth3Circuit(p.num_vars());
        s.bound = {1, 0};
        return s;
    }
    const unsigned d = *p.degree();
    if (!p.is_homogeneous(d) || !p.is_epsilon_free()) {
        throw std::invalid_argument("synth-general needs a homogeneous, epsilon-free polynomial");
    }
    s.degree = d;
    s.circuit = approx_general(p, job.nodes);
    const auto n = static_cast<unsigned>(p.num_vars());
    Integer general_bound = Integer(d) * (Integer(1) << d) * binomial(n + d - 1, d - 1);
    s.bound = {d + 1, static_cast<unsigned>(general_bound.get_ui())};
    Integer construction = Integer(d) * (Integer(1) << (d - 1)) * Integer(static_cast<unsigned long>(p.size()));
    s.extra_bounds["construction_formal_degree"] = construction.get_ui();
    return s;
}

inline Synthesis synth_waring(const JobSpec& job)
{
    WaringDecomposition w = waring_from_json(read_json_file(job.inputs.at(0)));
    w.validate();
    Synthesis s;
    s.construction = "synth-waring";
    s.degree = w.degree;
    s.target = w.to_poly();
    s.circuit = approx_waring(w, job.nodes);
    s.bound = {w.degree + 1, w.degree * static_cast<unsigned>(w.forms.size())};
    return s;
}

inline Synthesis synth_duality(const JobSpec& job)
{
    DualityInput in = duality_from_json(read_json_file(job.inputs.at(0)));
    Synthesis s;
    s.construction = "synth-duality";
    s.degree = in.a * in.b;
    s.target = in.target();
    s.circuit = approx_duality(in.forms, in.a, in.b, job.nodes);
    s.bound = {in.a + 1, static_cast<unsigned>(in.forms.size()) * in.a * in.b};
    return s;
}

inline Synthesis synth_chasm(const JobSpec& job)
{
    Depth5PowCircuit c5 = depth5_from_json(read_json_file(job.inputs.at(0)));
    Synthesis s;
    s.construction = "synth-chasm";
    s.degree = c5.validate();
    s.target = c5.to_poly();
    s.circuit = depth5_to_depth3(c5, job.nodes);
    unsigned fan_in = 0;
    unsigned degree = 0;
    for (const auto& t : c5.terms) {
        fan_in += t.outer_power + 1;
        degree = std::max(degree, static_cast<unsigned>(t.inner.size()) * t.outer_power * t.inner_power());
    }
    s.bound = {fan_in, degree};
    return s;
}

inline Json params_json(const CircuitParams& p)
{
    return Json{{"top_fan_in", p.top_fan_in}, {"formal_degree", p.formal_degree}};
}

inline bool within(const CircuitParams& p, const CircuitParams& bound)
{
    return p.top_fan_in <= bound.top_fan_in && p.formal_degree <= bound.formal_degree;
}

inline VerifyOptions verify_options(const JobSpec& job)
{
    VerifyOptions o;
    o.full_expand = job.full_expand;
    return o;
}

/// Runs the exact (and optionally random) verifier; returns the JSON summary and the combined verdict.
inline std::pair<Json, bool> run_verification(const JobSpec& job, const Depth3Circuit& c, const SparsePoly& target,
                                              unsigned degree)
{
    Json j;
    BorderReport exact = verify_border(c, target, degree, verify_options(job));
    bool ok = exact.pass;
    j["exact"] = report_to_json(exact);
    if (job.random_trials) {
        BorderReport rnd = verify_border_random(c, target, degree, *job.random_trials, job.seed);
        ok = ok && rnd.pass;
        j["random"] = report_to_json(rnd);
    }
    return {j, ok};
}

inline int run_synth(const JobSpec& job, std::ostream& out, std::ostream& err)
{
    Synthesis s;
    if (job.command == "synth-general") {
        s = synth_general(job);
    } else if (job.command == "synth-waring") {
        s = synth_waring(job);
    } else if (job.command == "synth-duality") {
        s = synth_duality(job);
    } else {
        s = synth_chasm(job);
    }

    Json bound = params_json(s.bound);
    for (const auto& [k, v] : s.extra_bounds.items()) {
        bound[k] = v;
    }
    Json meta;
    meta["construction"] = s.construction;
    meta["degree"] = s.degree;
    meta["bound"] = bound;
    meta["target"] = poly_to_json(s.target);
    const std::string text = circuit_to_json(s.circuit, meta).dump(2) + "\n";

    if (job.out) {
        std::ofstream file(*job.out);
        if (!file) {
            throw std::runtime_error("cannot write '" + *job.out + "'");
        }
        file << text;
    } else {
        out << text;
    }
    std::ostream& summary_stream = job.out ? out : err;

    const CircuitParams params = circuit_params(s.circuit);
    Json summary;
    summary["construction"] = s.construction;
    summary["params"] = params_json(params);
    summary["bound"] = bound;
    bool ok = within(params, s.bound);
    summary["within_bound"] = ok;

    if (!job.no_verify) {
        // Re-read what was emitted so the verdict covers the file, not the in-memory circuit.
        Json emitted = job.out ? read_json_file(*job.out) : Json::parse(text);
        Depth3Circuit reread = circuit_from_json(emitted);
        SparsePoly target = poly_from_json(emitted.at("meta").at("target"));
        auto [report, verified] = run_verification(job, reread, target, s.degree);
        summary["verify"] = report;
        ok = ok && verified;
    }

    if (job.split_tol) {
        Json splits = Json::array();
        try {
            for (std::size_t i = 0; i < s.circuit.summands.size(); ++i) {
                for (const auto& cf : s.circuit.summands[i].gate.composed) {
                    Json sj = split_to_json(numeric_split_gate(cf, *job.split_tol));
                    sj["summand"] = i;
                    splits.push_back(std::move(sj));
                }
            }
        } catch (const std::runtime_error& e) {
            summary["numeric_split_error"] = e.what();
            ok = false;
        }
        summary["numeric_split"] = std::move(splits);
    }

    summary_stream << summary.dump(2) << '\n';
    return ok ? kOk : kVerifyFailed;
}

inline int run_verify(const JobSpec& job, std::ostream& out)
{
    Json cj = read_json_file(job.inputs.at(0));
    Depth3Circuit c = circuit_from_json(cj);
    SparsePoly target;
    if (job.inputs.size() > 1) {
        target = poly_from_json(read_json_file(job.inputs[1]));
    } else if (cj.contains("meta") && cj["meta"].contains("target")) {
        target = poly_from_json(cj["meta"]["target"]);
    } else {
        throw std::invalid_argument("verify needs a target polynomial file or a circuit with meta.target");
    }
    unsigned degree = 0;
    if (job.degree) {
        degree = *job.degree;
    } else if (cj.contains("meta") && cj["meta"].contains("degree")) {
        degree = cj["meta"]["degree"].get<unsigned>();
    } else if (!target.is_zero()) {
        degree = *target.degree();
    }
    if (!target.is_zero() && !target.is_homogeneous(degree)) {
        throw std::invalid_argument("target polynomial is not homogeneous of degree " + std::to_string(degree));
    }
    auto [report, ok] = run_verification(job, c, target, degree);
    out << report.dump(2) << '\n';
    return ok ? kOk : kVerifyFailed;
}

inline int run_expand(const JobSpec& job, std::ostream& out)
{
    Depth3Circuit c = circuit_from_json(read_json_file(job.inputs.at(0)));
    SparsePoly p = expand(c, job.trunc);
    const std::string text = poly_to_json(p).dump(2) + "\n";
    if (job.out) {
        write_json_file(*job.out, poly_to_json(p));
    } else {
        out << text;
    }
    return kOk;
}

inline int run_info(const JobSpec& job, std::ostream& out)
{
    Json cj = read_json_file(job.inputs.at(0));
    Depth3Circuit c = circuit_from_json(cj);
    const CircuitParams params = circuit_params(c);
    Json j;
    j["params"] = params_json(params);
    bool ok = true;
    if (cj.contains("meta") && cj["meta"].contains("bound")) {
        const Json& b = cj["meta"]["bound"];
        CircuitParams bound{b.at("top_fan_in").get<std::size_t>(), b.at("formal_degree").get<unsigned>()};
        j["construction"] = cj["meta"].value("construction", "");
        j["degree"] = cj["meta"].value("degree", 0U);
        j["bound"] = b;
        ok = within(params, bound);
        j["within_bound"] = ok;
    } else {
        j["bound"] = nullptr;
    }
    out << j.dump(2) << '\n';
    return ok ? kOk : kVerifyFailed;
}

} // namespace detail

/// Executes one job. Exit codes: 0 success/verified, 1 verification (or bound) failed, 2 input error.
inline int run(const JobSpec& job, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    try {
        if (job.inputs.empty()) {
            throw std::invalid_argument("missing input file");
        }
        if (job.command.rfind("synth-", 0) == 0) {
            if (job.command != "synth-general" && job.command != "synth-waring" && job.command != "synth-duality" &&
                job.command != "synth-chasm") {
                throw std::invalid_argument("unknown command '" + job.command + "'");
            }
            return detail::run_synth(job, out, err);
        }
        if (job.command == "verify") {
            return detail::run_verify(job, out);
        }
        if (job.command == "expand") {
            return detail::run_expand(job, out);
        }
        if (job.command == "info") {
            return detail::run_info(job, out);
        }
        throw std::invalid_argument("unknown command '" + job.command + "'");
    } catch (const parse_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed input: " << e.what() << '\n';
        return kInputError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

} // namespace border3::cli
