// border3: synthesize and verify depth-3 border circuits.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "border3/cli.hpp"

namespace {

struct Flags {
    std::string nodes;
    std::string split_tol;
    std::size_t random = 0;
    unsigned trunc = 0;
    unsigned degree = 0;
    std::string out;
};

void add_common(CLI::App* sub, Flags& f, border3::cli::JobSpec& job)
{
    sub->add_option("--random", f.random, "also run the randomized verifier with N trials");
    sub->add_option("--seed", job.seed, "seed for --random");
    sub->add_flag("--full-expand", job.full_expand, "expand fully instead of truncating at degree d");
}

void add_synth(CLI::App& app, const std::string& name, const std::string& help, Flags& f,
               border3::cli::JobSpec& job)
{
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", job.inputs, "input file")->required()->expected(1);
    sub->add_option("--nodes", f.nodes, "interpolation nodes, e.g. \"0,1,2\"");
    sub->add_flag("--no-verify", job.no_verify, "skip verification of the emitted circuit");
    sub->add_option("--split-tol", f.split_tol, "numerically split composed gates with residual tolerance p/q");
    sub->add_option("--out", f.out, "write the circuit here (summary goes to stdout)");
    add_common(sub, f, job);
}

bool given(CLI::App* sub, const std::string& name)
{
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() != 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Constructs and certifies border depth-3 circuits"};
    app.require_subcommand(1);

    border3::cli::JobSpec job;
    Flags f;

    add_synth(app, "synth-general", "homogeneous polynomial file -> border circuit", f, job);
    add_synth(app, "synth-waring", "Waring decomposition file -> border circuit", f, job);
    add_synth(app, "synth-duality", "(sum l_j^b)^a file -> border circuit", f, job);
    add_synth(app, "synth-chasm", "depth-5 powering circuit file -> border circuit", f, job);

    auto* verify = app.add_subcommand("verify", "check a circuit border-computes a polynomial");
    verify->add_option("inputs", job.inputs, "CIRCUIT [POLY]")->required()->expected(1, 2);
    verify->add_option("--degree", f.degree, "target degree (default: from the circuit or polynomial)");
    add_common(verify, f, job);

    auto* expand = app.add_subcommand("expand", "expand a circuit into a polynomial");
    expand->add_option("input", job.inputs, "circuit file")->required()->expected(1);
    expand->add_option("--trunc", f.trunc, "drop x-degrees above D");
    expand->add_option("--out", f.out, "output path");

    auto* info = app.add_subcommand("info", "report top fan-in, formal degree and the bound");
    info->add_option("input", job.inputs, "circuit file")->required()->expected(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : border3::cli::kInputError;
    }

    CLI::App* sub = app.get_subcommands().front();
    job.command = sub->get_name();
    try {
        if (given(sub, "--nodes")) {
            job.nodes = border3::cli::parse_node_list(f.nodes);
        }
        if (given(sub, "--split-tol")) {
            job.split_tol = border3::parse_rational(f.split_tol);
        }
    } catch (const border3::parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return border3::cli::kInputError;
    }
    if (given(sub, "--random")) {
        job.random_trials = f.random;
    }
    if (given(sub, "--trunc")) {
        job.trunc = f.trunc;
    }
    if (given(sub, "--degree")) {
        job.degree = f.degree;
    }
    if (given(sub, "--out")) {
        job.out = f.out;
    }
    return border3::cli::run(job, std::cout, std::cerr);
}
