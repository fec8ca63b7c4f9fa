#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInvalidState = 3;

int exit_code_for(sqc::ErrorKind kind) {
    switch (kind) {
        case sqc::ErrorKind::InvalidState:
        case sqc::ErrorKind::InvalidBloch: return kExitInvalidState;
        default: return kExitParse;
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace sqc::cli;

    CLI::App app{"Single-qubit stochastic coherence conversion toolkit"};
    app.require_subcommand(1);

    Common common;
    std::string format = "json";
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--precision", common.output.precision, "significant digits, 6 to 17");
    app.add_option("--seed", common.seed, "seed for every random draw");
    app.add_option("--out", common.output.path, "output file (default: standard output)");

    ProbArgs prob;
    auto* cmd_p = app.add_subcommand("prob", "maximal conversion probability and reachability verdict");
    cmd_p->add_option("--source", prob.source, "source state spec");
    cmd_p->add_option("--rx", prob.rx, "inline source Bloch x");
    cmd_p->add_option("--ry", prob.ry, "inline source Bloch y");
    cmd_p->add_option("--rz", prob.rz, "inline source Bloch z");
    cmd_p->add_option("--target", prob.target, "target state spec")->required();
    cmd_p->add_option("--p", prob.p, "probability for the verdict (default: the maximum)");
    cmd_p->add_flag("--synthesize", prob.synthesize, "also emit an optimal instrument");

    RegionArgs region;
    auto* cmd_r = app.add_subcommand("region", "reachable-region boundary curves");
    cmd_r->add_option("--source", region.source, "source state spec");
    cmd_r->add_option("--p", region.probabilities, "success probabilities")->expected(1, -1);
    cmd_r->add_option("--n", region.n, "points per curve");
    cmd_r->add_flag("--oracle", region.oracle, "overlay the brute-force sweep frontier");
    cmd_r->add_option("--grid-density", region.grid_density, "oracle grid points per axis");
    cmd_r->add_option("--samples", region.samples, "oracle random probes");

    RatesArgs rates;
    auto* cmd_a = app.add_subcommand("rates", "asymptotic rate bounds against q|+><+| + (1-q)|-><-|");
    cmd_a->add_option("--source", rates.source, "source state spec");
    cmd_a->add_option("--q-min", rates.q_min, "lowest target parameter q");
    cmd_a->add_option("--q-max", rates.q_max, "highest target parameter q");
    cmd_a->add_option("--n", rates.n, "number of q values");

    IrrevArgs irrev;
    auto* cmd_i = app.add_subcommand("irrev", "allowed (C_c, C_d) region");
    cmd_i->add_option("--n", irrev.n, "points per boundary curve")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
    cmd_i->add_option("--samples", irrev.samples, "random states to overlay");

    SynthesizeArgs synth;
    auto* cmd_s = app.add_subcommand("synthesize", "build a strictly incoherent instrument");
    cmd_s->add_option("--source", synth.source, "source state spec")->required();
    cmd_s->add_option("--target", synth.target, "target state spec")->required();
    cmd_s->add_option("--p", synth.p, "success probability (default: the maximum)");

    MeasuresArgs measures;
    auto* cmd_m = app.add_subcommand("measures", "coherence measures of a state");
    cmd_m->add_option("--state", measures.state, "state spec")->required();

    VerifyArgs verify;
    auto* cmd_v = app.add_subcommand("verify", "run the brute-force oracle suites");
    cmd_v->add_option("--suite", verify.suite)->check(CLI::IsMember({"region", "synthesis", "cf", "all"}));
    cmd_v->add_option("--grid-density", verify.grid_density, "sweep grid points per axis");
    cmd_v->add_option("--samples", verify.samples, "random probes per sweep");
    cmd_v->add_option("--synthesis-count", verify.synthesis_count, "random synthesis triples");
    cmd_v->add_option("--cf-count", verify.cf_count, "random states for the formation check");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        common.output.format = sqc::io::parse_format(format);
        common.output.validate();
        if (cmd_p->parsed() && prob.source.empty() && !prob.rx && !prob.ry && !prob.rz) {
            throw sqc::Error(sqc::ErrorKind::ParseError, "prob needs --source or --rx/--ry/--rz");
        }
        Result result;
        if (cmd_p->parsed()) result = cmd_prob(common, prob);
        if (cmd_r->parsed()) result = cmd_region(common, region);
        if (cmd_a->parsed()) result = cmd_rates(common, rates);
        if (cmd_i->parsed()) result = cmd_irrev(common, irrev);
        if (cmd_s->parsed()) result = cmd_synthesize(common, synth);
        if (cmd_m->parsed()) result = cmd_measures(common, measures);
        if (cmd_v->parsed()) result = cmd_verify(common, verify);

        if (common.output.path.empty()) {
            std::cout << result.text;
        } else {
            std::ofstream out(common.output.path);
            if (!out) throw sqc::Error(sqc::ErrorKind::ParseError, "cannot open --out " + common.output.path);
            out << result.text;
        }
        return result.exit_code;
    } catch (const sqc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
}
