#include <random>

#include <fmt/format.h>

#include "commands.hpp"
#include "sqc/geometry.hpp"
#include "sqc/measures.hpp"
#include "sqc/sampling.hpp"

namespace sqc::cli {

using io::json;

namespace {

struct SuiteReport {
    explicit SuiteReport(std::string n) : name(std::move(n)) {}

    std::string name;
    bool pass = true;
    std::size_t checks = 0;
    double worst = 0.0;  // largest residual or gap observed
    json witness;        // first violation, null when none

    json to_json(const Common& c) const {
        return {{"suite", name}, {"pass", pass}, {"checks", checks}, {"worst", rounded(worst, c)},
                {"witness", witness}};
    }
};

// Every swept output must lie in the analytic region at p - slack.
SuiteReport region_suite(const Common& c, const VerifyArgs& a) {
    SuiteReport rep("region");
    const BlochVector src{0.6, 0.0, 0.7};
    SweepConfig cfg;
    cfg.grid_density = a.grid_density;
    cfg.n_random_samples = a.samples;
    cfg.rng_seed = c.seed;
    for (double p : {0.3, 0.65, 1.0}) {
        const RegionEstimate est = sweep_region(src, p, cfg);
        for (const SweepPoint& pt : est.reachable_points) {
            ++rep.checks;
            const ReachabilityVerdict v =
                reachable(src, {pt.s, 0.0, pt.sz}, std::min(1.0, p - cfg.slack_tolerance), 1e-9);
            rep.worst = std::max(rep.worst, -v.margin);
            if (!v.reachable && rep.pass) {
                rep.pass = false;
                rep.witness = {{"p", p}, {"s", pt.s}, {"s_z", pt.sz}, {"attained_p", pt.p}, {"margin", v.margin}};
            }
        }
    }
    rep.worst = std::max(0.0, rep.worst);
    return rep;
}

SuiteReport synthesis_suite(const Common& c, const VerifyArgs& a) {
    SuiteReport rep("synthesis");
    std::mt19937_64 eng(c.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    while (rep.checks < a.synthesis_count) {
        const BlochVector s = random_coherent_bloch(eng), t = random_bloch(eng);
        const double pmax = max_probability(s, t);
        if (pmax <= 0.0) continue;
        const double p = pmax * (1.0 - 0.999 * unif(eng));
        ++rep.checks;
        double residual = 0.0;
        bool ok = true;
        try {
            const Instrument inst = synthesize(s, t, p);
            residual = synthesis_residual(inst, from_bloch(s), from_bloch(t), p);
            ok = residual < 1e-9 && inst.strictly_incoherent();
        } catch (const Error& e) {
            ok = false;
            residual = 1.0;
        }
        rep.worst = std::max(rep.worst, residual);
        if (!ok && rep.pass) {
            rep.pass = false;
            rep.witness = {{"source", {s.x, s.y, s.z}}, {"target", {t.x, t.y, t.z}}, {"p", p}, {"residual", residual}};
        }
    }
    return rep;
}

SuiteReport cf_suite(const Common& c, const VerifyArgs& a) {
    SuiteReport rep("cf");
    std::mt19937_64 eng(c.seed);
    SweepConfig cfg;
    cfg.rng_seed = c.seed;
    for (std::size_t i = 0; i < a.cf_count; ++i) {
        const DensityMatrix rho = random_state(eng);
        const double gap = oracle_coherence_of_formation(rho, cfg) - coherence_cost(rho);
        ++rep.checks;
        rep.worst = std::max(rep.worst, std::abs(gap));
        if ((gap >= 1e-4 || gap < -1e-9) && rep.pass) {
            rep.pass = false;
            const BlochVector v = to_bloch(rho);
            rep.witness = {{"state", {v.x, v.y, v.z}}, {"gap", gap}};
        }
    }
    return rep;
}

}  // namespace

Result cmd_verify(const Common& c, const VerifyArgs& a) {
    std::vector<SuiteReport> reports;
    const bool all = a.suite == "all";
    if (!all && a.suite != "region" && a.suite != "synthesis" && a.suite != "cf") {
        throw Error(ErrorKind::ParseError, fmt::format("unknown suite '{}'", a.suite));
    }
    if (all || a.suite == "region") reports.push_back(region_suite(c, a));
    if (all || a.suite == "synthesis") reports.push_back(synthesis_suite(c, a));
    if (all || a.suite == "cf") reports.push_back(cf_suite(c, a));

    bool pass = true;
    json suites = json::array();
    std::string csv = "suite,pass,checks,worst\n";
    for (const auto& r : reports) {
        pass = pass && r.pass;
        suites.push_back(r.to_json(c));
        csv += fmt::format("{},{},{},{}\n", r.name, r.pass ? "true" : "false", r.checks, num(r.worst, c));
    }
    const int code = pass ? 0 : 1;
    if (c.output.format == io::Format::Csv) return {csv, code};
    return {json{{"pass", pass}, {"suites", suites}}.dump(2) + "\n", code};
}

}  // namespace sqc::cli
