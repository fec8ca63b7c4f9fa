#include "commands.hpp"

#include <algorithm>
#include <random>

#include <fmt/format.h>

#include "sqc/geometry.hpp"
#include "sqc/measures.hpp"
#include "sqc/rates.hpp"
#include "sqc/sampling.hpp"

namespace sqc::cli {

using io::json;

std::string num(double v, const Common& c) { return io::format_number(v, c.output.precision); }
json rounded(double v, const Common& c) { return io::rounded(v, c.output.precision); }

DensityMatrix default_source() {
    Matrix2c m;
    m << 2.0 / 3.0, 0.25, 0.25, 1.0 / 3.0;
    return DensityMatrix(m);
}

DensityMatrix target_family(double q) { return from_bloch({2.0 * q - 1.0, 0.0, 0.0}); }

double synthesis_residual(const Instrument& inst, const DensityMatrix& source, const DensityMatrix& target,
                          double p) {
    const BranchResult out = apply(inst, source);
    double residual = std::max(inst.completeness_error(), std::abs(out.success_probability - p));
    if (out.success_state) residual = std::max(residual, trace_distance(*out.success_state, target));
    return residual;
}

namespace {

json bloch_json(const BlochVector& v, const Common& c) { return {rounded(v.x, c), rounded(v.y, c), rounded(v.z, c)}; }

std::string key_value_csv(const std::vector<std::pair<std::string, std::string>>& rows) {
    std::string out = "key,value\n";
    for (const auto& [k, v] : rows) out += fmt::format("{},{}\n", k, v);
    return out;
}

json verdict_json(const ReachabilityVerdict& v, double p, const Common& c) {
    return {{"p", rounded(p, c)},
            {"reachable", v.reachable},
            {"binding_constraint", std::string(to_string(v.binding))},
            {"margin", rounded(v.margin, c)},
            {"ellipsoid_margin", rounded(v.ellipsoid_margin, c)},
            {"cylinder_margin", rounded(v.cylinder_margin, c)}};
}

}  // namespace

Result cmd_prob(const Common& c, const ProbArgs& a) {
    const DensityMatrix src = a.source.empty()
                                  ? from_bloch({a.rx.value_or(0.0), a.ry.value_or(0.0), a.rz.value_or(0.0)})
                                  : io::parse_state(a.source);
    const DensityMatrix tgt = io::parse_state(a.target);
    const BlochVector s = to_bloch(src), t = to_bloch(tgt);
    const double pmax = max_probability(s, t);
    const double p_verdict = a.p.value_or(pmax > 0.0 ? pmax : 1.0);
    const ReachabilityVerdict verdict = reachable(s, t, p_verdict);

    json out{{"source", bloch_json(s, c)},
             {"target", bloch_json(t, c)},
             {"max_probability", rounded(pmax, c)},
             {"verdict", verdict_json(verdict, p_verdict, c)}};
    if (a.synthesize) {
        if (pmax > 0.0) {
            const Instrument inst = synthesize(s, t, pmax);
            out["instrument"] = io::instrument_to_json(inst);
            out["residual"] = synthesis_residual(inst, src, tgt, pmax);
        } else {
            out["instrument"] = nullptr;
        }
    }
    if (c.output.format == io::Format::Json) return {out.dump(2) + "\n"};
    std::vector<std::pair<std::string, std::string>> rows{
        {"max_probability", num(pmax, c)},
        {"p", num(p_verdict, c)},
        {"reachable", verdict.reachable ? "true" : "false"},
        {"binding_constraint", std::string(to_string(verdict.binding))},
        {"margin", num(verdict.margin, c)},
        {"ellipsoid_margin", num(verdict.ellipsoid_margin, c)},
        {"cylinder_margin", num(verdict.cylinder_margin, c)}};
    if (a.synthesize && out.contains("residual")) rows.emplace_back("residual", num(out["residual"].get<double>(), c));
    return {key_value_csv(rows)};
}

Result cmd_region(const Common& c, const RegionArgs& a) {
    const BlochVector src = to_bloch(io::parse_state(a.source));
    std::vector<double> ps = a.probabilities;
    std::sort(ps.begin(), ps.end());

    json curves = json::array();
    json overlay = json::array();
    std::string csv = "curve,p,s,s_z\n";
    bool nested = true;
    double previous_cap = 2.0;
    for (double p : ps) {
        const auto curve = boundary_curve(src, p, a.n);
        const double cap = transverse_cap(src, p);
        nested = nested && cap <= previous_cap + 1e-12;
        previous_cap = cap;
        json pts = json::array();
        for (const auto& pt : curve) {
            pts.push_back({rounded(pt.s, c), rounded(pt.sz, c)});
            csv += fmt::format("analytic,{},{},{}\n", num(p, c), num(pt.s, c), num(pt.sz, c));
        }
        curves.push_back({{"p", rounded(p, c)}, {"transverse_cap", rounded(cap, c)}, {"points", pts}});
        if (a.oracle) {
            SweepConfig cfg;
            cfg.grid_density = a.grid_density;
            cfg.n_random_samples = a.samples;
            cfg.rng_seed = c.seed;
            json op = json::array();
            for (const auto& pt : sweep_frontier(src, p, cfg)) {
                op.push_back({rounded(pt.s, c), rounded(pt.sz, c), rounded(pt.p, c)});
                csv += fmt::format("oracle,{},{},{}\n", num(p, c), num(pt.s, c), num(pt.sz, c));
            }
            overlay.push_back({{"p", rounded(p, c)}, {"config", io::config_to_json(cfg)}, {"frontier", op}});
        }
    }
    if (c.output.format == io::Format::Csv) return {csv};
    json out{{"source", bloch_json(src, c)}, {"curves", curves}, {"nested", nested}};
    if (a.oracle) out["oracle"] = overlay;
    return {out.dump(2) + "\n"};
}

Result cmd_rates(const Common& c, const RatesArgs& a) {
    if (!(a.q_min >= 0.0 && a.q_min < a.q_max && a.q_max <= 1.0)) {
        throw Error(ErrorKind::InvalidConfig, "need 0 <= q_min < q_max <= 1");
    }
    if (a.n < 2) throw Error(ErrorKind::InvalidConfig, "n must be at least 2");
    const DensityMatrix src = a.source.empty() ? default_source() : io::parse_state(a.source);
    const double cd_src = distillable_coherence(src);

    json rows = json::array();
    std::string csv = "q,p,C_d/C_c,R_lower,R_upper\n";
    for (std::size_t i = 0; i < a.n; ++i) {
        const double q = i + 1 == a.n ? a.q_max
                                      : a.q_min + (a.q_max - a.q_min) * static_cast<double>(i) /
                                                      static_cast<double>(a.n - 1);
        const DensityMatrix tgt = target_family(q);
        const double p = max_probability(to_bloch(src), to_bloch(tgt));
        const double cc_tgt = coherence_cost(tgt);
        std::optional<double> ratio;
        if (cc_tgt > 0.0) ratio.emplace(cd_src / cc_tgt);
        const RateBounds rb = rate_bounds(src, tgt);
        auto opt = [&](const std::optional<double>& v) { return v ? rounded(*v, c) : json("unbounded"); };
        auto opt_csv = [&](const std::optional<double>& v) { return v ? num(*v, c) : std::string("unbounded"); };
        rows.push_back({{"q", rounded(q, c)},
                        {"p", rounded(p, c)},
                        {"cd_over_cc", opt(ratio)},
                        {"lower", rounded(rb.lower, c)},
                        {"lower_source", std::string(to_string(rb.lower_source))},
                        {"upper", opt(rb.upper)},
                        {"upper_source", std::string(to_string(rb.upper_source))}});
        csv += fmt::format("{},{},{},{},{}\n", num(q, c), num(p, c), opt_csv(ratio), num(rb.lower, c),
                           opt_csv(rb.upper));
    }
    if (c.output.format == io::Format::Csv) return {csv};
    return {json{{"source", bloch_json(to_bloch(src), c)}, {"rows", rows}}.dump(2) + "\n"};
}

Result cmd_irrev(const Common& c, const IrrevArgs& a) {
    const auto curve = irreversibility_curve(a.n);
    json lower = json::array(), diagonal = json::array(), samples = json::array();
    std::string csv = "curve,q,C_c,C_d\n";
    for (const auto& pt : curve) {
        lower.push_back({{"q", rounded(pt.q, c)}, {"C_c", rounded(pt.coherence_cost, c)},
                         {"C_d", rounded(pt.distillable_coherence, c)}});
        csv += fmt::format("lower,{},{},{}\n", num(pt.q, c), num(pt.coherence_cost, c),
                           num(pt.distillable_coherence, c));
    }
    for (std::size_t i = 0; i < a.n; ++i) {
        const double v = static_cast<double>(i) / static_cast<double>(a.n - 1);
        diagonal.push_back({{"C_c", rounded(v, c)}, {"C_d", rounded(v, c)}});
        csv += fmt::format("diagonal,,{},{}\n", num(v, c), num(v, c));
    }
    std::size_t violations = 0;
    std::mt19937_64 eng(c.seed);
    for (std::size_t i = 0; i < a.samples; ++i) {
        const DensityMatrix rho = random_state(eng);
        const double cc = coherence_cost(rho), cd = distillable_coherence(rho);
        const double floor = distillable_coherence(min_cd_projection(rho));
        const bool inside = cd <= cc + 1e-12 && cd >= floor - 1e-12;
        violations += inside ? 0 : 1;
        samples.push_back({{"C_c", rounded(cc, c)}, {"C_d", rounded(cd, c)}, {"inside", inside}});
        csv += fmt::format("sample,,{},{}\n", num(cc, c), num(cd, c));
    }
    if (c.output.format == io::Format::Csv) return {csv, violations == 0 ? 0 : 1};
    json out{{"lower", lower}, {"diagonal", diagonal}};
    if (a.samples > 0) {
        out["samples"] = samples;
        out["violations"] = violations;
    }
    return {out.dump(2) + "\n", violations == 0 ? 0 : 1};
}

Result cmd_synthesize(const Common& c, const SynthesizeArgs& a) {
    const DensityMatrix src = io::parse_state(a.source), tgt = io::parse_state(a.target);
    const double p = a.p.value_or(max_probability(to_bloch(src), to_bloch(tgt)));
    const Instrument inst = synthesize(to_bloch(src), to_bloch(tgt), p);
    const double residual = synthesis_residual(inst, src, tgt, p);
    if (c.output.format == io::Format::Json) {
        json out{{"p", p}, {"instrument", io::instrument_to_json(inst)}, {"residual", residual},
                 {"strictly_incoherent", inst.strictly_incoherent()}};
        return {out.dump(2) + "\n"};
    }
    std::string csv = "branch,index,class,re00,im00,re01,im01,re10,im10,re11,im11\n";
    auto rows = [&](const char* name, const KrausList& ops) {
        for (std::size_t i = 0; i < ops.size(); ++i) {
            const Matrix2c& m = ops[i].matrix();
            csv += fmt::format("{},{},{}", name, i, to_string(ops[i].kind()));
            for (int k = 0; k < 4; ++k) {
                csv += fmt::format(",{:.17g},{:.17g}", m(k / 2, k % 2).real(), m(k / 2, k % 2).imag());
            }
            csv += "\n";
        }
    };
    rows("success", inst.success);
    rows("failure", inst.failure);
    return {csv};
}

Result cmd_measures(const Common& c, const MeasuresArgs& a) {
    const DensityMatrix rho = io::parse_state(a.state);
    const BlochVector v = to_bloch(rho);
    const double s = von_neumann_entropy(rho), cd = distillable_coherence(rho), cc = coherence_cost(rho),
                 l1 = l1_coherence(rho);
    if (c.output.format == io::Format::Csv) {
        return {key_value_csv({{"rx", num(v.x, c)},
                               {"ry", num(v.y, c)},
                               {"rz", num(v.z, c)},
                               {"S", num(s, c)},
                               {"C_d", num(cd, c)},
                               {"C_c", num(cc, c)},
                               {"C_l1", num(l1, c)},
                               {"incoherent", is_incoherent(rho) ? "true" : "false"}})};
    }
    json out{{"bloch", bloch_json(v, c)},
             {"von_neumann_entropy", rounded(s, c)},
             {"distillable_coherence", rounded(cd, c)},
             {"coherence_cost", rounded(cc, c)},
             {"l1_coherence", rounded(l1, c)},
             {"incoherent", is_incoherent(rho)}};
    return {out.dump(2) + "\n"};
}

}  // namespace sqc::cli
