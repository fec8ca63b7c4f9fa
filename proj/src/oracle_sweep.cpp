#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "sqc/kraus.hpp"
#include "sqc/oracle.hpp"

namespace sqc {

void SweepConfig::validate() const {
    if (grid_density < 8) {
        throw Error(ErrorKind::InvalidConfig, fmt::format("grid_density {} < 8", grid_density));
    }
    if (!(slack_tolerance > 0.0)) {
        throw Error(ErrorKind::InvalidConfig, fmt::format("slack_tolerance {} must be positive", slack_tolerance));
    }
}

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr std::size_t kChunk = 4096;

struct SweepContext {
    BlochVector canonical;
    double rz = 0.0;
    double p = 1.0;
    double rho00 = 0.5, rho11 = 0.5, rho01 = 0.0;
    AngleWindow window;
    double scale_a = 0.0;  // sqrt(2p / (1 + rz))
    double scale_b = 0.0;  // sqrt(2p / (1 - rz))
};

SweepContext make_context(const BlochVector& source, double p) {
    if (!source.is_valid()) throw Error(ErrorKind::InvalidBloch, "source Bloch vector has norm > 1");
    if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidProbability, fmt::format("p = {} not in (0, 1]", p));
    const BlochVector c = canonicalize(source).vector;
    if (c.x <= kStateTol) throw Error(ErrorKind::IncoherentSource, "sweep needs a coherent source");
    SweepContext ctx;
    ctx.canonical = c;
    ctx.rz = c.z;
    ctx.p = p;
    ctx.rho00 = 0.5 * (1.0 + c.z);
    ctx.rho11 = 0.5 * (1.0 - c.z);
    ctx.rho01 = 0.5 * c.x;
    ctx.window = t_window(p, c.z);
    ctx.scale_a = std::sqrt(2.0 * p / (1.0 + c.z));
    ctx.scale_b = std::sqrt(2.0 * p / (1.0 - c.z));
    return ctx;
}

SweepPoint to_point(double p00, double p11, Complex p01) {
    const double tr = p00 + p11;
    return {2.0 * std::abs(p01) / tr, (p00 - p11) / tr, tr};
}

SweepPoint to_point(const Matrix2c& out) { return to_point(out(0, 0).real(), out(1, 1).real(), out(0, 1)); }

// K1..K4 applied to the canonical source, written out entrywise.
SweepPoint evaluate(const SweepContext& ctx, const std::array<double, 3>& a, const std::array<Complex, 3>& b) {
    const double p00 = (a[0] * a[0] + a[2] * a[2]) * ctx.rho00 + (std::norm(b[1]) + std::norm(b[2])) * ctx.rho11;
    const double p11 = a[1] * a[1] * ctx.rho00 + std::norm(b[0]) * ctx.rho11;
    const Complex p01 = (a[0] * std::conj(b[0]) + a[1] * b[1]) * ctx.rho01;
    return to_point(p00, p11, p01);
}

SweepPoint evaluate_angles(const SweepContext& ctx, double t, double theta, double phi) {
    const double la = ctx.scale_a * std::cos(t);
    const double lb = ctx.scale_b * std::sin(t);
    const double a1 = la * std::cos(0.5 * (theta - phi));
    const double a2 = la * std::sin(0.5 * (theta - phi));
    const double b1 = lb * std::sin(0.5 * (theta + phi));
    const double b2 = lb * std::cos(0.5 * (theta + phi));
    const double p00 = a1 * a1 * ctx.rho00 + b2 * b2 * ctx.rho11;
    const double p11 = a2 * a2 * ctx.rho00 + b1 * b1 * ctx.rho11;
    return to_point(p00, p11, (a1 * b1 + a2 * b2) * ctx.rho01);
}

double axis(std::size_t i, std::size_t n) { return static_cast<double>(i) / static_cast<double>(n - 1); }

struct GridAngles {
    double t, theta, phi;
};

GridAngles grid_angles(const SweepContext& ctx, std::size_t n, std::size_t i, std::size_t j, std::size_t k) {
    const double t = ctx.window.lo + (ctx.window.hi - ctx.window.lo) * axis(i, n);
    const double theta = kHalfPi * axis(j, n);
    const double phi = theta * (2.0 * axis(k, n) - 1.0);
    return {t, theta, phi};
}

struct Probe {
    std::array<double, 3> a;
    std::array<Complex, 3> b;
};

std::mt19937_64 chunk_engine(std::uint64_t seed, std::size_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    return std::mt19937_64(seq);
}

Probe draw_probe(const SweepContext& ctx, std::mt19937_64& eng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double t = ctx.window.lo + (ctx.window.hi - ctx.window.lo) * unif(eng);

    std::array<double, 3> a{std::abs(gauss(eng)), std::abs(gauss(eng)), std::abs(gauss(eng))};
    std::array<Complex, 3> b{Complex(gauss(eng), gauss(eng)), Complex(gauss(eng), gauss(eng)),
                             Complex(std::abs(gauss(eng)), 0.0)};
    // Coherence of the output must stay real: a2 Im(b2) = a1 Im(b1).
    if (a[1] > 1e-300) {
        b[1].imag(a[0] * b[0].imag() / a[1]);
    } else {
        b[0].imag(0.0);
    }
    const double na = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    const double nb = std::sqrt(std::norm(b[0]) + std::norm(b[1]) + std::norm(b[2]));
    const double la = ctx.scale_a * std::cos(t) / na;
    const double lb = ctx.scale_b * std::sin(t) / nb;
    for (auto& x : a) x *= la;
    for (auto& x : b) x *= lb;
    return {a, b};
}

std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

// ---------------------------------------------------------------------------
// Serial reference: the public Kraus API, one instrument at a time.
// ---------------------------------------------------------------------------

template <class Sink>
void run_serial(const SweepContext& ctx, const SweepConfig& cfg, Sink&& sink) {
    const std::size_t n = cfg.grid_density;
    const Matrix2c rho = from_bloch(ctx.canonical).matrix();
    std::size_t index = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const GridAngles g = grid_angles(ctx, n, i, j, k);
                const SioParameters params = parametrize(g.t, g.theta, g.phi, ctx.p, ctx.canonical);
                sink(index++, to_point(branch_output(sio_kraus(params), rho)));
            }
        }
    }
    for (std::size_t c = 0; c < chunk_count(cfg.n_random_samples); ++c) {
        auto eng = chunk_engine(cfg.rng_seed, c);
        const std::size_t end = std::min(cfg.n_random_samples, (c + 1) * kChunk);
        for (std::size_t l = c * kChunk; l < end; ++l) {
            const Probe probe = draw_probe(ctx, eng);
            sink(index++, to_point(branch_output(sio_kraus(probe.a, probe.b), rho)));
        }
    }
}

// ---------------------------------------------------------------------------
// OpenMP kernel.  `Sink` is created per thread by `make_sink` and merged.
// ---------------------------------------------------------------------------

template <class MakeSink, class Merge>
void run_parallel(const SweepContext& ctx, const SweepConfig& cfg, MakeSink&& make_sink, Merge&& merge) {
    const std::size_t n = cfg.grid_density;
    const std::size_t grid = n * n * n;
    const std::size_t chunks = chunk_count(cfg.n_random_samples);
#pragma omp parallel
    {
        auto sink = make_sink();
#pragma omp for schedule(static) nowait
        for (std::size_t idx = 0; idx < grid; ++idx) {
            const std::size_t i = idx / (n * n);
            const std::size_t j = (idx / n) % n;
            const std::size_t k = idx % n;
            const GridAngles g = grid_angles(ctx, n, i, j, k);
            sink(idx, evaluate_angles(ctx, g.t, g.theta, g.phi));
        }
#pragma omp for schedule(dynamic, 1)
        for (std::size_t c = 0; c < chunks; ++c) {
            auto eng = chunk_engine(cfg.rng_seed, c);
            const std::size_t end = std::min(cfg.n_random_samples, (c + 1) * kChunk);
            for (std::size_t l = c * kChunk; l < end; ++l) {
                const Probe probe = draw_probe(ctx, eng);
                sink(grid + l, evaluate(ctx, probe.a, probe.b));
            }
        }
#pragma omp critical(sqc_sweep_merge)
        merge(sink);
    }
}

struct StoreSink {
    std::vector<SweepPoint>* out;
    void operator()(std::size_t idx, const SweepPoint& pt) const { (*out)[idx] = pt; }
};

class FrontierBins {
  public:
    explicit FrontierBins(std::size_t bins = kFrontierBins) : by_s_(bins, empty()), by_z_(bins, empty()) {}

    void operator()(std::size_t, const SweepPoint& pt) { add({pt.s, std::abs(pt.sz), pt.p}); }

    void add(const SweepPoint& pt) {
        const std::size_t n = by_s_.size();
        const auto bin = [n](double v) {
            return std::min(n - 1, static_cast<std::size_t>(std::max(0.0, v) * static_cast<double>(n)));
        };
        SweepPoint& s_slot = by_s_[bin(pt.s)];
        if (s_slot.p < 0.0 || std::tie(pt.sz, pt.s, pt.p) > std::tie(s_slot.sz, s_slot.s, s_slot.p)) s_slot = pt;
        SweepPoint& z_slot = by_z_[bin(pt.sz)];
        if (z_slot.p < 0.0 || std::tie(pt.s, pt.sz, pt.p) > std::tie(z_slot.s, z_slot.sz, z_slot.p)) z_slot = pt;
    }

    void merge(const FrontierBins& other) {
        for (const auto& v : {std::cref(other.by_s_), std::cref(other.by_z_)}) {
            for (const SweepPoint& pt : v.get()) {
                if (pt.p >= 0.0) add(pt);
            }
        }
    }

    std::vector<SweepPoint> points() const {
        std::vector<SweepPoint> cand;
        for (const auto* v : {&by_s_, &by_z_}) {
            for (const SweepPoint& pt : *v) {
                if (pt.p >= 0.0) cand.push_back(pt);
            }
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

        // Walk by decreasing s; `ahead` is the largest |sz| among candidates
        // whose s exceeds the current one by more than eps.
        const double eps = 1.0 / static_cast<double>(by_s_.size());
        std::vector<SweepPoint> out;
        double ahead = -1.0;
        std::size_t lead = cand.size();
        for (std::size_t i = cand.size(); i-- > 0;) {
            while (lead > 0 && cand[lead - 1].s > cand[i].s + eps) ahead = std::max(ahead, cand[--lead].sz);
            if (ahead <= cand[i].sz + eps) out.push_back(cand[i]);
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

  private:
    static SweepPoint empty() { return {0.0, 0.0, -1.0}; }
    std::vector<SweepPoint> by_s_;
    std::vector<SweepPoint> by_z_;
};

}  // namespace

RegionEstimate sweep_region(const BlochVector& source, double p, const SweepConfig& config, Execution exec) {
    config.validate();
    const SweepContext ctx = make_context(source, p);
    const std::size_t n = config.grid_density;
    RegionEstimate est;
    est.config = config;
    est.reachable_points.resize(n * n * n + config.n_random_samples);
    if (exec == Execution::Serial) {
        run_serial(ctx, config, StoreSink{&est.reachable_points});
    } else {
        run_parallel(
            ctx, config, [&] { return StoreSink{&est.reachable_points}; }, [](const StoreSink&) {});
    }
    std::erase_if(est.reachable_points, [&](const SweepPoint& pt) { return pt.p < p - config.slack_tolerance; });
    return est;
}

std::vector<SweepPoint> frontier(std::span<const SweepPoint> points) {
    FrontierBins bins;
    for (const auto& pt : points) bins(0, pt);
    return bins.points();
}

std::vector<SweepPoint> sweep_frontier(const BlochVector& source, double p, const SweepConfig& config,
                                       Execution exec) {
    config.validate();
    const SweepContext ctx = make_context(source, p);
    const double floor = p - config.slack_tolerance;
    FrontierBins total;
    auto filtered = [floor](FrontierBins& bins) {
        return [&bins, floor](std::size_t idx, const SweepPoint& pt) {
            if (pt.p >= floor) bins(idx, pt);
        };
    };
    if (exec == Execution::Serial) {
        run_serial(ctx, config, filtered(total));
    } else {
        struct LocalSink {
            FrontierBins bins;
            double floor;
            void operator()(std::size_t idx, const SweepPoint& pt) {
                if (pt.p >= floor) bins(idx, pt);
            }
        };
        run_parallel(
            ctx, config, [&] { return LocalSink{FrontierBins{}, floor}; },
            [&](const LocalSink& local) { total.merge(local.bins); });
    }
    return total.points();
}

std::vector<CurvePoint> reference_frontier(const BlochVector& source, double p, std::size_t n_points) {
    std::vector<CurvePoint> out = boundary_curve(source, p, n_points);
    const CurvePoint corner = out.back();
    for (std::size_t i = 1; i < n_points; ++i) {
        out.push_back({corner.s, corner.sz * (1.0 - axis(i, n_points))});
    }
    return out;
}

double hausdorff_distance(std::span<const CurvePoint> a, std::span<const CurvePoint> b) {
    if (a.empty() || b.empty()) throw Error(ErrorKind::DomainError, "Hausdorff distance of an empty set");
    auto directed = [](std::span<const CurvePoint> from, std::span<const CurvePoint> to) {
        double worst = 0.0;
        for (const auto& x : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& y : to) best = std::min(best, std::hypot(x.s - y.s, x.sz - y.sz));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

// ---------------------------------------------------------------------------
// Maximal probability by bisection.
// ---------------------------------------------------------------------------

namespace {

struct Folded {
    double s, z;
};

struct UnitCoord {
    double t, theta, phi;  // t, theta in [0, 1]; phi in [-1, 1]
};

double domination_score(const SweepContext& ctx, const UnitCoord& u, const Folded& tgt) {
    const double t = ctx.window.lo + (ctx.window.hi - ctx.window.lo) * u.t;
    const double theta = kHalfPi * u.theta;
    const SweepPoint pt = evaluate_angles(ctx, t, theta, theta * u.phi);
    return std::min(pt.s - tgt.s, std::abs(pt.sz) - tgt.z);
}

UnitCoord clamp_coord(UnitCoord u) {
    return {std::clamp(u.t, 0.0, 1.0), std::clamp(u.theta, 0.0, 1.0), std::clamp(u.phi, -1.0, 1.0)};
}

struct Scored {
    double score;
    UnitCoord at;
};

Scored refine(const SweepContext& ctx, const Folded& tgt, Scored best, UnitCoord h) {
    constexpr int kLevels = 60;
    constexpr double kStencil[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    for (int level = 0; level < kLevels && best.score < 0.0; ++level) {
        const UnitCoord c = best.at;
        for (double dt : kStencil) {
            for (double dth : kStencil) {
                for (double dph : kStencil) {
                    const UnitCoord u = clamp_coord({c.t + dt * h.t, c.theta + dth * h.theta, c.phi + dph * h.phi});
                    const double sc = domination_score(ctx, u, tgt);
                    if (sc > best.score) best = {sc, u};
                }
            }
        }
        h = {0.5 * h.t, 0.5 * h.theta, 0.5 * h.phi};
    }
    return best;
}

double best_domination(const SweepContext& ctx, const Folded& tgt, std::size_t g, Execution exec) {
    constexpr std::size_t kSeeds = 4;
    const std::size_t total = g * g * g;
    std::vector<Scored> seeds(total);
    auto seed_at = [&](std::size_t idx) {
        const UnitCoord u{axis(idx / (g * g), g), axis((idx / g) % g, g), 2.0 * axis(idx % g, g) - 1.0};
        seeds[idx] = {domination_score(ctx, u, tgt), u};
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::size_t idx = 0; idx < total; ++idx) seed_at(idx);
    } else {
        for (std::size_t idx = 0; idx < total; ++idx) seed_at(idx);
    }

    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), 0);
    const std::size_t keep = std::min(kSeeds, total);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                      [&](std::size_t x, std::size_t y) {
                          return seeds[x].score != seeds[y].score ? seeds[x].score > seeds[y].score : x < y;
                      });
    const double step = 1.0 / static_cast<double>(g - 1);
    std::vector<double> refined(keep);
    auto refine_at = [&](std::size_t s) {
        refined[s] = refine(ctx, tgt, seeds[order[s]], {step, step, 2.0 * step}).score;
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::size_t s = 0; s < keep; ++s) refine_at(s);
    } else {
        for (std::size_t s = 0; s < keep; ++s) refine_at(s);
    }
    return *std::max_element(refined.begin(), refined.end());
}

}  // namespace

double oracle_max_probability(const BlochVector& source, const BlochVector& target, const SweepConfig& config,
                              Execution exec) {
    config.validate();
    if (!target.is_valid()) throw Error(ErrorKind::InvalidBloch, "target Bloch vector has norm > 1");
    const Folded tgt{transverse_radius(target), std::abs(target.z)};
    const std::size_t g = std::min<std::size_t>(config.grid_density, 32);
    const double tol = 2.0 * config.slack_tolerance;
    auto member = [&](double p) { return best_domination(make_context(source, p), tgt, g, exec) >= -tol; };

    constexpr double kFloor = 1e-6;
    if (member(1.0)) return 1.0;
    if (!member(kFloor)) return 0.0;
    double lo = kFloor, hi = 1.0;
    for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        (member(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace sqc
