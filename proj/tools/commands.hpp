#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqc/io.hpp"

namespace sqc::cli {

struct Common {
    io::OutputSpec output;
    std::uint64_t seed = kDefaultSeed;
};

/// A command's rendered output and process exit status.
struct Result {
    std::string text;
    int exit_code = 0;
};

struct ProbArgs {
    std::string source;
    std::string target;
    std::optional<double> rx, ry, rz;
    std::optional<double> p;
    bool synthesize = false;
};

struct RegionArgs {
    std::string source = "bloch:0.6,0,0.7";
    std::vector<double> probabilities{0.3, 0.65, 1.0};
    std::size_t n = 256;
    bool oracle = false;
    std::size_t grid_density = 64;
    std::size_t samples = 10000;
};

struct RatesArgs {
    std::string source;  ///< empty: the default 2x2 example state
    double q_min = 0.0;
    double q_max = 0.5;
    std::size_t n = 101;
};

struct IrrevArgs {
    std::size_t n = 101;
    std::size_t samples = 0;
};

struct SynthesizeArgs {
    std::string source;
    std::string target;
    std::optional<double> p;
};

struct MeasuresArgs {
    std::string state;
};

struct VerifyArgs {
    std::string suite = "all";
    std::size_t grid_density = 64;
    std::size_t samples = 20000;
    std::size_t synthesis_count = 1000;
    std::size_t cf_count = 100;
};

/// The default source: rho = [[2/3, 1/4], [1/4, 1/3]].
DensityMatrix default_source();
/// The default target family: q|+><+| + (1 - q)|-><-|.
DensityMatrix target_family(double q);

Result cmd_prob(const Common& c, const ProbArgs& a);
Result cmd_region(const Common& c, const RegionArgs& a);
Result cmd_rates(const Common& c, const RatesArgs& a);
Result cmd_irrev(const Common& c, const IrrevArgs& a);
Result cmd_synthesize(const Common& c, const SynthesizeArgs& a);
Result cmd_measures(const Common& c, const MeasuresArgs& a);
Result cmd_verify(const Common& c, const VerifyArgs& a);

/// Largest of the completeness error, |P(success) - p| and the trace distance
/// of the success output from the target.
double synthesis_residual(const Instrument& inst, const DensityMatrix& source, const DensityMatrix& target, double p);

std::string num(double v, const Common& c);
io::json rounded(double v, const Common& c);

}  // namespace sqc::cli
