#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "sqc/kraus.hpp"
#include "sqc/oracle.hpp"
#include "sqc/qubit.hpp"

namespace sqc::io {

using nlohmann::json;

/// Parses a state given as "bloch:rx,ry,rz", as inline JSON text, or as the
/// path of a file holding JSON.  Accepted JSON objects are
///   {"bloch": [rx, ry, rz]}  and  {"matrix": [[re, im], x4]}  (row major).
/// Throws ParseError for malformed input and InvalidBloch / InvalidState for
/// well-formed input that is not a density matrix.
DensityMatrix parse_state(std::string_view spec);
DensityMatrix state_from_json(const json& j);

json bloch_to_json(const BlochVector& v);
/// Row-major [[re, im] x4]; parse(state_to_json(rho)) reproduces rho exactly.
json state_to_json(const DensityMatrix& state);

json matrix_to_json(const Matrix2c& m);
Matrix2c matrix_from_json(const json& j);

/// {"success": [{"class": ..., "matrix": ...}], "failure": [...]}.
/// Doubles are written with 17 significant digits, so the round trip is exact.
json instrument_to_json(const Instrument& inst);
/// Throws ParseError on malformed input.  Class tags are recomputed from the
/// matrices, and a stored tag that disagrees is a ParseError.
Instrument instrument_from_json(const json& j);

json config_to_json(const SweepConfig& config);

enum class Format { Json, Csv };

struct OutputSpec {
    Format format = Format::Json;
    int precision = 12;
    std::string path;  ///< empty: standard output

    /// Throws InvalidConfig unless precision is in [6, 17].
    void validate() const;
};

Format parse_format(std::string_view name);

/// `precision` significant digits; negative zero prints as 0.
std::string format_number(double value, int precision);

/// Rounds through format_number so JSON output honours the precision.
json rounded(double value, int precision);

/// "# <config json>" header, then "s,s_z,p" and one sorted row per point.
std::string region_csv(const RegionEstimate& est, int precision);

}  // namespace sqc::io
