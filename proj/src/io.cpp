#include "sqc/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace sqc::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

double parse_double(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) parse_error("empty number");
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        parse_error(fmt::format("not a number: '{}'", s));
    }
    if (used != s.size()) parse_error(fmt::format("trailing characters in number '{}'", s));
    return v;
}

double json_number(const json& j, const char* what) {
    if (!j.is_number()) parse_error(fmt::format("{} must be a number", what));
    return j.get<double>();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) parse_error(fmt::format("cannot read state file '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

DensityMatrix parse_state(std::string_view spec) {
    constexpr std::string_view kBloch = "bloch:";
    if (spec.starts_with(kBloch)) {
        std::string_view rest = spec.substr(kBloch.size());
        std::array<double, 3> r{};
        for (int i = 0; i < 3; ++i) {
            const auto comma = rest.find(',');
            if ((i < 2) != (comma != std::string_view::npos)) parse_error("bloch spec needs exactly 3 components");
            r[i] = parse_double(rest.substr(0, comma));
            rest = i < 2 ? rest.substr(comma + 1) : std::string_view{};
        }
        return from_bloch({r[0], r[1], r[2]});
    }
    const auto first = spec.find_first_not_of(" \t\r\n");
    std::string text = (first != std::string_view::npos && spec[first] == '{') ? std::string(spec)
                                                                               : read_file(std::string(spec));
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        parse_error(fmt::format("invalid state JSON: {}", e.what()));
    }
    return state_from_json(j);
}

DensityMatrix state_from_json(const json& j) {
    if (!j.is_object()) parse_error("state JSON must be an object");
    if (j.contains("bloch")) {
        const json& b = j.at("bloch");
        if (!b.is_array() || b.size() != 3) parse_error("\"bloch\" must be an array of 3 numbers");
        return from_bloch({json_number(b[0], "bloch[0]"), json_number(b[1], "bloch[1]"), json_number(b[2], "bloch[2]")});
    }
    if (j.contains("matrix")) return DensityMatrix(matrix_from_json(j.at("matrix")));
    parse_error("state JSON needs a \"bloch\" or \"matrix\" key");
}

json bloch_to_json(const BlochVector& v) { return json{{"bloch", {v.x, v.y, v.z}}}; }

json state_to_json(const DensityMatrix& state) { return json{{"matrix", matrix_to_json(state.matrix())}}; }

json matrix_to_json(const Matrix2c& m) {
    json out = json::array();
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) out.push_back({m(r, c).real(), m(r, c).imag()});
    }
    return out;
}

Matrix2c matrix_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) parse_error("matrix must be an array of 4 [re, im] pairs");
    Matrix2c m;
    for (int k = 0; k < 4; ++k) {
        const json& e = j[static_cast<std::size_t>(k)];
        if (!e.is_array() || e.size() != 2) parse_error("matrix entries must be [re, im] pairs");
        m(k / 2, k % 2) = Complex(json_number(e[0], "re"), json_number(e[1], "im"));
    }
    return m;
}

json instrument_to_json(const Instrument& inst) {
    auto branch = [](const KrausList& ops) {
        json out = json::array();
        for (const auto& op : ops) {
            out.push_back({{"class", std::string(to_string(op.kind()))}, {"matrix", matrix_to_json(op.matrix())}});
        }
        return out;
    };
    return json{{"success", branch(inst.success)}, {"failure", branch(inst.failure)}};
}

Instrument instrument_from_json(const json& j) {
    auto branch = [&](const char* key) {
        if (!j.is_object() || !j.contains(key) || !j.at(key).is_array()) {
            parse_error(fmt::format("instrument needs an array \"{}\"", key));
        }
        KrausList ops;
        for (const json& e : j.at(key)) {
            if (!e.is_object() || !e.contains("matrix")) parse_error("Kraus operator needs a \"matrix\"");
            KrausOperator op(matrix_from_json(e.at("matrix")));
            if (e.contains("class") && e.at("class") != std::string(to_string(op.kind()))) {
                parse_error(fmt::format("class tag {} does not match matrix ({})", e.at("class").dump(),
                                        to_string(op.kind())));
            }
            ops.push_back(std::move(op));
        }
        return ops;
    };
    return Instrument{branch("success"), branch("failure")};
}

json config_to_json(const SweepConfig& c) {
    return json{{"grid_density", c.grid_density},
                {"n_random_samples", c.n_random_samples},
                {"rng_seed", c.rng_seed},
                {"slack_tolerance", c.slack_tolerance}};
}

void OutputSpec::validate() const {
    if (precision < 6 || precision > 17) {
        throw Error(ErrorKind::InvalidConfig, fmt::format("precision {} not in [6, 17]", precision));
    }
}

Format parse_format(std::string_view name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    parse_error(fmt::format("unknown format '{}'", name));
}

std::string format_number(double value, int precision) {
    if (value == 0.0) value = 0.0;
    std::string s = fmt::format("{:.{}g}", value, precision);
    if (s == "-0") s = "0";
    return s;
}

json rounded(double value, int precision) {
    if (!std::isfinite(value)) return nullptr;
    return std::stod(format_number(value, precision));
}

std::string region_csv(const RegionEstimate& est, int precision) {
    std::vector<SweepPoint> rows = est.reachable_points;
    std::sort(rows.begin(), rows.end());
    std::string out = fmt::format("# {}\ns,s_z,p\n", config_to_json(est.config).dump());
    for (const auto& pt : rows) {
        out += fmt::format("{},{},{}\n", format_number(pt.s, precision), format_number(pt.sz, precision),
                           format_number(pt.p, precision));
    }
    return out;
}

}  // namespace sqc::io
