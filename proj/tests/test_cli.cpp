#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int code;
    std::string out;
};

Run sqc(const std::string& args) {
    const std::string cmd = std::string(SQC_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json json_of(const Run& r) {
    REQUIRE(r.code == 0);
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("prob") {
    auto j = json_of(sqc("prob --source bloch:0.5,0,0.333333333333 --target bloch:-0.5,0,0"));
    CHECK(j["max_probability"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    j = json_of(sqc("prob --source bloch:0,0,0.5 --target bloch:0.1,0,0"));
    CHECK(j["max_probability"].get<double>() == 0.0);
    j = json_of(sqc("prob --source bloch:0.5,0,0.333333333333 --target bloch:0.53033,0,0 --synthesize"));
    CHECK(j["max_probability"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(2e-3));
    CHECK(j["residual"].get<double>() < 1e-9);
    CHECK(j["instrument"]["success"].size() > 0);
    j = json_of(sqc("prob --rx 0.5 --rz 0.333333333333 --target bloch:-0.5,0,0"));
    CHECK(j["verdict"]["reachable"].get<bool>());
    const auto csv = sqc("prob --source bloch:0.6,0,0.7 --target bloch:0.84,0,0 --p 1 --format csv");
    CHECK(csv.out.find("reachable,false") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(sqc("prob --source bloch:1,2 --target bloch:0,0,0").code == 2);
    CHECK(sqc("prob --source bloch:0.9,0.9,0 --target bloch:0,0,0").code == 3);
    CHECK(sqc("prob --target bloch:0,0,0").code == 2);
    CHECK(sqc("nonsense").code == 2);
    CHECK(sqc("measures --state bloch:0,0,0 --precision 4").code == 2);
    CHECK(sqc("rates --q-min 0.4 --q-max 0.3").code == 2);
}

TEST_CASE("region") {
    auto j = json_of(sqc("region"));
    REQUIRE(j["curves"].size() == 3);
    CHECK(j["nested"].get<bool>());
    for (const auto& c : j["curves"]) CHECK(c["points"].size() == 256);
    j = json_of(sqc("region --n 2 --p 0.3"));
    const auto& pts = j["curves"][0]["points"];
    CHECK(pts[0][0].get<double>() == 0.0);
    CHECK(pts[0][1].get<double>() == 1.0);
    CHECK(pts[1][0].get<double>() == doctest::Approx(0.840168050417));
    const auto a = json_of(sqc("region --p 0.3")), b = json_of(sqc("region --p 0.01"));
    CHECK(a["curves"][0]["points"] == b["curves"][0]["points"]);
    j = json_of(sqc("region --p 1 --oracle --grid-density 24 --samples 500"));
    CHECK(j["oracle"][0]["frontier"].size() > 10);
}

TEST_CASE("rates") {
    const auto j = json_of(sqc("rates"));
    REQUIRE(j["rows"].size() == 101);
    const auto& quarter = j["rows"][50];
    CHECK(quarter["q"].get<double>() == doctest::Approx(0.25));
    CHECK(quarter["p"].get<double>() == doctest::Approx(1.0));
    CHECK(quarter["upper"].get<double>() == doctest::Approx(1.0));
    CHECK(quarter["cd_over_cc"].get<double>() == doctest::Approx(0.55641752976));
    CHECK(j["rows"][100]["upper"] == "unbounded");
    const auto below = json_of(sqc("rates --q-min 0.2348 --q-max 0.23483 --n 2"));
    CHECK(below["rows"][0]["p"].get<double>() == 0.0);
    CHECK(below["rows"][1]["p"].get<double>() == 0.0);
}

TEST_CASE("irrev") {
    auto j = json_of(sqc("irrev"));
    REQUIRE(j["lower"].size() == 101);
    CHECK(j["lower"][0]["C_c"].get<double>() == 0.0);
    CHECK(j["lower"][100]["C_c"].get<double>() == 1.0);
    CHECK(j["lower"][100]["C_d"].get<double>() == 1.0);
    j = json_of(sqc("irrev --samples 10000"));
    CHECK(j["violations"].get<int>() == 0);
}

TEST_CASE("synthesize and measures") {
    auto j = json_of(sqc("synthesize --source bloch:0.6,0,0.7 --target bloch:0.840168050416805882,0,0"));
    CHECK(j["p"].get<double>() == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(j["residual"].get<double>() < 1e-9);
    CHECK(j["strictly_incoherent"].get<bool>());
    j = json_of(sqc("measures --state bloch:0.5,0,0.3333333333333333"));
    CHECK(j["coherence_cost"].get<double>() == doctest::Approx(0.354578902665));
    CHECK(j["l1_coherence"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("determinism and output file") {
    const auto a = sqc("region --oracle --grid-density 16 --samples 300 --seed 7 --format csv");
    const auto b = sqc("region --oracle --grid-density 16 --samples 300 --seed 7 --format csv");
    CHECK(a.out == b.out);
    CHECK(sqc("irrev --n 5 --out cli_irrev_test.json").code == 0);
    FILE* f = std::fopen("cli_irrev_test.json", "r");
    REQUIRE(f != nullptr);
    std::fclose(f);
    std::remove("cli_irrev_test.json");
}

TEST_CASE("verify") {
    const auto ok = sqc("verify --suite synthesis --synthesis-count 200");
    CHECK(ok.code == 0);
    const auto j = nlohmann::json::parse(ok.out);
    CHECK(j["pass"].get<bool>());
    CHECK(sqc("verify --suite region --grid-density 24 --samples 2000").code == 0);
    CHECK(sqc("verify --suite cf --cf-count 5").code == 0);
}
