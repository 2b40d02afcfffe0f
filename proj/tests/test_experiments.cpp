#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "irslab/experiments.hpp"
#include "irslab/scenario.hpp"

using namespace irslab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path dir;
    TempDir() : dir(fs::temp_directory_path() / "irslab_test_out") {
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string file(const std::string& name) const { return (dir / name).string(); }
};

std::vector<std::string> data_rows(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    return rows;
}

}  // namespace

TEST_CASE("custom sweep: deterministic bytes, audit header, sane values") {
    TempDir tmp;
    const auto params = scenario::default_scenario();
    experiments::ExperimentSpec spec;
    spec.id = experiments::ExperimentId::custom_sweep;
    spec.seed = 42;
    spec.trials = 100;
    spec.sweep_from = 1;
    spec.sweep_to = 32;
    spec.sweep_step = 1;
    spec.mc_every = 8;
    spec.out_path = tmp.file("sweep.csv");

    experiments::run(spec, params);
    const auto first = slurp(spec.out_path);
    experiments::run(spec, params);
    const auto second = slurp(spec.out_path);
    CHECK(first == second);  // byte-identical reruns

    CHECK(first.find("# seed = 42") != std::string::npos);
    CHECK(first.find("# P_dBm = 20") != std::string::npos);
    CHECK(first.find("# kappa_t = 0.0025") != std::string::npos);

    const auto rows = data_rows(first);
    REQUIRE(rows.size() == 32);
    // N=1 row has Monte Carlo columns filled (index 0 % 8 == 0)
    double n, rate, ideal, gap, df, mc, se;
    REQUIRE(std::sscanf(rows[0].c_str(), "%lg,%lg,%lg,%lg,%lg,%lg,%lg", &n, &rate, &ideal,
                        &gap, &df, &mc, &se) == 7);
    CHECK(n == 1.0);
    CHECK(rate > 0.0);
    CHECK(gap > 0.0);
    CHECK(std::abs(mc - rate) < 0.05);

    SUBCASE("doubling trials moves Monte Carlo means by less than 3 std errors") {
        auto spec2 = spec;
        spec2.trials = 200;
        spec2.out_path = tmp.file("sweep2.csv");
        experiments::run(spec2, params);
        const auto rows2 = data_rows(slurp(spec2.out_path));
        double n2, r2, i2, g2, d2, mc2, se2;
        REQUIRE(std::sscanf(rows2[0].c_str(), "%lg,%lg,%lg,%lg,%lg,%lg,%lg", &n2, &r2, &i2,
                            &g2, &d2, &mc2, &se2) == 7);
        CHECK(std::abs(mc2 - mc) < 3.0 * std::sqrt(se * se + se2 * se2) + 1e-12);
    }
}

TEST_CASE("invalid specs are rejected and leave no partial file") {
    TempDir tmp;
    const auto params = scenario::default_scenario();
    experiments::ExperimentSpec spec;
    spec.id = experiments::ExperimentId::custom_sweep;
    spec.out_path = tmp.file("never.csv");
    spec.trials = 0;
    CHECK_THROWS_AS(experiments::run(spec, params), std::invalid_argument);
    CHECK(!fs::exists(spec.out_path));

    spec.trials = 10;
    spec.sweep_from = 10;
    spec.sweep_to = 1;
    CHECK_THROWS_AS(experiments::run(spec, params), std::invalid_argument);
    CHECK(!fs::exists(spec.out_path));
}

TEST_CASE("experiment names round-trip") {
    for (const auto name : {"fig3a", "fig3b", "fig4", "fig5", "fig6a", "fig6b", "custom-sweep"})
        CHECK(experiments::to_string(experiments::parse_experiment_id(name)) ==
              std::string(name));
    CHECK_THROWS_AS(experiments::parse_experiment_id("fig7"), std::invalid_argument);
}

TEST_CASE("power sweep crosses in favor of the IRS above 5 dBm") {
    TempDir tmp;
    const auto params = scenario::default_scenario();
    experiments::ExperimentSpec spec;
    spec.id = experiments::ExperimentId::custom_sweep;
    spec.axis = experiments::SweepAxis::power_dbm;
    spec.sweep_from = 1;
    spec.sweep_to = 50;
    spec.sweep_step = 1;
    spec.fixed_elements = 256;
    spec.out_path = tmp.file("power.csv");
    experiments::run(spec, params);

    for (const auto& row : data_rows(slurp(spec.out_path))) {
        double p_dbm, irs, df;
        REQUIRE(std::sscanf(row.c_str(), "%lg,%lg,%lg", &p_dbm, &irs, &df) == 3);
        if (p_dbm > 5.0) CHECK(irs > df);
    }
}

TEST_CASE("fig4 emits optimization rows and a theta report") {
    TempDir tmp;
    const auto params = scenario::default_scenario();
    experiments::ExperimentSpec spec;
    spec.id = experiments::ExperimentId::fig4;
    spec.seed = 9;
    spec.trials = 60;  // keep the unit suite quick; acceptance runs the full battery
    spec.out_path = tmp.file("fig4.csv");
    experiments::run(spec, params);

    const auto rows = data_rows(slurp(spec.out_path));
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        double n, cf, mc, se, obj, rec, omc, ose, ratio;
        int certified;
        REQUIRE(std::sscanf(row.c_str(), "%lg,%lg,%lg,%lg,%lg,%lg,%lg,%lg,%d,%lg", &n, &cf,
                            &mc, &se, &obj, &rec, &omc, &ose, &certified, &ratio) == 10);
        CHECK(certified == 1);
        CHECK(obj == doctest::Approx(rec).epsilon(1e-9));  // reconstruction matches
        CHECK(obj >= cf - 1e-9);                           // optimized never loses
    }
    CHECK(fs::exists(spec.out_path + ".thetas.csv"));
}
