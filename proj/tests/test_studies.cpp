#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "magspec/studies.hpp"

using namespace magspec;
namespace fs = std::filesystem;

TEST_CASE("config defaults round-trip through JSON") {
    for (const char* kind : {"band-table", "simple-well", "double-well", "camel-1bump",
                             "camel-2bump", "agmon", "domain-convergence"}) {
        SweepConfig c = SweepConfig::defaults(kind, kind == std::string("simple-well") ? 1 : 0);
        SweepConfig back = SweepConfig::from_json(c.to_json());
        CHECK(back.study_kind == c.study_kind);
        CHECK(back.k == c.k);
        CHECK(back.h_list == c.h_list);
        CHECK(back.nx == c.nx);
        CHECK(back.gamma_coeffs == c.gamma_coeffs);
        CHECK(back.seed == c.seed);
    }
    CHECK_THROWS(SweepConfig::defaults("no-such-study", 0));
}

TEST_CASE("config validation rejects bad h lists") {
    SweepConfig c = SweepConfig::defaults("double-well", 0);
    c.h_list = {};
    CHECK_THROWS(c.validate());
    c.h_list = {0.1, 0.2};   // must decrease
    CHECK_THROWS(c.validate());
    c.h_list = {0.2, -0.1};
    CHECK_THROWS(c.validate());
    c.h_list = {0.2, 0.1};
    c.gamma_coeffs.clear();
    CHECK_THROWS(c.validate());
}

TEST_CASE("report writer emits the agreed CSV layout") {
    StudyReport rep;
    rep.config = SweepConfig::defaults("double-well", 0);
    rep.config.emit_plots = true;
    StudyRow r;
    r.study = "double-well";
    r.k = 0;
    r.h = 0.125;
    r.n = 1;
    r.lambda = 0.59;
    r.residual = 1e-11;
    r.nx = 321;
    r.ny = 211;
    r.a = 2.0;
    r.b = 7.0;
    rep.rows.push_back(r);
    rep.verdicts = nlohmann::json::array();
    rep.verdicts.push_back({{"name", "x"}, {"measured", 1.0}, {"expected", "y"}, {"pass", true}});

    fs::path dir = fs::temp_directory_path() / "magspec_report_test";
    fs::remove_all(dir);
    rep.write(dir.string());
    std::ifstream f(dir / "rows.csv");
    std::string header;
    std::getline(f, header);
    CHECK(header == "study,k,h,n,lambda,residual,nx,ny,a,b");
    std::string line;
    std::getline(f, line);
    CHECK(line.rfind("double-well,0,0.125,1,0.59", 0) == 0);

    nlohmann::json j;
    std::ifstream jf(dir / "report.json");
    jf >> j;
    CHECK(j["config"]["study_kind"] == "double-well");
    CHECK(j["rows"].size() == 1);
    CHECK(j["verdicts"][0]["pass"] == true);
    CHECK(rep.all_passed());
    CHECK(fs::exists(dir / "rows.gp"));
    fs::remove_all(dir);
}

TEST_CASE("all_passed reflects any failing verdict") {
    StudyReport rep;
    rep.verdicts = nlohmann::json::array();
    rep.verdicts.push_back({{"name", "a"}, {"measured", 0.0}, {"expected", ""}, {"pass", true}});
    rep.verdicts.push_back({{"name", "b"}, {"measured", 0.0}, {"expected", ""}, {"pass", false}});
    CHECK_FALSE(rep.all_passed());
}

TEST_CASE("band table study writes the fiber CSV and minimum JSON") {
    SweepConfig c = SweepConfig::defaults("band-table", 0);
    fs::path dir = fs::temp_directory_path() / "magspec_band_test";
    fs::remove_all(dir);
    c.output_dir = dir.string();
    StudyReport rep = run_band_table(c);
    CHECK(rep.all_passed());
    CHECK(rep.predictions["band_minimum"]["zeta0"].get<double>() ==
          doctest::Approx(0.76818202).epsilon(2e-5));
    CHECK(rep.predictions["band_minimum"]["C1"].get<double>() ==
          doctest::Approx(0.25406719).epsilon(1e-4));

    std::ifstream f(dir / "band.csv");
    std::string header;
    std::getline(f, header);
    CHECK(header == "k,zeta,nu,residual");
    int lines = 0;
    std::string line;
    while (std::getline(f, line)) ++lines;
    CHECK(lines == 81);
    CHECK(fs::exists(dir / "band_minimum.json"));
    fs::remove_all(dir);
}

TEST_CASE("study dispatcher rejects unknown kinds") {
    SweepConfig c = SweepConfig::defaults("band-table", 0);
    c.study_kind = "nope";
    CHECK_THROWS(run_study(c));
}
