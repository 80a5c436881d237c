#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "caplab/verify.hpp"
#include "json.hpp"
#include "caplab/errors.hpp"
#include "oracles.hpp"

using namespace caplab;
using oracle::pi;

namespace {

RunConfig small(const std::vector<Complex>& coeffs) {
    RunConfig c;
    c.map.coefficients = coeffs;
    c.resolutions = {32, 256, 64, 64};
    return c;
}

}  // namespace

TEST_CASE("parse_config: verification schema") {
    const auto c = parse_config(R"({
        "domain": {"coefficients": [[1, 0], [0.1, -0.05]]},
        "resolutions": {"rings": 64, "sl_grid": 512, "n_r": 128, "n_theta": 96},
        "tolerances": {"residual_V": 1e-7}
    })");
    REQUIRE(c.map.coefficients.size() == 2);
    CHECK(c.map.coefficients[1] == Complex(0.1, -0.05));
    CHECK(c.map.shift == Complex(0.0, 0.0));
    CHECK(c.map.metric == Metric::Sphere);
    CHECK(c.resolutions.rings == 64);
    CHECK(c.resolutions.sl_grid == 512);
    CHECK(c.resolutions.n_r == 128);
    CHECK(c.resolutions.n_theta == 96);
    CHECK(c.tolerances.residual_V == 1e-7);
}

TEST_CASE("parse_config: bare domain and defaults") {
    const auto c = parse_config(R"({"coefficients": [[2, 0]], "shift": [-0.3, 0.1], "metric": "plane"})");
    CHECK(c.map.coefficients.front() == Complex(2.0, 0.0));
    CHECK(c.map.shift == Complex(-0.3, 0.1));
    CHECK(c.map.metric == Metric::Plane);
    CHECK(c.resolutions.rings == 128);
    CHECK(c.resolutions.sl_grid == 2048);
    CHECK(c.resolutions.n_r == 256);
    CHECK(c.resolutions.n_theta == 256);
    CHECK(c.tolerances.residual_V == 0.0);
    CHECK(c.sweep.steps == 10);
}

TEST_CASE("parse_config: errors") {
    for (const char* bad : {"{ not json", "[1, 2]", R"({"domain": {}})", R"({"coefficients": []})",
                            R"({"coefficients": [[1]]})", R"({"coefficients": [["a", 0]]})",
                            R"({"coefficients": [[1, 0]], "metric": "torus"})",
                            R"({"domain": {"coefficients": [[1, 0]]}, "resolutions": {"rings": 2}})",
                            R"({"domain": {"coefficients": [[1, 0]]}, "resolutions": {"rings": 12.5}})",
                            R"({"domain": {"coefficients": [[1, 0]]}, "resolutions": {"sl_grid": -4}})",
                            R"({"domain": {"coefficients": [[1, 0]]}, "tolerances": {"residual_V": "x"}})",
                            R"({"domain": {"coefficients": [[1, 0]]}, "resolutions": 5})"})
        CHECK_THROWS_AS(parse_config(bad), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/caplab.json"), ConfigError);
}

TEST_CASE("scale_resolutions") {
    const auto c = parse_config(R"({"coefficients": [[1, 0]]})");
    const auto h = scale_resolutions(c, 0.5);
    CHECK(h.resolutions.rings == 64);
    CHECK(h.resolutions.sl_grid == 1024);
    CHECK(h.resolutions.n_r == 128);
    const auto tiny = scale_resolutions(c, 1e-6);
    CHECK(tiny.resolutions.rings == 4);
    CHECK(tiny.resolutions.sl_grid == 64);
    CHECK_THROWS_AS(scale_resolutions(c, 0.0), ConfigError);
    CHECK_THROWS_AS(scale_resolutions(c, -1.0), ConfigError);
}

TEST_CASE("make_domain") {
    const auto c = parse_config(R"({"coefficients": [[1, 0]]})");
    CHECK(make_domain(c).area() == doctest::Approx(2.0 * pi).epsilon(1e-12));
}

TEST_CASE("verify_chain on a small hemisphere") {
    const auto rep = verify_chain(small({{1.0, 0.0}}));
    CHECK(rep.pass);
    CHECK(rep.lower_holds);
    CHECK(rep.upper_holds);
    CHECK(std::abs(rep.pole.pole) < 1e-6);
    CHECK(std::abs(rep.kappa1 - 2.0) < 1e-3);
    CHECK(std::abs(rep.mu2_cap - 2.0) < 1e-3);
    CHECK(std::abs(rep.mu2 - 2.0) < 2e-2);
    CHECK(rep.cap_radius == doctest::Approx(pi / 2).epsilon(1e-12));
    CHECK(rep.eps_tot > 0.0);
    CHECK(rep.mu02_cap > rep.mu2_cap);

    const auto again = verify_chain(small({{1.0, 0.0}}));
    CHECK(rep.to_json() == again.to_json());

    const auto j = nlohmann::json::parse(rep.to_json());
    for (const char* key : {"domain", "resolutions", "tolerances", "area", "cap_radius", "balanced_pole", "mu2",
                            "kappa1", "mu2_cap", "chain", "verdict", "error_estimates"})
        CHECK(j.contains(key));
    CHECK(j["resolutions"]["rings"] == 32);
    CHECK(j["verdict"]["pass"] == true);
    CHECK(!j.contains("timings"));
    CHECK(j["mu2"].get<double>() == rep.mu2);
}

TEST_CASE("verify_chain from a file and errors") {
    const std::string path = "verify_test_config.json";
    {
        std::ofstream out(path);
        out << R"({"domain": {"coefficients": [[1, 0]]}, "resolutions": {"rings": 16, "sl_grid": 128, "n_r": 64, "n_theta": 64}})";
    }
    CHECK(verify_chain(path).pass);
    std::remove(path.c_str());

    auto plane = small({{1.0, 0.0}});
    plane.map.metric = Metric::Plane;
    CHECK_THROWS_AS(verify_chain(plane), ConfigError);
}

TEST_CASE("monotonicity_sweep") {
    const double m = 2.0 * pi;
    const auto [g0, g1] = sweep_profiles(m, 1024, 1.0);
    const auto s = monotonicity_sweep(g0, g1, 10);
    REQUIRE(s.rows.size() == 11);
    REQUIRE(s.midpoints.size() == 10);
    CHECK(s.nonincreasing);
    for (std::size_t i = 1; i < s.rows.size(); ++i) CHECK(s.rows[i].kappa1 <= s.rows[i - 1].kappa1);
    CHECK(s.max_relative_difference < 1e-3);
    CHECK(s.rows.front().kappa1 == doctest::Approx(2.0).epsilon(1e-4));

    const auto flat = monotonicity_sweep(g0, g0, 4);
    for (const auto& r : flat.rows) CHECK(r.kappa1 == flat.rows.front().kappa1);
    CHECK(flat.nonincreasing);
    for (const auto& mid : flat.midpoints) CHECK(mid.feynman_hellmann == 0.0);

    CHECK_THROWS_AS(monotonicity_sweep(g1, g0, 4), ProfileMismatch);
    CHECK_THROWS_AS(monotonicity_sweep(g0, g1, 0), DomainError);
}

TEST_CASE("isoperimetric_profile_check") {
    const auto hemi = cap_domain(pi / 2);
    const auto eq = isoperimetric_profile_check(RecenteredDensity(hemi, 0.0), 256);
    CHECK(eq.sandwich_holds);
    double worst = 0.0, gmax = 0.0;
    for (const auto& r : eq.rows) {
        worst = std::max({worst, std::abs(r.g - r.cap), std::abs(r.length_sq - r.cap)});
        gmax = std::max(gmax, r.g);
    }
    CHECK(worst < 1e-8 * gmax);

    const auto off = isoperimetric_profile_check(RecenteredDensity(hemi, 0.4), 256);
    CHECK(off.sandwich_holds);
    CHECK(off.min_interior_gap > 0.0);

    const ConformalDomain p(AnalyticMap{{{1.0, 0.0}, {0.1, 0.0}}});
    for (std::size_t n : {128, 512}) CHECK(isoperimetric_profile_check(RecenteredDensity(p, 0.0), n).sandwich_holds);
}
