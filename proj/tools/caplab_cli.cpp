// caplab: command-line front end.
// Exit status: 0 success, 1 an inequality or property check failed,
// 2 numerical or configuration failure.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "caplab/barycenter.hpp"
#include "caplab/cap_spectrum.hpp"
#include "caplab/config.hpp"
#include "caplab/errors.hpp"
#include "caplab/neumann2d.hpp"
#include "caplab/radial_spectrum.hpp"
#include "caplab/verify.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
using caplab::Complex;

struct Globals {
    std::string out_dir;
    double resolution_scale = 1.0;
    bool timings = false;
};

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex parse_pole(const std::string& text) {
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re) || !(in >> comma) || comma != ',' || !(in >> im) || !(in >> std::ws).eof())
        throw caplab::ConfigError("--pole must be re,im");
    return {re, im};
}

caplab::RunConfig load(const Globals& g, const std::string& path) {
    return caplab::scale_resolutions(caplab::load_config(path), g.resolution_scale);
}

std::filesystem::path out_file(const Globals& g, const std::string& name) {
    std::filesystem::create_directories(g.out_dir);
    return std::filesystem::path(g.out_dir) / name;
}

void emit(const Globals& g, const json& j, const std::string& name) {
    const std::string text = j.dump(2);
    std::cout << text << '\n';
    if (!g.out_dir.empty()) {
        std::ofstream f(out_file(g, name));
        f << text << '\n';
        if (!f) throw caplab::ConfigError("cannot write " + name);
    }
}

class Csv {
public:
    Csv(const Globals& g, const std::string& name, const std::string& header) {
        if (g.out_dir.empty()) return;
        file_.open(out_file(g, name));
        if (!file_) throw caplab::ConfigError("cannot write " + name);
        file_.precision(17);
        file_ << header << '\n';
    }
    template <class... T>
    void row(const T&... values) {
        if (!file_.is_open()) return;
        int k = 0;
        ((file_ << (k++ ? "," : "") << values), ...);
        file_ << '\n';
    }

private:
    std::ofstream file_;
};

int run_verify(const Globals& g, const std::string& path) {
    const auto start = std::chrono::steady_clock::now();
    const auto report = caplab::verify_chain(load(g, path));
    const std::string text = report.to_json();
    std::cout << text << '\n';
    if (!g.out_dir.empty()) {
        std::ofstream f(out_file(g, "report.json"));
        f << text << '\n';
    }
    if (g.timings) {
        const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cerr << "timings: pole " << report.timings.pole << " s, radial " << report.timings.radial
                  << " s, cap " << report.timings.cap << " s, fem " << report.timings.fem << " s, total " << total
                  << " s\n";
    }
    return report.pass ? 0 : 1;
}

int run_cap(const Globals& g, double radius, int modes) {
    if (modes < 0) throw caplab::ConfigError("--modes must be nonnegative");
    const auto cap = caplab::cap_mu2(radius);
    json j;
    j["radius"] = radius;
    j["area"] = 2.0 * std::numbers::pi * (1.0 - std::cos(radius));
    j["mu2"] = cap.mu11;
    j["mu11"] = cap.mu11;
    j["mu02"] = cap.mu02;
    j["gap"] = cap.gap;
    j["g_bound"] = caplab::g_ratio(std::pow(std::sin(0.5 * radius), 2));
    json table = json::array();
    for (int k = 0; k <= modes; ++k) {
        const auto s = caplab::solve_cap_mode(radius, k, 3);
        table.push_back({{"k", k}, {"eigenvalues", s.eigenvalues}});
    }
    j["modes"] = table;
    emit(g, j, "cap.json");
    return cap.gap > 0.0 ? 0 : 1;
}

int run_radial(const Globals& g, const std::string& path, const std::string& pole, int count) {
    const auto cfg = load(g, path);
    const auto domain = caplab::make_domain(cfg);
    const caplab::RecenteredDensity density(domain, parse_pole(pole));
    const auto weighted = caplab::solve_radial_weighted(density, static_cast<std::size_t>(count),
                                                        {cfg.resolutions.sl_grid, 1});
    const auto profile = caplab::profile_G(density, cfg.resolutions.sl_grid);
    const auto gform = caplab::solve_sl_G(profile, static_cast<std::size_t>(count));
    json j;
    j["pole"] = complex_json(density.pole());
    j["area"] = domain.area();
    j["weighted_eigenvalues"] = weighted.eigenvalues;
    j["profile_eigenvalues"] = gform.eigenvalues;
    j["kappa1_relative_difference"] = std::abs(weighted.kappa1() - gform.kappa1()) / gform.kappa1();
    const auto ratio = caplab::log_derivative_ratio(gform, profile);
    double rmax = 0.0;
    for (double r : ratio) rmax = std::max(rmax, std::abs(r));
    j["max_abs_log_derivative_ratio"] = rmax;
    emit(g, j, "radial.json");
    Csv csv(g, "radial_eigenfunction.csv", "r,v");
    for (std::size_t i = 0; i < weighted.grid.cells(); ++i) csv.row(weighted.grid.centers[i], weighted.first()[i]);
    return rmax < 2.0 * std::numbers::pi ? 0 : 1;
}

int run_neumann(const Globals& g, const std::string& path, int count) {
    const auto cfg = load(g, path);
    const auto domain = caplab::make_domain(cfg);
    const auto mesh = caplab::build_disk_mesh(cfg.resolutions.rings);
    caplab::NeumannOptions opt;
    opt.count = static_cast<std::size_t>(count);
    const auto res = caplab::solve_neumann_weighted(mesh, [&](Complex z) { return domain.density(z); }, opt);
    json j;
    j["area"] = domain.area();
    j["rings"] = cfg.resolutions.rings;
    j["vertices"] = mesh.vertex_count();
    j["triangles"] = mesh.triangle_count();
    j["eigenvalues"] = res.eigenvalues;
    j["residuals"] = res.residuals;
    j["iterations"] = res.iterations;
    emit(g, j, "neumann2d.json");
    if (!g.out_dir.empty()) caplab::write_mesh(mesh, out_file(g, "mesh.txt").string());
    return 0;
}

int run_barycenter(const Globals& g, const std::string& path) {
    const auto cfg = load(g, path);
    const auto domain = caplab::make_domain(cfg);
    caplab::BalancedPoleOptions opt;
    opt.cells = cfg.resolutions.sl_grid;
    opt.residual_tol = cfg.tolerances.residual_V;
    const auto r = caplab::find_balanced_pole(domain, opt);
    json j;
    j["area"] = domain.area();
    j["pole"] = complex_json(r.pole);
    j["residual"] = r.residual;
    j["winding"] = r.winding;
    j["iterations"] = r.iterations;
    j["candidate_basins"] = r.candidate_basins;
    j["used_fallback"] = r.used_fallback;
    emit(g, j, "barycenter.json");
    return 0;
}

int run_steklov(const Globals& g, const std::string& path, const std::vector<double>& magnitudes) {
    const auto cfg = load(g, path);
    const auto domain = caplab::make_domain(cfg);
    json j;
    j["area"] = domain.area();
    j["steklov_spectrum"] = caplab::steklov_spectrum(domain.area(), 5).eigenvalues;
    json tables = json::array();
    bool ok = true;
    Csv csv(g, "steklov.csv", "sector,magnitude,eigenvalue,target,relative_error");
    for (int sector = 1; sector <= 2; ++sector) {
        const auto t = caplab::steklov_limit_check(domain, magnitudes, sector, cfg.resolutions.sl_grid);
        json rows = json::array();
        for (const auto& r : t.rows) {
            rows.push_back({{"magnitude", r.magnitude},
                            {"eigenvalue", r.eigenvalue},
                            {"target", r.target},
                            {"relative_error", r.relative_error}});
            csv.row(sector, r.magnitude, r.eigenvalue, r.target, r.relative_error);
        }
        tables.push_back({{"sector", sector}, {"rows", rows}, {"decreasing", t.decreasing}});
        ok = ok && t.decreasing;
    }
    j["limits"] = tables;
    emit(g, j, "steklov.json");
    return ok ? 0 : 1;
}

int run_sweep(const Globals& g, const std::string& path) {
    const auto cfg = load(g, path);
    const auto domain = caplab::make_domain(cfg);
    const auto [g0, g1] = caplab::sweep_profiles(domain.area(), cfg.resolutions.sl_grid, cfg.sweep.amplitude);
    const auto sweep = caplab::monotonicity_sweep(g0, g1, cfg.sweep.steps);
    json j;
    j["area"] = domain.area();
    json rows = json::array(), mids = json::array();
    Csv csv(g, "sweep.csv", "t,kappa1");
    for (const auto& r : sweep.rows) {
        rows.push_back({{"t", r.t}, {"kappa1", r.kappa1}});
        csv.row(r.t, r.kappa1);
    }
    for (const auto& m : sweep.midpoints)
        mids.push_back({{"t", m.t},
                        {"feynman_hellmann", m.feynman_hellmann},
                        {"finite_difference", m.finite_difference},
                        {"relative_difference", m.relative_difference}});
    j["rows"] = rows;
    j["midpoints"] = mids;
    j["nonincreasing"] = sweep.nonincreasing;
    j["max_relative_difference"] = sweep.max_relative_difference;
    emit(g, j, "sweep.json");
    return sweep.nonincreasing ? 0 : 1;
}

int run_profile(const Globals& g, const std::string& path, const std::string& pole) {
    const auto cfg = load(g, path);
    const auto domain = caplab::make_domain(cfg);
    const caplab::RecenteredDensity density(domain, parse_pole(pole));
    const auto check = caplab::isoperimetric_profile_check(density, cfg.resolutions.sl_grid);
    json j;
    j["pole"] = complex_json(density.pole());
    j["area"] = domain.area();
    j["nodes"] = check.rows.size();
    j["tolerance"] = check.tolerance;
    j["sandwich_holds"] = check.sandwich_holds;
    j["max_lower_violation"] = check.max_lower_violation;
    j["max_upper_violation"] = check.max_upper_violation;
    j["min_gap_G_minus_cap"] = check.min_interior_gap;
    emit(g, j, "profile.json");
    Csv csv(g, "profile.csv", "a,G,cap,L2");
    for (const auto& r : check.rows) csv.row(r.a, r.g, r.cap, r.length_sq);
    return check.sandwich_holds ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Neumann eigenvalue comparison laboratory"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--out", g.out_dir, "Directory for report and table files");
    app.add_option("--resolution-scale", g.resolution_scale, "Multiply every resolution by this factor");
    app.add_flag("--timings", g.timings, "Print stage timings to stderr");

    std::string config, pole = "0,0";
    double radius = 0.0;
    int modes = 2, count = 4;
    std::vector<double> magnitudes{0.9, 0.99, 0.999};

    auto* verify = app.add_subcommand("verify", "Run the full inequality chain");
    verify->add_option("config", config)->required();
    auto* cap = app.add_subcommand("cap", "Cap spectrum");
    cap->add_option("--radius", radius)->required();
    cap->add_option("--modes", modes, "Highest angular mode to tabulate");
    auto* radial = app.add_subcommand("radial", "Radial spectra at a pole");
    radial->add_option("config", config)->required();
    radial->add_option("--pole", pole, "re,im");
    radial->add_option("--count", count);
    auto* neumann = app.add_subcommand("neumann2d", "FEM Neumann spectrum");
    neumann->add_option("config", config)->required();
    neumann->add_option("--count", count);
    auto* bary = app.add_subcommand("barycenter", "Balanced pole");
    bary->add_option("config", config)->required();
    auto* steklov = app.add_subcommand("steklov", "Boundary-concentration limit");
    steklov->add_option("config", config)->required();
    steklov->add_option("--magnitudes", magnitudes)->delimiter(',');
    auto* sweep = app.add_subcommand("sweep-monotone", "Monotonicity sweep");
    sweep->add_option("config", config)->required();
    auto* profile = app.add_subcommand("profile", "Isoperimetric profile check");
    profile->add_option("config", config)->required();
    profile->add_option("--pole", pole, "re,im");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (count < 2) count = 2;

    try {
        if (*verify) return run_verify(g, config);
        if (*cap) return run_cap(g, radius, modes);
        if (*radial) return run_radial(g, config, pole, count);
        if (*neumann) return run_neumann(g, config, count);
        if (*bary) return run_barycenter(g, config);
        if (*steklov) return run_steklov(g, config, magnitudes);
        if (*sweep) return run_sweep(g, config);
        if (*profile) return run_profile(g, config, pole);
    } catch (const caplab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
