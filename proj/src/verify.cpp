#include "caplab/verify.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "caplab/cap_spectrum.hpp"
#include "caplab/errors.hpp"
#include "caplab/neumann2d.hpp"
#include "json.hpp"

namespace caplab {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw ConvergenceError(std::string("verify: non-finite ") + what);
}

double fem_mu2(const ConformalDomain& domain, int rings) {
    const DiskMesh mesh = build_disk_mesh(rings);
    const auto res = solve_neumann_weighted(mesh, [&](Complex z) { return domain.density(z); });
    return res.eigenvalues[1];
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

std::string VerificationReport::to_json() const {
    json coeffs = json::array();
    for (const auto& c : config.map.coefficients) coeffs.push_back(complex_json(c));
    json j;
    j["domain"] = {{"coefficients", coeffs},
                   {"shift", complex_json(config.map.shift)},
                   {"metric", config.map.metric == Metric::Sphere ? "sphere" : "plane"}};
    j["resolutions"] = {{"rings", config.resolutions.rings},
                        {"sl_grid", config.resolutions.sl_grid},
                        {"n_r", config.resolutions.n_r},
                        {"n_theta", config.resolutions.n_theta}};
    j["tolerances"] = {{"residual_V", config.tolerances.residual_V}, {"eps_tot", eps_tot}};
    j["area"] = area;
    j["cap_radius"] = cap_radius;
    j["balanced_pole"] = {{"q", complex_json(pole.pole)},
                          {"residual", pole.residual},
                          {"winding", pole.winding},
                          {"iterations", pole.iterations},
                          {"candidate_basins", pole.candidate_basins},
                          {"used_fallback", pole.used_fallback}};
    j["mu2"] = mu2;
    j["kappa1"] = kappa1;
    j["mu2_cap"] = mu2_cap;
    j["mu02_cap"] = mu02_cap;
    j["coarse"] = {{"mu2", mu2_coarse}, {"kappa1", kappa1_coarse}, {"mu2_cap", mu2_cap_coarse}};
    j["error_estimates"] = {{"fem", fem_error}, {"sl", sl_error}, {"eps_tot", eps_tot}};
    j["chain"] = {{"kappa1_minus_mu2", lower_gap()},
                  {"mu2_cap_minus_kappa1", upper_gap()},
                  {"mu2_cap_minus_mu2", mu2_cap - mu2}};
    j["verdict"] = {{"mu2_le_kappa1", lower_holds},
                    {"kappa1_le_mu2_cap", upper_holds},
                    {"near_equality_lower", lower_near_equality},
                    {"near_equality_upper", upper_near_equality},
                    {"pass", pass}};
    return j.dump(2);
}

VerificationReport verify_chain(const RunConfig& config) {
    if (config.map.metric != Metric::Sphere) throw ConfigError("verify: the comparison cap needs metric \"sphere\"");
    VerificationReport rep;
    rep.config = config;
    const auto& res = config.resolutions;
    const ConformalDomain domain = make_domain(config);
    rep.area = domain.area();
    rep.cap_radius = area_to_radius(rep.area);
    if (rep.config.tolerances.residual_V <= 0.0) rep.config.tolerances.residual_V = 1e-6 * std::sqrt(rep.area);

    auto start = Clock::now();
    BalancedPoleOptions popt;
    popt.cells = res.sl_grid;
    popt.residual_tol = rep.config.tolerances.residual_V;
    rep.pole = find_balanced_pole(domain, popt);
    rep.timings.pole = seconds_since(start);

    start = Clock::now();
    const RecenteredDensity density(domain, rep.pole.pole);
    rep.kappa1 = solve_radial_weighted(density, 1, {res.sl_grid, 1}).kappa1();
    rep.kappa1_coarse = solve_radial_weighted(density, 1, {res.sl_grid / 2, 1}).kappa1();
    rep.timings.radial = seconds_since(start);

    start = Clock::now();
    const std::size_t cap_n = rep.cap_radius > 3.0 ? 4 * res.sl_grid : res.sl_grid;
    const CapMu2 cap = cap_mu2(rep.cap_radius, cap_n);
    rep.mu2_cap = cap.mu11;
    rep.mu02_cap = cap.mu02;
    rep.mu2_cap_coarse = cap_mu2(rep.cap_radius, cap_n / 2).mu11;
    rep.timings.cap = seconds_since(start);

    start = Clock::now();
    rep.mu2 = fem_mu2(domain, res.rings);
    rep.mu2_coarse = fem_mu2(domain, std::max(4, res.rings / 2));
    rep.timings.fem = seconds_since(start);

    rep.fem_error = std::abs(rep.mu2 - rep.mu2_coarse) / 3.0;
    rep.sl_error = std::max(std::abs(rep.kappa1 - rep.kappa1_coarse), std::abs(rep.mu2_cap - rep.mu2_cap_coarse)) / 3.0;
    rep.eps_tot = 2.0 * (rep.fem_error + rep.sl_error);
    for (double x : {rep.area, rep.mu2, rep.kappa1, rep.mu2_cap, rep.mu2_coarse, rep.kappa1_coarse,
                     rep.mu2_cap_coarse, rep.eps_tot})
        require_finite(x, "report field");

    rep.lower_holds = rep.mu2 <= rep.kappa1 + rep.eps_tot;
    rep.upper_holds = rep.kappa1 <= rep.mu2_cap + rep.eps_tot;
    rep.lower_near_equality = std::abs(rep.lower_gap()) <= rep.eps_tot;
    rep.upper_near_equality = std::abs(rep.upper_gap()) <= rep.eps_tot;
    rep.pass = rep.lower_holds && rep.upper_holds;
    return rep;
}

VerificationReport verify_chain(const std::string& config_path) { return verify_chain(load_config(config_path)); }

std::pair<ProfileFunction, ProfileFunction> sweep_profiles(double area, std::size_t n, double amplitude) {
    const double four_pi = 4.0 * std::numbers::pi;
    auto g0 = ProfileFunction::from_function(area, n, [&](double a) { return a * (four_pi - a); });
    auto g1 = ProfileFunction::from_function(
        area, n, [&](double a) { return a * (four_pi - a) + amplitude * a * (area - a) / (area * area); });
    return {std::move(g0), std::move(g1)};
}

MonotonicitySweep monotonicity_sweep(const ProfileFunction& g0, const ProfileFunction& g1, int steps, double h) {
    if (steps < 1) throw DomainError("monotonicity_sweep: steps must be positive");
    for (std::size_t i = 0; i < g0.size() && i < g1.size(); ++i)
        if (g0.at_centers[i] > g1.at_centers[i]) throw ProfileMismatch("monotonicity_sweep: G0 > G1 at a node");
    for (std::size_t i = 0; i < g0.at_faces.size() && i < g1.at_faces.size(); ++i)
        if (g0.at_faces[i] > g1.at_faces[i]) throw ProfileMismatch("monotonicity_sweep: G0 > G1 at a face");

    auto kappa = [&](double t) { return solve_sl_G(interpolate_profiles(g0, g1, t), 1).kappa1(); };
    MonotonicitySweep out;
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        out.rows.push_back({t, kappa(t)});
        if (i > 0 && out.rows[i].kappa1 > out.rows[i - 1].kappa1) out.nonincreasing = false;
    }
    for (int i = 0; i < steps; ++i) {
        SweepMidpoint m;
        m.t = (i + 0.5) / steps;
        m.feynman_hellmann = feynman_hellmann_derivative(g0, g1, m.t);
        m.finite_difference = (kappa(m.t + h) - kappa(m.t - h)) / (2.0 * h);
        const double scale = std::max(std::abs(m.feynman_hellmann), std::abs(m.finite_difference));
        m.relative_difference = scale > 0.0 ? std::abs(m.feynman_hellmann - m.finite_difference) / scale : 0.0;
        out.max_relative_difference = std::max(out.max_relative_difference, m.relative_difference);
        out.midpoints.push_back(m);
    }
    return out;
}

ProfileCheck isoperimetric_profile_check(const RecenteredDensity& density, std::size_t n) {
    const double four_pi = 4.0 * std::numbers::pi;
    const AreaCoordinate coord(density);
    const ProfileFunction g = profile_G(density, n);
    ProfileCheck out;
    double gmax = 0.0;
    for (double x : g.at_centers) gmax = std::max(gmax, x);
    out.tolerance = 1e-8 * gmax;
    out.min_interior_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.size(); ++i) {
        ProfileCheckRow row;
        row.a = g.grid.centers[i];
        row.g = g.at_centers[i];
        row.cap = row.a * (four_pi - row.a);
        const double len = level_curve_length(density, coord, row.a);
        row.length_sq = len * len;
        out.max_lower_violation = std::max(out.max_lower_violation, row.cap - row.length_sq);
        out.max_upper_violation = std::max(out.max_upper_violation, row.length_sq - row.g);
        out.min_interior_gap = std::min(out.min_interior_gap, row.g - row.cap);
        out.rows.push_back(row);
    }
    out.sandwich_holds = out.max_lower_violation <= out.tolerance && out.max_upper_violation <= out.tolerance;
    return out;
}

}  // namespace caplab
