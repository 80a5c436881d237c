#include "caplab/radial_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "caplab/errors.hpp"
#include "caplab/kernels.hpp"
#include "caplab/tridiagonal.hpp"

namespace caplab {
namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

void require_same_grid(const ProfileFunction& a, const ProfileFunction& b) {
    if (a.size() != b.size() || a.total_area != b.total_area || a.grid.centers != b.grid.centers)
        throw ProfileMismatch("profiles are sampled on different grids");
}

// First eigenfunction positive; the rest positive at the last node (first nonzero node on a tie).
void fix_signs(SLSolution& s) {
    for (std::size_t k = 0; k < s.eigenfunctions.size(); ++k) {
        auto& v = s.eigenfunctions[k];
        double ref = 0.0;
        if (k == 0) {
            for (double x : v) ref += x;
        } else {
            ref = v.back();
            for (std::size_t i = 0; ref == 0.0 && i < v.size(); ++i) ref = v[i];
        }
        if (ref < 0.0)
            for (double& x : v) x = -x;
    }
}

SLSolution solve_flux_form(SLForm form, const CellGrid& grid, std::span<const double> face_coeff,
                           std::span<const double> potential, std::span<const double> weight, std::size_t count) {
    const std::size_t n = grid.cells();
    if (count < 1 || count > n) throw DomainError("eigenpair count out of range");
    SymTridiagonal k;
    k.diag.assign(potential.begin(), potential.end());
    k.off.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double c = face_coeff[i + 1] / grid.center_gap(i);
        k.diag[i] += c;
        k.diag[i + 1] += c;
        k.off[i] = -c;
    }
    const auto pairs = lowest_generalized_eigenpairs(k, weight, count);
    SLSolution s;
    s.form = form;
    s.grid = grid;
    s.eigenvalues = pairs.values;
    s.eigenfunctions = pairs.vectors;
    s.mass.assign(weight.begin(), weight.end());
    fix_signs(s);
    return s;
}

}  // namespace

SLSolution solve_sl_G(const ProfileFunction& profile, std::size_t count) {
    profile.validate();
    const auto& g = profile.grid;
    const std::size_t n = g.cells();
    std::vector<double> potential(n), weight(n);
    for (std::size_t i = 0; i < n; ++i) {
        weight[i] = g.width(i);
        potential[i] = kFourPiSq * weight[i] / profile.at_centers[i];
    }
    return solve_flux_form(SLForm::Profile, g, profile.at_faces, potential, weight, count);
}

double sl_G_refinement_check(const std::function<ProfileFunction(std::size_t)>& sampler, std::size_t n, double tol) {
    const double fine = solve_sl_G(sampler(n), 1).kappa1();
    const double coarse = solve_sl_G(sampler(n / 2), 1).kappa1();
    const double change = std::abs(fine - coarse) / std::abs(fine);
    if (change > tol)
        throw ResolutionError("solve_sl_G: kappa_1 changed by " + std::to_string(change) + " under refinement");
    return change;
}

CellGrid radial_grid(double pole_modulus, std::size_t cells) {
    if (pole_modulus < 0.99) return uniform_grid(0.0, 1.0, cells);
    const double ratio = std::min(0.5, static_cast<double>(cells) * (1.0 - pole_modulus) / 8.0);
    return boundary_graded_grid(cells, grading_parameter(ratio));
}

SLSolution solve_weighted_on_grid(const CellGrid& grid, std::span<const double> ring_mass, std::size_t count,
                                  int angular_mode) {
    const std::size_t n = grid.cells();
    if (ring_mass.size() != n) throw DomainError("solve_weighted_on_grid: ring mass size mismatch");
    const double l2 = static_cast<double>(angular_mode) * angular_mode;
    std::vector<double> potential(n), weight(n), norm_mass(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(ring_mass[i] > 0.0)) throw DomainError("solve_weighted_on_grid: ring mass must be positive");
        const double r = grid.centers[i], h = grid.width(i);
        potential[i] = l2 * h / r;
        weight[i] = ring_mass[i] / (2.0 * std::numbers::pi) * r * h;
        norm_mass[i] = ring_mass[i] * r * h;
    }
    SLSolution s = solve_flux_form(SLForm::Weighted, grid, grid.faces, potential, weight, count);
    const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    for (auto& v : s.eigenfunctions)
        for (double& x : v) x *= scale;
    s.mass = std::move(norm_mass);
    return s;
}

SLSolution solve_radial_weighted(const RecenteredDensity& density, std::size_t count, RadialOptions options) {
    const CellGrid grid = radial_grid(std::abs(density.pole()), options.cells);
    const auto mass = tabulate_ring_mass(density, grid.centers);
    return solve_weighted_on_grid(grid, mass, count, options.angular_mode);
}

double rayleigh_G(std::span<const double> f, const ProfileFunction& profile) {
    const auto& g = profile.grid;
    const std::size_t n = g.cells();
    if (f.size() != n) throw ProfileMismatch("rayleigh_G: function and profile sizes differ");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double h = g.width(i);
        num += kFourPiSq * h * f[i] * f[i] / profile.at_centers[i];
        den += h * f[i] * f[i];
        if (i + 1 < n) {
            const double df = f[i + 1] - f[i];
            num += profile.at_faces[i + 1] * df * df / g.center_gap(i);
        }
    }
    if (!(den > 0.0)) throw DomainError("rayleigh_G: zero function");
    return num / den;
}

std::vector<double> log_derivative_ratio(const SLSolution& solution, const ProfileFunction& profile) {
    const auto& f = solution.first();
    const auto& g = profile.grid;
    if (f.size() != g.cells()) throw ProfileMismatch("log_derivative_ratio: solution and profile sizes differ");
    for (double x : f)
        if (!(x > 0.0)) throw SignChangeError("log_derivative_ratio: first eigenfunction changes sign");
    std::vector<double> r(f.size() - 1);
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
        r[i] = profile.at_faces[i + 1] * (f[i + 1] - f[i]) / g.center_gap(i) / (0.5 * (f[i] + f[i + 1]));
    return r;
}

ProfileFunction interpolate_profiles(const ProfileFunction& g0, const ProfileFunction& g1, double t) {
    require_same_grid(g0, g1);
    ProfileFunction out = g0;
    for (std::size_t i = 0; i < out.at_centers.size(); ++i)
        out.at_centers[i] = (1.0 - t) * g0.at_centers[i] + t * g1.at_centers[i];
    for (std::size_t i = 0; i < out.at_faces.size(); ++i)
        out.at_faces[i] = (1.0 - t) * g0.at_faces[i] + t * g1.at_faces[i];
    return out;
}

double feynman_hellmann_derivative(const ProfileFunction& g0, const ProfileFunction& g1, double t) {
    require_same_grid(g0, g1);
    const ProfileFunction gt = interpolate_profiles(g0, g1, t);
    const SLSolution s = solve_sl_G(gt, 1);
    const auto& f = s.first();
    const auto& g = gt.grid;
    double d = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double gi = gt.at_centers[i];
        d -= kFourPiSq * f[i] * f[i] * g.width(i) * (g1.at_centers[i] - g0.at_centers[i]) / (gi * gi);
        if (i + 1 < f.size()) {
            const double df = f[i + 1] - f[i];
            d += (g1.at_faces[i + 1] - g0.at_faces[i + 1]) * df * df / g.center_gap(i);
        }
    }
    return d;
}

}  // namespace caplab
