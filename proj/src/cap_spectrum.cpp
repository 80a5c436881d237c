#include "caplab/cap_spectrum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "caplab/quadrature.hpp"
#include "caplab/tridiagonal.hpp"

namespace caplab {
namespace {

SymTridiagonal cap_operator(const CellGrid& grid, int mode) {
    const std::size_t n = grid.cells();
    const double k2 = static_cast<double>(mode) * mode;
    SymTridiagonal t;
    t.diag.resize(n);
    t.off.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i) t.diag[i] = k2 * grid.width(i) / std::sin(grid.centers[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double c = std::sin(grid.faces[i + 1]) / grid.center_gap(i);
        t.diag[i] += c;
        t.diag[i + 1] += c;
        t.off[i] = -c;
    }
    return t;
}

std::vector<double> cap_mass(const CellGrid& grid) {
    std::vector<double> w(grid.cells());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::sin(grid.centers[i]) * grid.width(i);
    return w;
}

}  // namespace

double CapModeSpectrum::boundary_value(std::size_t j) const {
    const auto& v = eigenfunctions.at(j);
    const std::size_t n = v.size();
    return v[n - 1] - (v[n - 2] - v[n - 1]) / 8.0;
}

std::size_t cap_cells(double radius) { return radius > 3.0 ? 8192 : 2048; }

CapModeSpectrum solve_cap_mode(double radius, int mode, std::size_t count, std::size_t cells) {
    if (!(radius > 0.0 && radius < std::numbers::pi)) throw DomainError("solve_cap_mode: R must lie in (0, pi)");
    if (mode < 0) throw DomainError("solve_cap_mode: mode must be nonnegative");
    if (count < 1) throw DomainError("solve_cap_mode: count must be positive");
    if (cells == 0) cells = cap_cells(radius);
    CapModeSpectrum s;
    s.radius = radius;
    s.mode = mode;
    s.grid = uniform_grid(0.0, radius, cells);
    const auto w = cap_mass(s.grid);
    auto pairs = lowest_generalized_eigenpairs(cap_operator(s.grid, mode), w, count);
    s.eigenvalues = std::move(pairs.values);
    s.eigenfunctions = std::move(pairs.vectors);
    for (std::size_t j = 0; j < s.eigenfunctions.size(); ++j) {
        auto& v = s.eigenfunctions[j];
        double ref = 0.0;
        if (j == 0) {
            for (double x : v) ref += x;
        } else {
            ref = v.back();
        }
        if (ref < 0.0)
            for (double& x : v) x = -x;
    }
    return s;
}

CapMu2 cap_mu2(double radius, std::size_t cells, double tol) {
    CapMu2 out;
    out.mu11 = solve_cap_mode(radius, 1, 1, cells).eigenvalues[0];
    out.mu02 = solve_cap_mode(radius, 0, 2, cells).eigenvalues[1];
    out.gap = out.mu02 - out.mu11;
    if (out.gap < -tol)
        throw ConvergenceError("cap_mu2: mu_02 < mu_11 at R = " + std::to_string(radius) + " (solver failure)");
    return out;
}

double area_to_radius(double area) {
    if (!(area > 0.0 && area < 4.0 * std::numbers::pi)) throw DomainError("area_to_radius: M must lie in (0, 4 pi)");
    // 1 - cos R = 2 sin^2(R/2) avoids cancellation for small M.
    return 2.0 * std::asin(std::sqrt(area / (4.0 * std::numbers::pi)));
}

std::pair<double, double> mu0j_derivative_check(double radius, int j, double h) {
    if (j < 2) throw DomainError("mu0j_derivative_check: j must be at least 2");
    const std::size_t idx = static_cast<std::size_t>(j - 1);
    const std::size_t cells = cap_cells(radius + h);
    const auto s = solve_cap_mode(radius, 0, idx + 1, cells);
    const double mu = s.eigenvalues[idx];
    const double vr = s.boundary_value(idx);
    const double formula = -mu * vr * vr * std::sin(radius);
    const double up = solve_cap_mode(radius + h, 0, idx + 1, cells).eigenvalues[idx];
    const double down = solve_cap_mode(radius - h, 0, idx + 1, cells).eigenvalues[idx];
    return {formula, (up - down) / (2.0 * h)};
}

double rayleigh_sl_k(std::span<const double> v, const CellGrid& grid, int mode) {
    if (v.size() != grid.cells()) throw DomainError("rayleigh_sl_k: size mismatch");
    const auto t = cap_operator(grid, mode);
    const auto w = cap_mass(grid);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double tv = t.diag[i] * v[i];
        if (i > 0) tv += t.off[i - 1] * v[i - 1];
        if (i + 1 < v.size()) tv += t.off[i] * v[i + 1];
        num += v[i] * tv;
        den += w[i] * v[i] * v[i];
    }
    if (!(den > 0.0)) throw DomainError("rayleigh_sl_k: zero function");
    return num / den;
}

double rayleigh_sl_k(const std::function<double(double)>& v, const std::function<double(double)>& dv,
                     double radius, int mode, int nodes) {
    if (!(radius > 0.0 && radius < std::numbers::pi)) throw DomainError("rayleigh_sl_k: R must lie in (0, pi)");
    const auto rule = gauss_legendre(nodes, 0.0, radius);
    const double k2 = static_cast<double>(mode) * mode;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double r = rule.nodes[i], s = std::sin(r);
        const double x = v(r), dx = dv(r);
        num += rule.weights[i] * (dx * dx * s + k2 * x * x / s);
        den += rule.weights[i] * x * x * s;
    }
    if (!(den > 0.0)) throw DomainError("rayleigh_sl_k: zero function");
    return num / den;
}

}  // namespace caplab
