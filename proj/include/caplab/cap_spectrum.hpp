#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "caplab/errors.hpp"
#include "caplab/grids.hpp"

namespace caplab {

/// Neumann mode problem on the cap of geodesic radius R, angular mode k:
/// -(sin r v')' + k^2 v / sin r = mu sin r v, eigenfunctions normalized by
/// int_0^R v^2 sin r dr = 1 (sampled at grid centers).
struct CapModeSpectrum {
    double radius = 0.0;
    int mode = 0;
    CellGrid grid;
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenfunctions;

    /// v_j(R) by even extrapolation through the last two centers (v'(R) = 0).
    double boundary_value(std::size_t j) const;
};

/// Default cell count: 2048, or 8192 for R > 3.
std::size_t cap_cells(double radius);

CapModeSpectrum solve_cap_mode(double radius, int mode, std::size_t count, std::size_t cells = 0);

struct CapMu2 {
    double mu11 = 0.0;
    double mu02 = 0.0;
    double gap = 0.0;  // mu02 - mu11
};

/// mu_2 of the cap is mu_11; throws ConvergenceError if mu_02 < mu_11 beyond tol.
CapMu2 cap_mu2(double radius, std::size_t cells = 0, double tol = 1e-9);

/// R = arccos(1 - M / 2 pi).
double area_to_radius(double area);

/// g(x) = (2x^2 - 3x + 3) / (x (3 - 2x)) on (0, 3/2). T may be any field type.
template <class T>
T g_ratio(const T& x) {
    const T two(2), three(3);
    const T den = x * (three - two * x);
    if (den == T(0)) throw DomainError("g_ratio: pole at x = 0 or x = 3/2");
    if (x < T(0) || x > three / two) throw DomainError("g_ratio: x outside (0, 3/2)");
    return (two * x * x - three * x + three) / den;
}

/// (formula value -mu v(R)^2 sin R, centered difference of mu_0j over step h).
std::pair<double, double> mu0j_derivative_check(double radius, int j, double h = 1e-4);

/// Discrete quotient on the cap grid (same quadratic form as the solver).
double rayleigh_sl_k(std::span<const double> v, const CellGrid& grid, int mode);

/// Quotient int (v'^2 + k^2 v^2 / sin^2 r) sin r / int v^2 sin r by Gauss-Legendre.
double rayleigh_sl_k(const std::function<double(double)>& v, const std::function<double(double)>& dv,
                     double radius, int mode, int nodes = 200);

}  // namespace caplab
