#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "caplab/conformal_domain.hpp"
#include "caplab/kernels.hpp"
#include "caplab/radial_spectrum.hpp"

namespace caplab {

/// First eigenfunction of the angular-mode-1 weighted radial problem at pole q,
/// together with the ring moments it was built from.
struct RadialEigenfunction {
    CellGrid grid;
    std::vector<double> values;  // v_q at grid centers, sum m r h v^2 = 1
    double kappa = 0.0;
    RingMoments moments;
};

RadialEigenfunction first_radial_eigenfunction(const RecenteredDensity& density, std::size_t cells = 2048);

/// V(q) = int v_q e^{i theta} rho_q^2 from a solved eigenfunction. Near the
/// boundary V(q) ~ -sqrt(M) q.
Complex barycenter_field(const RadialEigenfunction& v);

Complex V_of(const ConformalDomain& domain, Complex q, std::size_t cells = 2048);

/// sup_i |v_q(r_i) - r_i / sqrt(M)|.
double boundary_limit_deviation(const RadialEigenfunction& v, double area);

/// Degree of `field` along |q| = radius. Starts with `points` samples and doubles
/// until every step turns by less than pi/2 (at most 4096 samples).
int winding_number(const ComplexField& field, double radius, int points = 64);

struct BalancedPoleOptions {
    double residual_tol = 0.0;  // absolute tolerance on |V|; 0 means 1e-6 sqrt(M)
    std::size_t cells = 2048;
    double probe_radius = 0.95;
    int probe_points = 64;
    int scan_points = 11;
    double scan_radius = 0.9;
    int max_newton = 50;
    double jacobian_step = 1e-4;
    int max_refinements = 60;
};

struct BalancedPoleResult {
    Complex pole;
    double residual = 0.0;
    int winding = 0;
    int iterations = 0;
    int candidate_basins = 0;
    bool used_fallback = false;
};

BalancedPoleResult find_balanced_pole(const ConformalDomain& domain, BalancedPoleOptions options = {});

struct SteklovSpectrum {
    double area = 0.0;
    std::vector<double> eigenvalues;  // 0, then pairs 2 pi l / M
};

SteklovSpectrum steklov_spectrum(double area, std::size_t count);

struct SteklovRow {
    double magnitude = 0.0;
    double eigenvalue = 0.0;
    double target = 0.0;
    double relative_error = 0.0;
};

struct SteklovTable {
    int sector = 1;
    std::vector<SteklovRow> rows;
    bool decreasing = true;
};

/// Lowest eigenvalue of the angular-sector-l weighted radial problem at poles
/// q = |q| (direction 0), against its boundary-concentration limit 2 pi l / M.
SteklovTable steklov_limit_check(const ConformalDomain& domain, std::span<const double> magnitudes, int sector,
                                 std::size_t cells = 2048);

/// |int rho~_q^2 u - (M / 2 pi) int_{|z|=1} u ds|.
double concentration_error(const RecenteredDensity& density, const std::function<double(Complex)>& u);

}  // namespace caplab
