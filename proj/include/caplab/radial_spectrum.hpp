#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "caplab/conformal_domain.hpp"
#include "caplab/grids.hpp"

namespace caplab {

enum class SLForm { Profile, Weighted, Cap };

/// Lowest eigenpairs of a 1D flux-form problem. Eigenfunctions are sampled at
/// grid.centers; `mass` holds the diagonal of the normalization quadrature, so
/// sum_i mass[i] f_i^2 = 1 for every stored eigenfunction.
struct SLSolution {
    SLForm form = SLForm::Profile;
    CellGrid grid;
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenfunctions;
    std::vector<double> mass;
    bool normalized = true;

    double kappa1() const { return eigenvalues.front(); }
    const std::vector<double>& first() const { return eigenfunctions.front(); }
};

/// -(G f')' + 4 pi^2 f / G = kappa f on (0, M), zero flux at both ends.
SLSolution solve_sl_G(const ProfileFunction& profile, std::size_t count);

/// Relative change of kappa_1 between n / 2 and n cells of a profile sampler;
/// throws ResolutionError above tol.
double sl_G_refinement_check(const std::function<ProfileFunction(std::size_t)>& sampler, std::size_t n,
                             double tol);

struct RadialOptions {
    std::size_t cells = 2048;
    int angular_mode = 1;
};

/// Cell grid on (0, 1) for a pole of modulus |q|: uniform below 0.99, graded
/// toward r = 1 above so the boundary layer of width ~1 - |q| is resolved.
CellGrid radial_grid(double pole_modulus, std::size_t cells);

/// -(r v')' + l^2 v / r = kappa (m(r) / 2 pi) r v on `grid`, with m sampled at the centers.
/// Eigenfunctions are normalized by sum m_i r_i h_i v_i^2 = 1 (the a-variable L2 norm).
SLSolution solve_weighted_on_grid(const CellGrid& grid, std::span<const double> ring_mass, std::size_t count,
                                  int angular_mode);

SLSolution solve_radial_weighted(const RecenteredDensity& density, std::size_t count, RadialOptions options = {});

/// Discrete quotient (sum G_f (df)^2 / dc + 4 pi^2 sum h f^2 / G) / sum h f^2.
double rayleigh_G(std::span<const double> f, const ProfileFunction& profile);

/// R = G f' / f at interior faces, using the first eigenfunction of `solution`.
std::vector<double> log_derivative_ratio(const SLSolution& solution, const ProfileFunction& profile);

/// G_t = (1 - t) G0 + t G1 nodewise.
ProfileFunction interpolate_profiles(const ProfileFunction& g0, const ProfileFunction& g1, double t);

/// d kappa_1 / dt of the family G_t, from the normalized first eigenfunction at t.
double feynman_hellmann_derivative(const ProfileFunction& g0, const ProfileFunction& g1, double t);

}  // namespace caplab
