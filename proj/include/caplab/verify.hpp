#pragma once

#include <string>
#include <vector>

#include "caplab/barycenter.hpp"
#include "caplab/config.hpp"
#include "caplab/radial_spectrum.hpp"

namespace caplab {

struct ChainTimings {
    double pole = 0.0;
    double radial = 0.0;
    double fem = 0.0;
    double cap = 0.0;
};

/// mu_2(domain) <= kappa_1(domain, balanced pole) <= mu_2(equal-area cap), each
/// side allowed eps_tot of slack. Error estimates are |fine - coarse| / 3 with
/// the coarse run at half resolution.
struct VerificationReport {
    RunConfig config;
    double area = 0.0;
    double cap_radius = 0.0;
    BalancedPoleResult pole;
    double mu2 = 0.0;
    double kappa1 = 0.0;
    double mu2_cap = 0.0;
    double mu02_cap = 0.0;
    double mu2_coarse = 0.0;
    double kappa1_coarse = 0.0;
    double mu2_cap_coarse = 0.0;
    double fem_error = 0.0;
    double sl_error = 0.0;
    double eps_tot = 0.0;
    bool lower_holds = false;
    bool upper_holds = false;
    bool lower_near_equality = false;
    bool upper_near_equality = false;
    bool pass = false;
    ChainTimings timings;

    double lower_gap() const { return kappa1 - mu2; }
    double upper_gap() const { return mu2_cap - kappa1; }
    /// Deterministic JSON (no timings), full double precision.
    std::string to_json() const;
};

VerificationReport verify_chain(const RunConfig& config);
VerificationReport verify_chain(const std::string& config_path);

struct SweepRow {
    double t = 0.0;
    double kappa1 = 0.0;
};

struct SweepMidpoint {
    double t = 0.0;
    double feynman_hellmann = 0.0;
    double finite_difference = 0.0;
    double relative_difference = 0.0;
};

struct MonotonicitySweep {
    std::vector<SweepRow> rows;
    std::vector<SweepMidpoint> midpoints;
    bool nonincreasing = true;
    double max_relative_difference = 0.0;
};

/// kappa_1(G_t) on t = 0, 1/steps, ..., 1 with Feynman-Hellmann vs centered
/// difference (step h) at each midpoint. Throws ProfileMismatch unless G0 <= G1.
MonotonicitySweep monotonicity_sweep(const ProfileFunction& g0, const ProfileFunction& g1, int steps,
                                     double h = 1e-3);

/// G0 = a (4 pi - a) and G1 = G0 + amplitude a (M - a) / M^2 on the sqrt-area grid.
std::pair<ProfileFunction, ProfileFunction> sweep_profiles(double area, std::size_t n, double amplitude);

struct ProfileCheckRow {
    double a = 0.0;
    double g = 0.0;
    double cap = 0.0;          // a (4 pi - a)
    double length_sq = 0.0;    // L(a)^2
};

struct ProfileCheck {
    std::vector<ProfileCheckRow> rows;
    double tolerance = 0.0;
    bool sandwich_holds = true;          // cap <= L^2 <= G within tolerance
    double max_lower_violation = 0.0;    // max(cap - L^2, 0)
    double max_upper_violation = 0.0;    // max(L^2 - G, 0)
    double min_interior_gap = 0.0;       // min over rows of G - cap
};

ProfileCheck isoperimetric_profile_check(const RecenteredDensity& density, std::size_t n);

}  // namespace caplab
