#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "caplab/grids.hpp"
#include "caplab/quadrature.hpp"

namespace caplab {

using Complex = std::complex<double>;

/// Target metric of the model. Sphere pulls back the round metric through
/// stereographic projection; Plane is the flat metric (Euclidean test domains).
enum class Metric { Sphere, Plane };

/// F(z) = P(T(z)) with P(w) = sum_k c_k w^k (k >= 1) and T the disk automorphism
/// T(z) = (z - s) / (1 - conj(s) z). With s = 0 this is the plain polynomial map.
/// Univalence on the closed disk is the caller's responsibility.
struct AnalyticMap {
    std::vector<Complex> coefficients;  // c_1, c_2, ..., c_d
    Complex shift{0.0, 0.0};
    Metric metric = Metric::Sphere;

    struct Value {
        Complex f;
        Complex df;
    };
    Value evaluate(Complex z) const;
    void validate() const;
};

struct QuadratureResolution {
    int n_r = 256;
    int n_theta = 256;
};

/// rho^2(z) for the map; throws DegenerateDerivative if |F'(z)| < 1e-12 and
/// DomainError if |z| > 1.
double conformal_factor(const AnalyticMap& map, Complex z);

/// Area of the image by Gauss-Legendre (r) x trapezoid (theta).
double compute_area(const AnalyticMap& map, QuadratureResolution res);

/// A simply connected domain represented as the unit disk with density rho^2.
class ConformalDomain {
public:
    explicit ConformalDomain(AnalyticMap map, QuadratureResolution res = {});

    const AnalyticMap& map() const { return map_; }
    QuadratureResolution resolution() const { return res_; }
    double area() const { return area_; }
    double density(Complex z) const;

private:
    AnalyticMap map_;
    QuadratureResolution res_;
    double area_ = 0.0;
};

double area(const ConformalDomain& domain);

/// Throws ResolutionError if the area at doubled resolution differs by more than tol.
void check_area_resolution(const ConformalDomain& domain, double tol);

/// Spherical cap of geodesic radius R: F(z) = tan(R/2) z.
ConformalDomain cap_domain(double radius, QuadratureResolution res = {});
/// Flat unit disk, rho^2 = 1.
ConformalDomain euclidean_disk(QuadratureResolution res = {});

/// Density of the domain seen from pole q: rho_q^2 = pullback by F o M_q^{-1}.
class RecenteredDensity {
public:
    RecenteredDensity(ConformalDomain domain, Complex pole);

    const ConformalDomain& domain() const { return domain_; }
    Complex pole() const { return pole_; }
    double total_area() const { return domain_.area(); }

    double operator()(Complex z) const;

    /// int_0^{2 pi} rho_q^2(r e^{i theta}) e^{-i m theta} d theta.
    Complex angular_moment(double r, int mode) const;
    /// Mode 0 and mode -1 (weight e^{+i theta}) in one pass.
    void moments(double r, double& mass, Complex& first) const;
    /// Angular average of rho_q^2.
    double radialized(double r) const;
    /// m(r) = int rho_q^2(r, theta) d theta = 2 pi radialized(r).
    double ring_mass(double r) const;
    /// Length of the circle |z| = r in the metric rho_q^2 g_E.
    double circle_length(double r) const;

    /// Angular node count used at radius r for a given mode.
    int angular_nodes(double r, int mode) const;

private:
    template <class Fn>
    void angular_sweep(double r, int nodes, Fn&& fn) const;

    ConformalDomain domain_;
    Complex pole_;
};

/// The cumulative area s_q(r) = int_{|z|<r} rho_q^2 and its inverse. On each
/// panel r m(r) is replaced by its degree-9 Legendre interpolant at the
/// Gauss nodes, which integrates in closed form.
class AreaCoordinate {
public:
    static constexpr int kPanelOrder = 10;

    explicit AreaCoordinate(const RecenteredDensity& density);

    double total() const { return cumulative_.back(); }
    double operator()(double r) const;
    /// s_q'(r) = r m(r), evaluated exactly.
    double derivative(double r) const { return r * density_.ring_mass(r); }
    double inverse(double a) const;

    const std::vector<double>& knots() const { return knots_; }

private:
    using Coefficients = std::array<double, kPanelOrder>;

    std::size_t panel_of(double r) const;
    double local(double r) const;  // xi in [-1, 1] on the panel containing r
    double partial(std::size_t k, double xi) const;
    double integrand(std::size_t k, double xi) const;

    RecenteredDensity density_;
    std::vector<double> knots_;
    std::vector<double> cumulative_;
    std::vector<Coefficients> legendre_;
};

double cumulative_area(const RecenteredDensity& density, double r);
double recentered_density(const ConformalDomain& domain, Complex q, Complex z);
double radialized_weight(const RecenteredDensity& density, double r);
Complex fourier_mode(const RecenteredDensity& density, int mode, double r);

/// Green-function profile G(a) on a cell-centered grid over (0, M).
struct ProfileFunction {
    double total_area = 0.0;
    CellGrid grid;
    std::vector<double> at_centers;  // G(a_i)
    std::vector<double> at_faces;    // G at faces; at_faces[0] = G(0) = 0

    std::size_t size() const { return at_centers.size(); }
    /// Throws DomainError unless G > 0 at every center and interior face.
    void validate() const;

    static ProfileFunction from_function(double total_area, std::size_t n,
                                         const std::function<double(double)>& g);
};

/// G(s_q(r)) = 2 pi r^2 m(r), sampled on the sqrt-area grid with n cells (n >= 16).
ProfileFunction profile_G(const RecenteredDensity& density, std::size_t n);

double level_curve_length(const RecenteredDensity& density, double a);
double level_curve_length(const RecenteredDensity& density, const AreaCoordinate& coord, double a);

}  // namespace caplab
