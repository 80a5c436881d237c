#include "caplab/conformal_domain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "caplab/errors.hpp"

namespace caplab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerate = 1e-12;
constexpr double kUnitSlack = 1e-12;

int next_pow2(double x) {
    const auto v = static_cast<unsigned long>(std::ceil(std::max(1.0, x)));
    return static_cast<int>(std::bit_ceil(v));
}

}  // namespace

AnalyticMap::Value AnalyticMap::evaluate(Complex z) const {
    Complex w = z;
    Complex dw = 1.0;
    if (shift != Complex{}) {
        const Complex den = 1.0 - std::conj(shift) * z;
        w = (z - shift) / den;
        dw = (1.0 - std::norm(shift)) / (den * den);
    }
    Complex p = 0.0, dp = 0.0;
    for (std::size_t k = coefficients.size(); k-- > 0;) {
        dp = dp * w + p;
        p = p * w + coefficients[k];
    }
    // Horner above built sum c_{k+1} w^k; multiply by w for the k >= 1 indexing.
    return {p * w, (dp * w + p) * dw};
}

void AnalyticMap::validate() const {
    if (coefficients.empty()) throw DomainError("AnalyticMap: no coefficients");
    if (std::abs(coefficients.front()) == 0.0) throw DomainError("AnalyticMap: c1 must be nonzero");
    if (!(std::abs(shift) < 1.0)) throw DomainError("AnalyticMap: shift must lie inside the unit disk");
    for (const auto& c : coefficients)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw DomainError("AnalyticMap: non-finite coefficient");
}

double conformal_factor(const AnalyticMap& map, Complex z) {
    if (std::abs(z) > 1.0 + kUnitSlack) throw DomainError("conformal_factor: |z| > 1");
    const auto v = map.evaluate(z);
    const double d2 = std::norm(v.df);
    if (std::sqrt(d2) < kDegenerate)
        throw DegenerateDerivative("conformal_factor: |F'(z)| below 1e-12 at z = " + std::to_string(z.real()) +
                                   " + " + std::to_string(z.imag()) + "i");
    if (map.metric == Metric::Plane) return d2;
    const double s = 1.0 + std::norm(v.f);
    return 4.0 * d2 / (s * s);
}

double compute_area(const AnalyticMap& map, QuadratureResolution res) {
    if (res.n_r < 2 || res.n_theta < 4) throw DomainError("compute_area: resolution too small");
    const auto rule = gauss_legendre(res.n_r, 0.0, 1.0);
    const double dtheta = 2.0 * kPi / res.n_theta;
    double total = 0.0;
    for (int i = 0; i < res.n_r; ++i) {
        const double r = rule.nodes[i];
        double ring = 0.0;
        for (int j = 0; j < res.n_theta; ++j)
            ring += conformal_factor(map, std::polar(r, dtheta * j));
        total += rule.weights[i] * r * ring * dtheta;
    }
    return total;
}

ConformalDomain::ConformalDomain(AnalyticMap map, QuadratureResolution res) : map_(std::move(map)), res_(res) {
    map_.validate();
    area_ = compute_area(map_, res_);
    // F' must also be nonzero on the boundary circle, which the radial nodes never touch.
    for (int j = 0; j < res_.n_theta; ++j) conformal_factor(map_, std::polar(1.0, 2.0 * kPi * j / res_.n_theta));
    if (!(area_ > 0.0)) throw DomainError("ConformalDomain: nonpositive area");
    if (map_.metric == Metric::Sphere && !(area_ < 4.0 * kPi))
        throw DomainError("ConformalDomain: spherical area must be below 4 pi (map not univalent?)");
}

double ConformalDomain::density(Complex z) const { return conformal_factor(map_, z); }

double area(const ConformalDomain& domain) { return domain.area(); }

void check_area_resolution(const ConformalDomain& domain, double tol) {
    auto res = domain.resolution();
    res.n_r *= 2;
    res.n_theta *= 2;
    const double fine = compute_area(domain.map(), res);
    if (std::abs(fine - domain.area()) > tol)
        throw ResolutionError("area: refinement changed the area by " + std::to_string(std::abs(fine - domain.area())));
}

ConformalDomain cap_domain(double radius, QuadratureResolution res) {
    if (!(radius > 0.0 && radius < kPi)) throw DomainError("cap_domain: radius must lie in (0, pi)");
    return ConformalDomain(AnalyticMap{{Complex(std::tan(0.5 * radius), 0.0)}, {}, Metric::Sphere}, res);
}

ConformalDomain euclidean_disk(QuadratureResolution res) {
    return ConformalDomain(AnalyticMap{{Complex(1.0, 0.0)}, {}, Metric::Plane}, res);
}

// --- RecenteredDensity -------------------------------------------------------

RecenteredDensity::RecenteredDensity(ConformalDomain domain, Complex pole)
    : domain_(std::move(domain)), pole_(pole) {
    if (!(std::abs(pole_) < 1.0)) throw DomainError("RecenteredDensity: pole must satisfy |q| < 1");
}

double RecenteredDensity::operator()(Complex z) const {
    if (pole_ == Complex{}) return domain_.density(z);
    const Complex den = 1.0 + std::conj(pole_) * z;
    const Complex w = (z + pole_) / den;
    const double jac = (1.0 - std::norm(pole_)) / std::norm(den);
    // Round-off can push the image a hair outside the closed disk when |q| -> 1.
    const double aw = std::abs(w);
    const Complex wc = aw > 1.0 ? w / aw : w;
    return domain_.density(wc) * jac * jac;
}

int RecenteredDensity::angular_nodes(double r, int mode) const {
    const int base = domain_.resolution().n_theta;
    if (mode == 0) return base;
    // Integrand analytic in a strip of half-width -log(r |q|); 36 widths per node
    // spacing puts the trapezoid error near round-off.
    const double width = 1.0 - r * std::abs(pole_);
    return std::max(base, next_pow2(36.0 / width));
}

// Visits n nodes of the circle |z| = r through the substitution
//   e^{i theta} = (e^{it} + a) / (1 + conj(a) e^{it}),  a = -q r,
// which makes t a uniform arc-length parameter of the preimage circle and
// cancels the peak of the Moebius Jacobian. fn(z, u, w) gets the point z,
// u = e^{i theta} and the quadrature weight w = (2 pi / n) d theta / dt.
template <class Fn>
void RecenteredDensity::angular_sweep(double r, int nodes, Fn&& fn) const {
    const Complex a = -pole_ * r;
    const Complex ac = std::conj(a);
    const double one_minus = 1.0 - std::norm(a);
    const double dt = 2.0 * kPi / nodes;
    for (int j = 0; j < nodes; ++j) {
        const Complex e = std::polar(1.0, dt * j);
        const Complex den = 1.0 + ac * e;
        const Complex u = (e + a) / den;
        const double jac = one_minus / std::norm(den);
        fn(r * u, u, dt * jac);
    }
}

Complex RecenteredDensity::angular_moment(double r, int mode) const {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("angular_moment: r must lie in (0, 1]");
    Complex sum = 0.0;
    const int nodes = angular_nodes(r, mode);
    angular_sweep(r, nodes, [&](Complex z, Complex u, double w) {
        const double rho = (*this)(z);
        Complex phase = 1.0;
        if (mode > 0) {
            const Complex uc = std::conj(u);
            for (int k = 0; k < mode; ++k) phase *= uc;
        } else {
            for (int k = 0; k < -mode; ++k) phase *= u;
        }
        sum += rho * w * phase;
    });
    return sum;
}

void RecenteredDensity::moments(double r, double& mass, Complex& first) const {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("moments: r must lie in (0, 1]");
    double m0 = 0.0;
    Complex m1 = 0.0;
    angular_sweep(r, angular_nodes(r, -1), [&](Complex z, Complex u, double w) {
        const double v = (*this)(z) * w;
        m0 += v;
        m1 += v * u;
    });
    mass = m0;
    first = m1;
}

double RecenteredDensity::ring_mass(double r) const { return angular_moment(r, 0).real(); }

double RecenteredDensity::radialized(double r) const { return ring_mass(r) / (2.0 * kPi); }

double RecenteredDensity::circle_length(double r) const {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("circle_length: r must lie in (0, 1]");
    double sum = 0.0;
    angular_sweep(r, angular_nodes(r, 0), [&](Complex z, Complex, double w) { sum += std::sqrt((*this)(z)) * w; });
    return r * sum;
}

// --- AreaCoordinate ----------------------------------------------------------

AreaCoordinate::AreaCoordinate(const RecenteredDensity& density) : density_(density) {
    // 16 uniform panels on [0, 1/2], then dyadic layers toward r = 1 (4 panels each)
    // down to a layer thinner than the concentration width 1 - |q|.
    constexpr int kInner = 16;
    for (int i = 0; i < kInner; ++i) knots_.push_back(0.5 * i / kInner);
    const double layer_floor = std::min(1.0 / 64.0, (1.0 - std::abs(density_.pole())) / 8.0);
    double lo = 0.5;
    while (true) {
        const double hi = 1.0 - 0.5 * (1.0 - lo);
        const double last = 1.0 - lo <= layer_floor ? 1.0 : hi;
        for (int k = 0; k < 4; ++k) knots_.push_back(lo + (last - lo) * k / 4.0);
        if (last == 1.0) break;
        lo = hi;
    }
    knots_.push_back(1.0);

    const auto rule = gauss_legendre(kPanelOrder);
    cumulative_.assign(knots_.size(), 0.0);
    legendre_.resize(knots_.size() - 1);
    for (std::size_t k = 0; k + 1 < knots_.size(); ++k) {
        const double a = knots_[k], h = knots_[k + 1] - knots_[k];
        Coefficients& c = legendre_[k];
        c.fill(0.0);
        for (int j = 0; j < kPanelOrder; ++j) {
            const double t = a + 0.5 * h * (rule.nodes[j] + 1.0);
            const double g = t * density_.ring_mass(t);
            double p0 = 1.0, p1 = rule.nodes[j];
            c[0] += rule.weights[j] * g;
            for (int n = 1; n < kPanelOrder; ++n) {
                c[n] += rule.weights[j] * g * p1;
                const double p2 = ((2.0 * n + 1.0) * rule.nodes[j] * p1 - n * p0) / (n + 1.0);
                p0 = p1;
                p1 = p2;
            }
        }
        for (int n = 0; n < kPanelOrder; ++n) c[n] *= (2.0 * n + 1.0) / 2.0;
        const double piece = h * c[0];
        if (!(piece > 0.0)) throw InversionError("AreaCoordinate: cumulative area not strictly increasing");
        cumulative_[k + 1] = cumulative_[k] + piece;
    }
}

std::size_t AreaCoordinate::panel_of(double r) const {
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), r);
    const auto k = static_cast<std::size_t>(it - knots_.begin());
    return std::min(k == 0 ? 0 : k - 1, legendre_.size() - 1);
}

double AreaCoordinate::local(double r) const {
    const std::size_t k = panel_of(r);
    return 2.0 * (r - knots_[k]) / (knots_[k + 1] - knots_[k]) - 1.0;
}

// int_{-1}^{xi} p, using int P_n = (P_{n+1} - P_{n-1}) / (2n + 1).
double AreaCoordinate::partial(std::size_t k, double xi) const {
    const Coefficients& c = legendre_[k];
    double pm1 = 1.0, p = xi;
    double s = c[0] * (xi + 1.0);
    for (int n = 1; n < kPanelOrder; ++n) {
        const double pp1 = ((2.0 * n + 1.0) * xi * p - n * pm1) / (n + 1.0);
        s += c[n] * (pp1 - pm1) / (2.0 * n + 1.0);
        pm1 = p;
        p = pp1;
    }
    return 0.5 * (knots_[k + 1] - knots_[k]) * s;
}

double AreaCoordinate::integrand(std::size_t k, double xi) const {
    const Coefficients& c = legendre_[k];
    double pm1 = 1.0, p = xi;
    double s = c[0] + c[1] * xi;
    for (int n = 1; n + 1 < kPanelOrder; ++n) {
        const double pp1 = ((2.0 * n + 1.0) * xi * p - n * pm1) / (n + 1.0);
        s += c[n + 1] * pp1;
        pm1 = p;
        p = pp1;
    }
    return s;
}

double AreaCoordinate::operator()(double r) const {
    if (r < 0.0 || r > 1.0 + kUnitSlack) throw DomainError("cumulative_area: r must lie in [0, 1]");
    if (r <= 0.0) return 0.0;
    if (r >= 1.0) return total();
    const std::size_t k = panel_of(r);
    return cumulative_[k] + partial(k, local(r));
}

double AreaCoordinate::inverse(double a) const {
    if (a < 0.0 || a > total() * (1.0 + 1e-12)) throw InversionError("AreaCoordinate: area outside (0, M)");
    if (a <= 0.0) return 0.0;
    if (a >= total()) return 1.0;
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), a);
    const std::size_t k = std::min(static_cast<std::size_t>(it - cumulative_.begin()) - 1, legendre_.size() - 1);
    const double base = cumulative_[k], frac = (a - base) / (cumulative_[k + 1] - base);
    // Newton in the panel coordinate xi; s ~ c r^2 on the first panel.
    double lo = -1.0, hi = 1.0;
    double xi = k == 0 ? 2.0 * std::sqrt(frac) - 1.0 : 2.0 * frac - 1.0;
    const double half = 0.5 * (knots_[k + 1] - knots_[k]);
    for (int iter = 0; iter < 100; ++iter) {
        const double f = base + partial(k, xi) - a;
        if (f > 0.0) hi = xi; else lo = xi;
        const double df = half * integrand(k, xi);
        double next = df > 0.0 ? xi - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - xi) <= 1e-15 || hi - lo <= 1e-15) return knots_[k] + half * (next + 1.0);
        xi = next;
    }
    throw InversionError("AreaCoordinate: Newton inversion did not converge");
}

double cumulative_area(const RecenteredDensity& density, double r) { return AreaCoordinate(density)(r); }

double recentered_density(const ConformalDomain& domain, Complex q, Complex z) {
    if (!(std::abs(q) < 1.0)) throw DomainError("recentered_density: pole on or outside the boundary");
    return RecenteredDensity(domain, q)(z);
}

double radialized_weight(const RecenteredDensity& density, double r) { return density.radialized(r); }

Complex fourier_mode(const RecenteredDensity& density, int mode, double r) { return density.angular_moment(r, mode); }

// --- ProfileFunction ---------------------------------------------------------

void ProfileFunction::validate() const {
    if (at_centers.size() != grid.cells() || at_faces.size() != grid.faces.size())
        throw DomainError("ProfileFunction: sample count does not match grid");
    for (double g : at_centers)
        if (!(g > 0.0)) throw DomainError("ProfileFunction: G must be positive at every node");
    for (std::size_t i = 1; i + 1 < at_faces.size(); ++i)
        if (!(at_faces[i] > 0.0)) throw DomainError("ProfileFunction: G must be positive at every face");
}

ProfileFunction ProfileFunction::from_function(double total_area, std::size_t n,
                                               const std::function<double(double)>& g) {
    ProfileFunction p;
    p.total_area = total_area;
    p.grid = sqrt_area_grid(total_area, n);
    p.at_centers.resize(n);
    p.at_faces.resize(n + 1);
    for (std::size_t i = 0; i < n; ++i) p.at_centers[i] = g(p.grid.centers[i]);
    p.at_faces[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) p.at_faces[i] = g(p.grid.faces[i]);
    p.validate();
    return p;
}

ProfileFunction profile_G(const RecenteredDensity& density, std::size_t n) {
    if (n < 16) throw DomainError("profile_G: need at least 16 cells");
    const AreaCoordinate coord(density);
    auto g_of_area = [&](double a) {
        const double r = coord.inverse(a);
        return 2.0 * kPi * r * r * density.ring_mass(r);
    };
    ProfileFunction p;
    p.total_area = coord.total();
    p.grid = sqrt_area_grid(p.total_area, n);
    p.at_centers.resize(n);
    p.at_faces.resize(n + 1);
    for (std::size_t i = 0; i < n; ++i) p.at_centers[i] = g_of_area(p.grid.centers[i]);
    p.at_faces[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) p.at_faces[i] = g_of_area(p.grid.faces[i]);
    p.validate();
    return p;
}

double level_curve_length(const RecenteredDensity& density, const AreaCoordinate& coord, double a) {
    if (!(a > 0.0 && a < coord.total())) throw DomainError("level_curve_length: a must lie in (0, M)");
    return density.circle_length(coord.inverse(a));
}

double level_curve_length(const RecenteredDensity& density, double a) {
    return level_curve_length(density, AreaCoordinate(density), a);
}

}  // namespace caplab
