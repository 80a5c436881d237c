#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "caplab/barycenter.hpp"
#include "caplab/cap_spectrum.hpp"
#include "caplab/errors.hpp"
#include "oracles.hpp"

using namespace caplab;
using oracle::pi;

namespace {

ConformalDomain perturbed(QuadratureResolution res = {}) {
    return ConformalDomain(AnalyticMap{{{1.0, 0.0}, {0.1, 0.0}}}, res);
}

ConformalDomain shifted_cap(double s) {
    AnalyticMap m{{{1.0, 0.0}}};
    m.shift = Complex(s, 0.0);
    return ConformalDomain(m);
}

int sign(double x, double floor) { return x > floor ? 1 : (x < -floor ? -1 : 0); }

// Linear interpolation of a cell-centered function, even reflection at the ends.
double interpolate(const CellGrid& g, const std::vector<double>& f, double x) {
    const auto& c = g.centers;
    if (x <= c.front()) return f.front();
    if (x >= c.back()) return f.back();
    const std::size_t i = std::upper_bound(c.begin(), c.end(), x) - c.begin();
    const double t = (x - c[i - 1]) / (c[i] - c[i - 1]);
    return (1.0 - t) * f[i - 1] + t * f[i];
}

}  // namespace

TEST_CASE("V vanishes at the center of a cap") {
    for (double R : {0.7, pi / 2, 2.5}) CHECK(std::abs(V_of(cap_domain(R), 0.0)) < 1e-10);
}

TEST_CASE("V is rotation-covariant on a cap") {
    const auto cap = cap_domain(1.3);
    const Complex v = V_of(cap, 0.5);
    for (double g : {0.4, 2.0, -1.1}) {
        const Complex w = V_of(cap, std::polar(0.5, g));
        CHECK(std::abs(w - std::polar(1.0, g) * v) < 1e-8 * std::abs(v));
    }
}

TEST_CASE("boundary asymptotics of V") {
    for (const auto& d : {cap_domain(1.0), perturbed()}) {
        const double s = std::sqrt(d.area());
        double worst = 0.0;
        for (int k = 0; k < 8; ++k) {
            const Complex q = std::polar(0.995, 2.0 * pi * k / 8);
            worst = std::max(worst, std::abs(V_of(d, q) + s * q) / s);
        }
        CHECK(worst < 0.05);
    }
}

TEST_CASE("sign pattern of V against a 4x brute-force evaluation") {
    const auto coarse = perturbed({256, 256});
    const auto fine = perturbed({1024, 1024});
    int compared = 0;
    for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) {
            const Complex q(-0.9 + 0.18 * i, -0.9 + 0.18 * j);
            if (std::abs(q) >= 0.95) continue;
            const Complex a = V_of(coarse, q, 512);
            const Complex b = V_of(fine, q, 2048);
            const double floor = 1e-9;
            CHECK(sign(a.real(), floor) == sign(b.real(), floor));
            CHECK(sign(a.imag(), floor) == sign(b.imag(), floor));
            ++compared;
        }
    CHECK(compared > 60);
}

TEST_CASE("V is continuous along a segment") {
    const auto d = perturbed();
    std::vector<Complex> v;
    for (int i = 0; i <= 40; ++i) v.push_back(V_of(d, Complex(-0.8 + 0.04 * i, 0.3), 512));
    for (std::size_t i = 1; i + 2 < v.size(); ++i) {
        const double jump = std::abs(v[i + 1] - v[i]);
        const double local = std::max(std::abs(v[i] - v[i - 1]), std::abs(v[i + 2] - v[i + 1]));
        CHECK(jump <= 2.0 * local + 1e-9);
    }
}

TEST_CASE("winding number") {
    CHECK(winding_number([](Complex q) { return -q; }, 0.9) == 1);
    CHECK(winding_number([](Complex q) { return q * q; }, 0.5) == 2);
    CHECK(winding_number([](Complex q) { return std::conj(q); }, 0.5) == -1);
    CHECK(winding_number([](Complex q) { return q - Complex(2.0, 0.0); }, 0.5) == 0);
    // Needs more than the initial 64 samples.
    CHECK(winding_number([](Complex q) { return std::pow(q, 40); }, 0.99) == 40);
    CHECK_THROWS_AS(winding_number([](Complex q) { return q - Complex(0.5, 0.0); }, 0.5), DegreeError);
    const auto d = perturbed();
    CHECK(winding_number([&](Complex q) { return V_of(d, q, 512); }, 0.95) == 1);
}

TEST_CASE("find_balanced_pole on caps") {
    const auto r = find_balanced_pole(cap_domain(1.2));
    CHECK(std::abs(r.pole) < 1e-6);
    CHECK(r.winding == 1);
    CHECK(r.residual <= 1e-6 * std::sqrt(cap_domain(1.2).area()));
    CHECK(r.candidate_basins == 1);

    const auto s = find_balanced_pole(shifted_cap(-0.3));
    CHECK(std::abs(s.pole - Complex(-0.3, 0.0)) < 1e-3);
    CHECK(s.winding == 1);
    CHECK(s.candidate_basins <= 1);
}

TEST_CASE("find_balanced_pole against a 201x201 brute-force argmin") {
    // Both sides at the same low resolution.
    const auto d = perturbed({64, 64});
    const std::size_t cells = 128;
    BalancedPoleOptions opt;
    opt.cells = cells;
    const auto r = find_balanced_pole(d, opt);
    REQUIRE(std::abs(r.pole) < 0.5);

    const double half = 0.25, h = 2.0 * half / 200;
    double best = 1e300;
    Complex arg;
    for (int i = 0; i <= 200; ++i)
        for (int j = 0; j <= 200; ++j) {
            const Complex q(-half + h * i, -half + h * j);
            const double m = std::abs(V_of(d, q, cells));
            if (m < best) { best = m; arg = q; }
        }
    CHECK(std::abs(r.pole.real() - arg.real()) <= h);
    CHECK(std::abs(r.pole.imag() - arg.imag()) <= h);
    CHECK(r.residual <= best);
    CHECK(std::abs(r.pole.imag()) < 1e-8);
}

TEST_CASE("steklov_spectrum") {
    const double m = 2.0 * pi;
    const auto s = steklov_spectrum(m, 7);
    REQUIRE(s.eigenvalues.size() == 7);
    CHECK(s.eigenvalues[0] == 0.0);
    CHECK(s.eigenvalues[1] == doctest::Approx(2.0 * pi / m));
    CHECK(s.eigenvalues[2] == s.eigenvalues[1]);
    CHECK(s.eigenvalues[3] == doctest::Approx(4.0 * pi / m));
    CHECK(s.eigenvalues[4] == s.eigenvalues[3]);
    CHECK(s.eigenvalues[5] == doctest::Approx(6.0 * pi / m));
    CHECK_THROWS_AS(steklov_spectrum(0.0, 3), DomainError);

    // d_r u = (M / 2 pi) sigma u at r = 1 for u = r^l e^{i l theta} / sqrt(M).
    for (int l : {1, 2}) {
        const double sigma = s.eigenvalues[2 * l - 1];
        for (double th : {0.0, 0.7, 2.9, 4.4}) {
            auto u = [&](double r) { return std::pow(r, l) * std::polar(1.0, l * th) / std::sqrt(m); };
            const double e = 1e-5;
            const Complex du = (u(1.0 + e) - u(1.0 - e)) / (2.0 * e);
            CHECK(std::abs(du - m / (2.0 * pi) * sigma * u(1.0)) < 1e-8);
        }
    }
}

TEST_CASE("Steklov limit in the radial sectors") {
    const auto hemi = cap_domain(pi / 2);
    const std::vector<double> mags{0.9, 0.99, 0.999};
    const auto sigma = steklov_spectrum(hemi.area(), 5);
    for (int sector : {1, 2}) {
        const auto t = steklov_limit_check(hemi, mags, sector);
        REQUIRE(t.rows.size() == 3);
        CHECK(t.decreasing);
        CHECK(t.rows.back().relative_error < 0.05);
        CHECK(t.rows.front().target == doctest::Approx(sigma.eigenvalues[2 * sector - 1]).epsilon(1e-14));
        for (const auto& row : t.rows) CHECK(row.eigenvalue > 0.0);
    }
    const auto p = steklov_limit_check(perturbed(), mags, 1);
    CHECK(p.decreasing);
    CHECK_THROWS_AS(steklov_limit_check(hemi, std::vector<double>{1.0}, 1), DomainError);
    CHECK_THROWS_AS(steklov_limit_check(hemi, mags, 0), DomainError);
}

TEST_CASE("concentration_error") {
    const auto cap = cap_domain(1.1);
    const double m = cap.area();
    for (double q : {0.0, 0.6}) {
        const RecenteredDensity d(cap, q);
        CHECK(concentration_error(d, [](Complex) { return 1.0; }) < 1e-9 * m);
    }
    CHECK(concentration_error(RecenteredDensity(cap, 0.0), [](Complex z) { return z.real(); }) < 1e-12);
    double prev = 1e300;
    for (double q : {0.9, 0.99, 0.999}) {
        const double e = concentration_error(RecenteredDensity(cap, q), [](Complex z) { return std::norm(z); });
        CHECK(e < prev);
        prev = e;
    }
    CHECK(prev < 0.01 * m);
}

TEST_CASE("first radial eigenfunction of the hemisphere") {
    const RecenteredDensity d(cap_domain(pi / 2), 0.0);
    const auto v = first_radial_eigenfunction(d);
    CHECK(std::abs(v.kappa - 2.0) < 1e-4);
    double sup = 0.0;
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        const double r = v.grid.centers[i];
        sup = std::max(sup, std::abs(v.values[i] - std::sqrt(3.0 / (4.0 * pi)) * 2.0 * r / (1.0 + r * r)));
    }
    CHECK(sup < 1e-3);

    // Same function through the cap solver: geodesic radius 2 atan r, a-norm = 2 pi x cap norm.
    const auto cap = solve_cap_mode(pi / 2, 1, 1);
    double sup_cap = 0.0;
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        const double R = 2.0 * std::atan(v.grid.centers[i]);
        const double ref = std::abs(interpolate(cap.grid, cap.eigenfunctions[0], R)) / std::sqrt(2.0 * pi);
        sup_cap = std::max(sup_cap, std::abs(v.values[i] - ref));
    }
    CHECK(sup_cap < 1e-3);
}

TEST_CASE("radial eigenfunction is positive and tends to r / sqrt(M)") {
    const auto cap = cap_domain(1.4);
    const double m = cap.area();
    double prev = 1e300;
    for (double mag : {0.9, 0.99, 0.999}) {
        const auto v = first_radial_eigenfunction(RecenteredDensity(cap, mag));
        for (double x : v.values) REQUIRE(x > 0.0);
        const double dev = boundary_limit_deviation(v, m);
        CHECK(dev < prev);
        prev = dev;

        // sup w^2 <= int (w'^2 + w^2 / r^2) r dr for w = v - r / sqrt(M), w(0) = 0.
        const auto& g = v.grid;
        std::vector<double> w(g.cells());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = v.values[i] - g.centers[i] / std::sqrt(m);
        double energy = 0.0, sup = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            energy += w[i] * w[i] / g.centers[i] * g.width(i);
            sup = std::max(sup, w[i] * w[i]);
        }
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            const double dw = (w[i + 1] - w[i]) / g.center_gap(i);
            energy += dw * dw * g.faces[i + 1] * g.center_gap(i);
        }
        CHECK(sup <= energy + 1e-6);
    }
    CHECK(prev < 0.05);
    for (double x : first_radial_eigenfunction(RecenteredDensity(perturbed(), Complex(0.3, 0.4))).values)
        CHECK(x > 0.0);
}
