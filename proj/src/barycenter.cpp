#include "caplab/barycenter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "caplab/errors.hpp"

namespace caplab {
namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a < -kPi) a += 2.0 * kPi;
    return a;
}

Complex solve2(const double j[2][2], Complex rhs) {
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    if (det == 0.0 || !std::isfinite(det)) throw ConvergenceError("find_balanced_pole: singular Jacobian");
    const double x = (rhs.real() * j[1][1] - j[0][1] * rhs.imag()) / det;
    const double y = (j[0][0] * rhs.imag() - j[1][0] * rhs.real()) / det;
    return {x, y};
}

}  // namespace

RadialEigenfunction first_radial_eigenfunction(const RecenteredDensity& density, std::size_t cells) {
    RadialEigenfunction out;
    out.grid = radial_grid(std::abs(density.pole()), cells);
    out.moments = tabulate_moments(density, out.grid.centers);
    const SLSolution s = solve_weighted_on_grid(out.grid, out.moments.mass, 1, 1);
    out.values = s.first();
    out.kappa = s.kappa1();
    return out;
}

Complex barycenter_field(const RadialEigenfunction& v) {
    Complex sum = 0.0;
    for (std::size_t i = 0; i < v.values.size(); ++i)
        sum += v.values[i] * v.moments.first[i] * v.grid.centers[i] * v.grid.width(i);
    return sum;
}

Complex V_of(const ConformalDomain& domain, Complex q, std::size_t cells) {
    return barycenter_field(first_radial_eigenfunction(RecenteredDensity(domain, q), cells));
}

double boundary_limit_deviation(const RadialEigenfunction& v, double area) {
    double sup = 0.0;
    const double s = 1.0 / std::sqrt(area);
    for (std::size_t i = 0; i < v.values.size(); ++i)
        sup = std::max(sup, std::abs(v.values[i] - v.grid.centers[i] * s));
    return sup;
}

int winding_number(const ComplexField& field, double radius, int points) {
    for (int n = points; n <= 4096; n *= 2) {
        std::vector<Complex> probe(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) probe[j] = std::polar(radius, 2.0 * kPi * j / n);
        const auto values = sample_field(probe, field);
        double total = 0.0;
        bool resolved = true;
        for (int j = 0; j < n; ++j) {
            const Complex a = values[j], b = values[(j + 1) % n];
            if (std::abs(a) == 0.0 || std::abs(b) == 0.0)
                throw DegreeError("winding_number: field vanishes on the probe circle");
            const double step = wrap(std::arg(b) - std::arg(a));
            if (std::abs(step) >= 0.5 * kPi) resolved = false;
            total += step;
        }
        if (resolved) return static_cast<int>(std::lround(total / (2.0 * kPi)));
    }
    throw DegreeError("winding_number: field turns too fast to resolve on the probe circle");
}

BalancedPoleResult find_balanced_pole(const ConformalDomain& domain, BalancedPoleOptions options) {
    const double m = domain.area();
    const double tol = options.residual_tol > 0.0 ? options.residual_tol : 1e-6 * std::sqrt(m);
    const std::size_t coarse_cells = std::max<std::size_t>(64, options.cells / 4);
    auto coarse = [&](Complex q) { return V_of(domain, q, coarse_cells); };
    auto fine = [&](Complex q) { return V_of(domain, q, options.cells); };

    BalancedPoleResult result;
    result.winding = winding_number(coarse, options.probe_radius, options.probe_points);
    if (result.winding != 1)
        throw DegreeError("find_balanced_pole: winding number " + std::to_string(result.winding) +
                          " on the probe circle (expected 1)");

    // Coarse scan of |V| on a square grid clipped to the scan disk.
    const int s = options.scan_points;
    std::vector<Complex> points;
    std::vector<int> index(static_cast<std::size_t>(s * s), -1);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            const Complex q(-options.scan_radius + 2.0 * options.scan_radius * i / (s - 1),
                            -options.scan_radius + 2.0 * options.scan_radius * j / (s - 1));
            if (std::abs(q) <= options.scan_radius + 1e-12) {
                index[static_cast<std::size_t>(i * s + j)] = static_cast<int>(points.size());
                points.push_back(q);
            }
        }
    const auto scan = sample_field(points, coarse);
    std::size_t best = 0;
    for (std::size_t k = 1; k < scan.size(); ++k)
        if (std::abs(scan[k]) < std::abs(scan[best])) best = k;
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            const int k = index[static_cast<std::size_t>(i * s + j)];
            if (k < 0) continue;
            const double here = std::abs(scan[static_cast<std::size_t>(k)]);
            bool minimum = here < 0.1 * std::sqrt(m);
            for (int di = -1; di <= 1 && minimum; ++di)
                for (int dj = -1; dj <= 1 && minimum; ++dj) {
                    const int a = i + di, b = j + dj;
                    if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= s || b >= s) continue;
                    const int kk = index[static_cast<std::size_t>(a * s + b)];
                    if (kk >= 0 && std::abs(scan[static_cast<std::size_t>(kk)]) < here) minimum = false;
                }
            if (minimum) ++result.candidate_basins;
        }

    // Damped Newton with a central-difference Jacobian.
    Complex q = points[best];
    Complex v = fine(q);
    const double hstep = options.jacobian_step;
    bool converged = std::abs(v) <= tol;
    for (int it = 0; it < options.max_newton && !converged; ++it) {
        result.iterations = it + 1;
        const Complex dx = (fine(q + Complex(hstep, 0.0)) - fine(q - Complex(hstep, 0.0))) / (2.0 * hstep);
        const Complex dy = (fine(q + Complex(0.0, hstep)) - fine(q - Complex(0.0, hstep))) / (2.0 * hstep);
        const double jac[2][2] = {{dx.real(), dy.real()}, {dx.imag(), dy.imag()}};
        Complex step;
        try {
            step = -solve2(jac, v);
        } catch (const ConvergenceError&) {
            break;
        }
        double lambda = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls, lambda *= 0.5) {
            const Complex trial = q + lambda * step;
            if (std::abs(trial) >= options.probe_radius) continue;
            const Complex vt = fine(trial);
            if (std::abs(vt) < (1.0 - 1e-4 * lambda) * std::abs(v)) {
                q = trial;
                v = vt;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        converged = std::abs(v) <= tol;
        if (!converged && std::abs(lambda * step) < 1e-15) break;
    }

    // Fallback: shrink a 5x5 stencil around the best point.
    if (!converged) {
        result.used_fallback = true;
        double spacing = 2.0 * options.scan_radius / (s - 1);
        for (int level = 0; level < options.max_refinements && !converged; ++level) {
            spacing *= 0.5;
            std::vector<Complex> stencil;
            for (int i = -2; i <= 2; ++i)
                for (int j = -2; j <= 2; ++j) {
                    const Complex c = q + Complex(i * spacing, j * spacing);
                    if (std::abs(c) < options.probe_radius) stencil.push_back(c);
                }
            const auto vals = sample_field(stencil, fine);
            for (std::size_t k = 0; k < vals.size(); ++k)
                if (std::abs(vals[k]) < std::abs(v)) {
                    v = vals[k];
                    q = stencil[k];
                }
            result.iterations++;
            converged = std::abs(v) <= tol;
        }
    }
    if (!converged)
        throw ConvergenceError("find_balanced_pole: |V| = " + std::to_string(std::abs(v)) + " above tolerance " +
                               std::to_string(tol));
    result.pole = q;
    result.residual = std::abs(v);
    return result;
}

SteklovSpectrum steklov_spectrum(double area, std::size_t count) {
    if (!(area > 0.0)) throw DomainError("steklov_spectrum: M must be positive");
    SteklovSpectrum s;
    s.area = area;
    for (std::size_t k = 0; k < count; ++k) {
        const double l = static_cast<double>((k + 1) / 2);
        s.eigenvalues.push_back(2.0 * kPi * l / area);
    }
    return s;
}

SteklovTable steklov_limit_check(const ConformalDomain& domain, std::span<const double> magnitudes, int sector,
                                 std::size_t cells) {
    if (sector < 1) throw DomainError("steklov_limit_check: sector must be at least 1");
    SteklovTable table;
    table.sector = sector;
    const double target = 2.0 * kPi * sector / domain.area();
    for (double mag : magnitudes) {
        if (!(mag >= 0.0 && mag < 1.0)) throw DomainError("steklov_limit_check: magnitude outside [0, 1)");
        const RecenteredDensity density(domain, Complex(mag, 0.0));
        const SLSolution sol = solve_radial_weighted(density, 1, {cells, sector});
        SteklovRow row{mag, sol.kappa1(), target, std::abs(sol.kappa1() - target) / target};
        if (!table.rows.empty() && !(row.relative_error < table.rows.back().relative_error)) table.decreasing = false;
        table.rows.push_back(row);
    }
    return table;
}

double concentration_error(const RecenteredDensity& density, const std::function<double(Complex)>& u) {
    const AreaCoordinate coord(density);
    const auto& knots = coord.knots();
    const auto rule = gauss_legendre(10, 0.0, 1.0);
    const int nt = density.domain().resolution().n_theta;
    const double dt = 2.0 * kPi / nt;
    auto circle = [&](double r) {
        double s = 0.0;
        for (int j = 0; j < nt; ++j) s += u(std::polar(r, dt * j));
        return s * dt;
    };
    double interior = 0.0;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double lo = knots[k], h = knots[k + 1] - knots[k];
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double r = lo + h * rule.nodes[i];
            interior += h * rule.weights[i] * r * density.radialized(r) * circle(r);
        }
    }
    const double boundary = coord.total() / (2.0 * kPi) * circle(1.0);
    return std::abs(interior - boundary);
}

}  // namespace caplab
