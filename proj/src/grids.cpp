#include "caplab/grids.hpp"

#include <cmath>

#include "caplab/errors.hpp"

namespace caplab {

CellGrid uniform_grid(double lo, double hi, std::size_t n) {
    if (n < 1 || !(hi > lo)) throw DomainError("uniform_grid: empty interval or no cells");
    CellGrid g;
    g.faces.resize(n + 1);
    g.centers.resize(n);
    const double h = (hi - lo) / static_cast<double>(n);
    for (std::size_t j = 0; j <= n; ++j) g.faces[j] = lo + h * static_cast<double>(j);
    g.faces[n] = hi;
    for (std::size_t j = 0; j < n; ++j) g.centers[j] = lo + h * (static_cast<double>(j) + 0.5);
    return g;
}

CellGrid sqrt_area_grid(double total_area, std::size_t n) {
    if (n < 1 || !(total_area > 0.0)) throw DomainError("sqrt_area_grid: bad size");
    CellGrid g;
    g.faces.resize(n + 1);
    g.centers.resize(n);
    const double dn = static_cast<double>(n);
    for (std::size_t j = 0; j <= n; ++j) {
        const double xi = static_cast<double>(j) / dn;
        g.faces[j] = total_area * xi * xi;
    }
    g.faces[n] = total_area;
    for (std::size_t j = 0; j < n; ++j) {
        const double xi = (static_cast<double>(j) + 0.5) / dn;
        g.centers[j] = total_area * xi * xi;
    }
    return g;
}

CellGrid boundary_graded_grid(std::size_t n, double beta) {
    if (beta <= 0.0) return uniform_grid(0.0, 1.0, n);
    CellGrid g;
    g.faces.resize(n + 1);
    g.centers.resize(n);
    const double dn = static_cast<double>(n);
    const double sb = std::sinh(beta);
    auto map = [&](double xi) { return 1.0 - std::sinh(beta * (1.0 - xi)) / sb; };
    for (std::size_t j = 0; j <= n; ++j) g.faces[j] = map(static_cast<double>(j) / dn);
    g.faces[0] = 0.0;
    g.faces[n] = 1.0;
    for (std::size_t j = 0; j < n; ++j) g.centers[j] = map((static_cast<double>(j) + 0.5) / dn);
    return g;
}

double grading_parameter(double ratio) {
    if (ratio >= 1.0) return 0.0;
    if (!(ratio > 0.0)) throw DomainError("grading_parameter: ratio must be positive");
    // beta / sinh(beta) is decreasing in beta; bisect.
    double lo = 1e-8, hi = 1.0;
    while (hi / std::sinh(hi) > ratio) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid / std::sinh(mid) > ratio) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace caplab
