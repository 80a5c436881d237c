#pragma once

#include <cstddef>
#include <vector>

namespace caplab {

/// Cell-centered 1D grid. Unknowns live at `centers`; fluxes at interior `faces`.
struct CellGrid {
    std::vector<double> faces;    // n + 1 entries, increasing
    std::vector<double> centers;  // n entries, faces[i] < centers[i] < faces[i+1]

    std::size_t cells() const { return centers.size(); }
    double width(std::size_t i) const { return faces[i + 1] - faces[i]; }
    double center_gap(std::size_t i) const { return centers[i + 1] - centers[i]; }
};

CellGrid uniform_grid(double lo, double hi, std::size_t n);

/// Grid on (0, M) uniform in sqrt(a): faces M (j/n)^2, centers M ((j - 1/2)/n)^2.
/// Keeps the flux scheme second order at the a -> 0 endpoint where f ~ sqrt(a).
CellGrid sqrt_area_grid(double total_area, std::size_t n);

/// Grid on (0, 1) refined toward r = 1 by r = 1 - sinh(beta (1 - xi)) / sinh(beta);
/// spacing near r = 1 is (beta / sinh beta) / n, near r = 0 it is beta coth(beta) / n.
CellGrid boundary_graded_grid(std::size_t n, double beta);

/// beta such that beta / sinh(beta) = ratio, for ratio in (0, 1]; returns 0 for ratio >= 1.
double grading_parameter(double ratio);

}  // namespace caplab
