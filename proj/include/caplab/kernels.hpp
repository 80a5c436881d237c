#pragma once

// Data-parallel loops of the library. Every kernel has a serial reference
// (`*_serial`) and an OpenMP version with identical per-item arithmetic, so the
// two agree bit for bit regardless of thread count.

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "caplab/conformal_domain.hpp"
#include "caplab/mesh.hpp"

namespace caplab {

/// Angular moments of rho_q^2 on a list of circles:
/// mass[i] = int rho_q^2 d theta, first[i] = int rho_q^2 e^{+i theta} d theta.
struct RingMoments {
    std::vector<double> mass;
    std::vector<Complex> first;
};

RingMoments tabulate_moments_serial(const RecenteredDensity& density, std::span<const double> radii);
RingMoments tabulate_moments(const RecenteredDensity& density, std::span<const double> radii);

/// Mode-0 moment only (cheaper node count).
std::vector<double> tabulate_ring_mass_serial(const RecenteredDensity& density, std::span<const double> radii);
std::vector<double> tabulate_ring_mass(const RecenteredDensity& density, std::span<const double> radii);

/// Per-triangle P1 stiffness and weighted mass (edge-midpoint rule), row-major 3x3.
struct ElementMatrices {
    std::vector<std::array<double, 9>> stiffness;
    std::vector<std::array<double, 9>> mass;
};

using WeightFunction = std::function<double(Complex)>;

ElementMatrices element_matrices_serial(const DiskMesh& mesh, const WeightFunction& weight);
ElementMatrices element_matrices(const DiskMesh& mesh, const WeightFunction& weight);

/// Evaluates a complex field at each point.
using ComplexField = std::function<Complex(Complex)>;

std::vector<Complex> sample_field_serial(std::span<const Complex> points, const ComplexField& field);
std::vector<Complex> sample_field(std::span<const Complex> points, const ComplexField& field);

}  // namespace caplab
