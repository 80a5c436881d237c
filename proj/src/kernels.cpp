#include "caplab/kernels.hpp"

#include <omp.h>

#include <exception>
#include <string>

#include "caplab/errors.hpp"

namespace caplab {
namespace {

void element(const DiskMesh& mesh, std::size_t t, const WeightFunction& weight, std::array<double, 9>& ke,
             std::array<double, 9>& me) {
    const auto& tri = mesh.triangles[t];
    const auto& p0 = mesh.vertices[tri[0]];
    const auto& p1 = mesh.vertices[tri[1]];
    const auto& p2 = mesh.vertices[tri[2]];
    const double area = triangle_area(mesh, t);
    if (!(area > 0.0)) throw DomainError("element_matrices: degenerate triangle " + std::to_string(t));

    // Gradient of barycentric i is (y_j - y_k, x_k - x_j) / (2 area).
    const double bx[3] = {p1[1] - p2[1], p2[1] - p0[1], p0[1] - p1[1]};
    const double by[3] = {p2[0] - p1[0], p0[0] - p2[0], p1[0] - p0[0]};
    const double scale = 1.0 / (4.0 * area);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ke[3 * i + j] = scale * (bx[i] * bx[j] + by[i] * by[j]);

    // Midpoint of edge (i, i+1) sees phi_i = phi_{i+1} = 1/2.
    me.fill(0.0);
    const std::array<double, 2>* p[3] = {&p0, &p1, &p2};
    for (int e = 0; e < 3; ++e) {
        const int a = e, b = (e + 1) % 3;
        const Complex mid(0.5 * ((*p[a])[0] + (*p[b])[0]), 0.5 * ((*p[a])[1] + (*p[b])[1]));
        const double w = weight(mid);
        if (!(w > 0.0)) throw DomainError("assemble: nonpositive weight at a quadrature point");
        const double c = area / 3.0 * w * 0.25;
        me[3 * a + a] += c;
        me[3 * b + b] += c;
        me[3 * a + b] += c;
        me[3 * b + a] += c;
    }
}

// Exceptions must not cross an OpenMP region boundary; capture the first one.
class ErrorSlot {
public:
    template <class Fn>
    void run(Fn&& fn) {
        try {
            fn();
        } catch (...) {
#pragma omp critical(caplab_error_slot)
            if (!error_) error_ = std::current_exception();
        }
    }
    void rethrow() const {
        if (error_) std::rethrow_exception(error_);
    }

private:
    std::exception_ptr error_;
};

}  // namespace

RingMoments tabulate_moments_serial(const RecenteredDensity& density, std::span<const double> radii) {
    RingMoments out{std::vector<double>(radii.size()), std::vector<Complex>(radii.size())};
    for (std::size_t i = 0; i < radii.size(); ++i) density.moments(radii[i], out.mass[i], out.first[i]);
    return out;
}

RingMoments tabulate_moments(const RecenteredDensity& density, std::span<const double> radii) {
    RingMoments out{std::vector<double>(radii.size()), std::vector<Complex>(radii.size())};
    const long n = static_cast<long>(radii.size());
    ErrorSlot slot;
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) slot.run([&] { density.moments(radii[i], out.mass[i], out.first[i]); });
    slot.rethrow();
    return out;
}

std::vector<double> tabulate_ring_mass_serial(const RecenteredDensity& density, std::span<const double> radii) {
    std::vector<double> out(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) out[i] = density.ring_mass(radii[i]);
    return out;
}

std::vector<double> tabulate_ring_mass(const RecenteredDensity& density, std::span<const double> radii) {
    std::vector<double> out(radii.size());
    const long n = static_cast<long>(radii.size());
    ErrorSlot slot;
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) slot.run([&] { out[i] = density.ring_mass(radii[i]); });
    slot.rethrow();
    return out;
}

ElementMatrices element_matrices_serial(const DiskMesh& mesh, const WeightFunction& weight) {
    ElementMatrices out{std::vector<std::array<double, 9>>(mesh.triangle_count()),
                        std::vector<std::array<double, 9>>(mesh.triangle_count())};
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) element(mesh, t, weight, out.stiffness[t], out.mass[t]);
    return out;
}

ElementMatrices element_matrices(const DiskMesh& mesh, const WeightFunction& weight) {
    ElementMatrices out{std::vector<std::array<double, 9>>(mesh.triangle_count()),
                        std::vector<std::array<double, 9>>(mesh.triangle_count())};
    const long n = static_cast<long>(mesh.triangle_count());
    ErrorSlot slot;
#pragma omp parallel for schedule(static)
    for (long t = 0; t < n; ++t) slot.run([&] { element(mesh, t, weight, out.stiffness[t], out.mass[t]); });
    slot.rethrow();
    return out;
}

std::vector<Complex> sample_field_serial(std::span<const Complex> points, const ComplexField& field) {
    std::vector<Complex> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = field(points[i]);
    return out;
}

std::vector<Complex> sample_field(std::span<const Complex> points, const ComplexField& field) {
    std::vector<Complex> out(points.size());
    const long n = static_cast<long>(points.size());
    ErrorSlot slot;
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) slot.run([&] { out[i] = field(points[i]); });
    slot.rethrow();
    return out;
}

}  // namespace caplab
