// Serial reference vs OpenMP kernel timings.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "caplab/barycenter.hpp"
#include "caplab/kernels.hpp"
#include "caplab/mesh.hpp"
#include "caplab/radial_spectrum.hpp"

using namespace caplab;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt < best) best = dt;
    }
    return best;
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-22s serial %9.4f s   omp %9.4f s   speedup %5.2f\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    const ConformalDomain domain(AnalyticMap{{Complex(1.0, 0.0), Complex(0.1, 0.0)}});
    const RecenteredDensity density(domain, Complex(0.3, 0.2));
    const CellGrid grid = radial_grid(0.3, 2048);

    report("ring moments (2048)",
           best_of(3, [&] { tabulate_moments_serial(density, grid.centers); }),
           best_of(3, [&] { tabulate_moments(density, grid.centers); }));

    const DiskMesh mesh = build_disk_mesh(128);
    const WeightFunction w = [&](Complex z) { return domain.density(z); };
    report("element matrices (128)",
           best_of(3, [&] { element_matrices_serial(mesh, w); }),
           best_of(3, [&] { element_matrices(mesh, w); }));

    std::vector<Complex> points;
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) points.emplace_back(-0.8 + 0.2 * i, -0.8 + 0.2 * j);
    const ComplexField v = [&](Complex q) { return V_of(domain, q, 256); };
    report("V field (81 poles)",
           best_of(1, [&] { sample_field_serial(points, v); }),
           best_of(1, [&] { sample_field(points, v); }));
    return 0;
}
