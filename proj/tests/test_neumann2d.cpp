#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "caplab/neumann2d.hpp"
#include "caplab/radial_spectrum.hpp"
#include "caplab/errors.hpp"
#include "oracles.hpp"

using namespace caplab;
using oracle::pi;

namespace {

WeightFunction unit_weight() {
    return [](Complex) { return 1.0; };
}

WeightFunction domain_weight(const ConformalDomain& d) {
    return [d](Complex z) { return d.density(z); };
}

double inf_norm(const SparseMatrix& a) {
    Eigen::VectorXd rows = Eigen::VectorXd::Zero(a.rows());
    for (int k = 0; k < a.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(a, k); it; ++it) rows[it.row()] += std::abs(it.value());
    return rows.maxCoeff();
}

}  // namespace

TEST_CASE("build_disk_mesh structure") {
    for (int rings : {4, 7, 16, 64}) {
        const auto mesh = build_disk_mesh(rings);
        const long v = static_cast<long>(mesh.vertex_count());
        const long e = static_cast<long>(edge_count(mesh));
        const long f = static_cast<long>(mesh.triangle_count());
        CHECK(v - e + f == 1);
        CHECK(mesh.h == doctest::Approx(1.0 / rings));
        for (std::size_t t = 0; t < mesh.triangle_count(); ++t) REQUIRE(triangle_area(mesh, t) > 0.0);
        std::size_t on_circle = 0;
        for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
            if (!mesh.boundary[i]) continue;
            ++on_circle;
            CHECK(std::abs(std::hypot(mesh.vertices[i][0], mesh.vertices[i][1]) - 1.0) < 1e-12);
        }
        CHECK(on_circle == static_cast<std::size_t>(6 * rings));
    }
    CHECK_THROWS_AS(build_disk_mesh(3), DomainError);

    const auto a = build_disk_mesh(12), b = build_disk_mesh(12);
    CHECK(a.vertices == b.vertices);
    CHECK(a.triangles == b.triangles);
}

TEST_CASE("mesh area converges at second order") {
    const double e32 = std::abs(mesh_area(build_disk_mesh(32)) - pi);
    const double e64 = std::abs(mesh_area(build_disk_mesh(64)) - pi);
    CHECK(e64 < 1e-3);
    CHECK(e32 / e64 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("mesh dump format") {
    const auto mesh = build_disk_mesh(4);
    std::ostringstream out;
    write_mesh(mesh, out);
    std::istringstream in(out.str());
    std::string line;
    std::size_t nv = 0, nt = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        char tag = 0;
        ls >> tag;
        if (tag == 'v') {
            double x, y;
            REQUIRE(static_cast<bool>(ls >> x >> y));
            CHECK(nt == 0);
            ++nv;
        } else {
            REQUIRE(tag == 't');
            int i, j, k;
            REQUIRE(static_cast<bool>(ls >> i >> j >> k));
            CHECK(std::max({i, j, k}) < static_cast<int>(mesh.vertex_count()));
            ++nt;
        }
    }
    CHECK(nv == mesh.vertex_count());
    CHECK(nt == mesh.triangle_count());
}

TEST_CASE("assemble") {
    const auto mesh = build_disk_mesh(32);
    const auto ops = assemble(mesh, unit_weight());
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(ops.stiffness.rows());
    CHECK((ops.stiffness * ones).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK((SparseMatrix(ops.stiffness.transpose()) - ops.stiffness).norm() == 0.0);
    CHECK((SparseMatrix(ops.mass.transpose()) - ops.mass).norm() == 0.0);
    CHECK(ones.dot(ops.mass * ones) == doctest::Approx(mesh_area(mesh)).epsilon(1e-12));

    // Cap weights: total mass tends to the area at second order.
    const auto cap = cap_domain(1.1);
    double err[2];
    int idx = 0;
    for (int rings : {32, 64}) {
        const auto m = assemble(build_disk_mesh(rings), domain_weight(cap));
        const Eigen::VectorXd one = Eigen::VectorXd::Ones(m.mass.rows());
        err[idx++] = std::abs(one.dot(m.mass * one) - cap.area());
    }
    CHECK(err[1] < 1e-3 * cap.area());
    CHECK(err[0] / err[1] > 3.0);

    CHECK_THROWS_AS(assemble(mesh, [](Complex) { return 0.0; }), DomainError);
    CHECK_THROWS_AS(assemble(mesh, [](Complex z) { return z.real() > 0.5 ? -1.0 : 1.0; }), DomainError);
}

TEST_CASE("disk spectrum against the Bessel oracle") {
    const double j = oracle::j1_prime_first_zero();
    const auto res = solve_neumann_weighted(build_disk_mesh(128), unit_weight());
    CHECK(std::abs(res.eigenvalues[1] - j * j) < 2e-2);
    CHECK(std::abs(res.eigenvalues[2] - j * j) < 2e-2);
    CHECK(res.eigenvalues[0] < 1e-8 * res.eigenvalues[1]);
}

TEST_CASE("hemisphere spectrum") {
    const auto hemi = cap_domain(pi / 2);
    const auto mesh = build_disk_mesh(128);
    const auto ops = assemble(mesh, domain_weight(hemi));
    NeumannOptions opt;
    const auto res = solve_neumann_weighted(ops, opt);
    REQUIRE(res.eigenvalues.size() == opt.count);
    CHECK(std::abs(res.eigenvalues[1] - 2.0) < 1e-2);
    CHECK(std::abs(res.eigenvalues[2] - 2.0) < 1e-2);
    CHECK(std::abs(res.eigenvalues[2] - res.eigenvalues[1]) < 1e-4);
    CHECK(res.eigenvalues[0] >= -1e-12);
    CHECK(res.eigenvalues[0] < 1e-8 * res.eigenvalues[1]);
    for (std::size_t k = 1; k < res.eigenvalues.size(); ++k) CHECK(res.eigenvalues[k] >= res.eigenvalues[k - 1]);

    // Constant sign of the ground state.
    const auto& u0 = res.eigenvectors[0];
    CHECK((u0.minCoeff() > 0.0 || u0.maxCoeff() < 0.0));

    // Residuals recomputed here against the configured tolerance.
    const double kn = inf_norm(ops.stiffness), mn = inf_norm(ops.mass);
    for (std::size_t k = 0; k < res.eigenvalues.size(); ++k) {
        const auto& u = res.eigenvectors[k];
        const double r = (ops.stiffness * u - res.eigenvalues[k] * (ops.mass * u)).norm() / u.norm();
        CHECK(r <= opt.tolerance * (kn + std::abs(res.eigenvalues[k]) * mn) * (1.0 + 1e-6));
        CHECK(u.dot(ops.mass * u) == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(std::abs(res.eigenvectors[1].dot(ops.mass * res.eigenvectors[2])) < 1e-8);

    NeumannOptions bad;
    bad.count = 1;
    CHECK_THROWS_AS(solve_neumann_weighted(ops, bad), DomainError);
    NeumannOptions starved;
    starved.max_iterations = 1;
    starved.tolerance = 1e-15;
    CHECK_THROWS_AS(solve_neumann_weighted(ops, starved), ConvergenceError);
}

TEST_CASE("Fourier-sector equivalence for radial weights") {
    for (double R : {0.8, 2.2}) {
        const auto cap = cap_domain(R);
        const double kappa = solve_radial_weighted(RecenteredDensity(cap, 0.0), 1).kappa1();
        const double mu = solve_neumann_weighted(build_disk_mesh(128), domain_weight(cap)).eigenvalues[1];
        CHECK(std::abs(mu - kappa) / kappa < 0.02);
        const double coarse = solve_neumann_weighted(build_disk_mesh(64), domain_weight(cap)).eigenvalues[1];
        CHECK(std::abs(mu - kappa) < std::abs(coarse - kappa));
    }
}

TEST_CASE("second-order convergence and symmetric pair") {
    const auto hemi = cap_domain(pi / 2);
    double mu2[3], gap[3];
    const int rings[3] = {16, 32, 64};
    for (int i = 0; i < 3; ++i) {
        const auto res = solve_neumann_weighted(build_disk_mesh(rings[i]), domain_weight(hemi));
        mu2[i] = res.eigenvalues[1];
        gap[i] = res.eigenvalues[2] - res.eigenvalues[1];
    }
    CHECK((mu2[0] - mu2[1]) / (mu2[1] - mu2[2]) >= 3.0);
    CHECK(std::abs(mu2[2] - 2.0) < std::abs(mu2[0] - 2.0));
    CHECK(gap[2] <= gap[0] + 1e-10);
    CHECK(gap[2] < 1e-3);
}

TEST_CASE("serial and OpenMP assembly agree") {
    const auto mesh = build_disk_mesh(24);
    const auto d = ConformalDomain(AnalyticMap{{{1.0, 0.0}, {0.1, 0.0}}});
    const auto a = assemble(mesh, domain_weight(d));
    const auto b = assemble_serial(mesh, domain_weight(d));
    CHECK((a.stiffness - b.stiffness).norm() == 0.0);
    CHECK((a.mass - b.mass).norm() == 0.0);
}
