#include "caplab/neumann2d.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "caplab/errors.hpp"

namespace caplab {
namespace {

AssembledOperators merge(const DiskMesh& mesh, const ElementMatrices& el) {
    using Triplet = Eigen::Triplet<double>;
    std::vector<Triplet> kt, mt;
    kt.reserve(9 * mesh.triangle_count());
    mt.reserve(9 * mesh.triangle_count());
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tri = mesh.triangles[t];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                kt.emplace_back(tri[i], tri[j], el.stiffness[t][3 * i + j]);
                mt.emplace_back(tri[i], tri[j], el.mass[t][3 * i + j]);
            }
    }
    const auto n = static_cast<Eigen::Index>(mesh.vertex_count());
    AssembledOperators ops{SparseMatrix(n, n), SparseMatrix(n, n)};
    ops.stiffness.setFromTriplets(kt.begin(), kt.end());
    ops.mass.setFromTriplets(mt.begin(), mt.end());
    return ops;
}

// Column 0 is all-ones plus a fixed perturbation; the rest are fixed-seed noise.
Eigen::MatrixXd start_block(const AssembledOperators& ops, std::size_t block) {
    const Eigen::Index n = ops.stiffness.rows();
    Eigen::MatrixXd x(n, static_cast<Eigen::Index>(block));
    std::mt19937_64 rng(20240611ULL);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            x(i, j) = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    x.col(0) = Eigen::VectorXd::Ones(n) + 1e-3 * x.col(0);
    return x;
}

}  // namespace

AssembledOperators assemble(const DiskMesh& mesh, const WeightFunction& weight) {
    return merge(mesh, element_matrices(mesh, weight));
}

AssembledOperators assemble_serial(const DiskMesh& mesh, const WeightFunction& weight) {
    return merge(mesh, element_matrices_serial(mesh, weight));
}

MeshEigenResult solve_neumann_weighted(const AssembledOperators& ops, NeumannOptions options) {
    const Eigen::Index n = ops.stiffness.rows();
    if (options.count < 2) throw DomainError("solve_neumann_weighted: count must be at least 2");
    const auto block = static_cast<Eigen::Index>(std::min<std::size_t>(options.count + 4, n));
    const auto count = static_cast<Eigen::Index>(options.count);

    SparseMatrix shifted = ops.stiffness - options.shift * ops.mass;
    Eigen::SimplicialLDLT<SparseMatrix> solver(shifted);
    if (solver.info() != Eigen::Success) throw ConvergenceError("solve_neumann_weighted: factorization failed");

    auto row_sum_norm = [](const SparseMatrix& a) {
        Eigen::VectorXd sums = Eigen::VectorXd::Zero(a.rows());
        for (Eigen::Index c = 0; c < a.outerSize(); ++c)
            for (SparseMatrix::InnerIterator it(a, c); it; ++it) sums(it.row()) += std::abs(it.value());
        return sums.maxCoeff();
    };
    const double k_norm = row_sum_norm(ops.stiffness), m_norm = row_sum_norm(ops.mass);

    Eigen::MatrixXd x = start_block(ops, static_cast<std::size_t>(block));
    Eigen::VectorXd values;
    MeshEigenResult result;
    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        Eigen::MatrixXd y = solver.solve(ops.mass * x);
        if (solver.info() != Eigen::Success) throw ConvergenceError("solve_neumann_weighted: solve failed");
        const Eigen::MatrixXd ky = ops.stiffness * y;
        const Eigen::MatrixXd my = ops.mass * y;
        Eigen::MatrixXd kr = y.transpose() * ky;
        Eigen::MatrixXd mr = y.transpose() * my;
        kr = 0.5 * (kr + kr.transpose()).eval();
        mr = 0.5 * (mr + mr.transpose()).eval();
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ritz(kr, mr);
        if (ritz.info() != Eigen::Success) throw ConvergenceError("solve_neumann_weighted: Rayleigh-Ritz failed");
        values = ritz.eigenvalues();
        x = y * ritz.eigenvectors();

        const Eigen::MatrixXd kx = ky * ritz.eigenvectors();
        const Eigen::MatrixXd mx = my * ritz.eigenvectors();
        bool converged = true;
        result.residuals.assign(static_cast<std::size_t>(count), 0.0);
        for (Eigen::Index k = 0; k < count; ++k) {
            const Eigen::VectorXd r = kx.col(k) - values(k) * mx.col(k);
            const double rel = r.norm() / x.col(k).norm();
            result.residuals[static_cast<std::size_t>(k)] = rel;
            if (rel > options.tolerance * (k_norm + std::abs(values(k)) * m_norm)) converged = false;
        }
        result.iterations = iter;
        if (converged) break;
        if (iter == options.max_iterations)
            throw ConvergenceError("solve_neumann_weighted: no convergence after " + std::to_string(iter) +
                                   " iterations");
    }
    for (Eigen::Index k = 0; k < count; ++k) {
        result.eigenvalues.push_back(values(k));
        Eigen::VectorXd u = x.col(k);
        if (k == 0 && u.sum() < 0.0) u = -u;
        result.eigenvectors.push_back(std::move(u));
    }
    return result;
}

MeshEigenResult solve_neumann_weighted(const DiskMesh& mesh, const WeightFunction& weight, NeumannOptions options) {
    return solve_neumann_weighted(assemble(mesh, weight), options);
}

}  // namespace caplab
