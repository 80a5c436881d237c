#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Sparse>

#include "caplab/kernels.hpp"
#include "caplab/mesh.hpp"

namespace caplab {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct AssembledOperators {
    SparseMatrix stiffness;
    SparseMatrix mass;
};

/// P1 stiffness and rho^2-weighted mass. Element matrices come from the
/// OpenMP kernel and are merged in triangle order.
AssembledOperators assemble(const DiskMesh& mesh, const WeightFunction& weight);
AssembledOperators assemble_serial(const DiskMesh& mesh, const WeightFunction& weight);

struct NeumannOptions {
    std::size_t count = 6;
    double shift = -1e-3;
    double tolerance = 1e-9;  // on residual / (||K|| + mu ||M||), infinity norms
    int max_iterations = 300;
};

struct MeshEigenResult {
    std::vector<double> eigenvalues;
    std::vector<Eigen::VectorXd> eigenvectors;  // mass-orthonormal
    std::vector<double> residuals;              // ||K u - mu M u|| / ||u||
    int iterations = 0;
};

/// Lowest generalized eigenpairs K u = mu M u by shift-invert block subspace
/// iteration with Rayleigh-Ritz.
MeshEigenResult solve_neumann_weighted(const AssembledOperators& ops, NeumannOptions options = {});
MeshEigenResult solve_neumann_weighted(const DiskMesh& mesh, const WeightFunction& weight, NeumannOptions options = {});

}  // namespace caplab
