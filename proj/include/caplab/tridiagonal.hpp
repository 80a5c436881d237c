#pragma once

#include <span>
#include <vector>

namespace caplab {

/// Symmetric tridiagonal matrix: diag has n entries, off has n-1.
struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }
};

struct TridiagonalEigenpairs {
    std::vector<double> values;               // ascending
    std::vector<std::vector<double>> vectors; // unit 2-norm
};

/// Number of eigenvalues strictly below x (Sturm sequence count).
std::size_t sturm_count(const SymTridiagonal& t, double x);

/// Lowest `count` eigenpairs by Sturm bisection followed by inverse iteration.
TridiagonalEigenpairs lowest_eigenpairs(const SymTridiagonal& t, std::size_t count);

/// Lowest eigenpairs of the generalized problem K v = lambda W v with W diagonal
/// and positive. Returned vectors are W-orthonormal: sum_i W_i v_i^2 = 1.
TridiagonalEigenpairs lowest_generalized_eigenpairs(const SymTridiagonal& k, std::span<const double> w,
                                                    std::size_t count);

}  // namespace caplab
