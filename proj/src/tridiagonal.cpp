#include "caplab/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "caplab/errors.hpp"

namespace caplab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double norm2(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

// Solve (T - shift I) x = b by LU with partial pivoting (dgttrf/dgttrs layout);
// b is overwritten by x.
void shifted_solve(const SymTridiagonal& t, double shift, std::vector<double>& b) {
    const std::size_t n = t.size();
    std::vector<double> d(n), dl(t.off), du(t.off), du2(n, 0.0);
    std::vector<char> swapped(n, 0);
    for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
    const double tiny = kEps * (std::abs(shift) + 1.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) d[i] = tiny;
            const double fact = dl[i] / d[i];
            dl[i] = fact;
            d[i + 1] -= fact * du[i];
        } else {
            swapped[i] = 1;
            const double fact = d[i] / dl[i];
            d[i] = dl[i];
            dl[i] = fact;
            const double temp = du[i];
            du[i] = d[i + 1];
            d[i + 1] = temp - fact * d[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
        }
    }
    if (d[n - 1] == 0.0) d[n - 1] = tiny;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (swapped[i]) std::swap(b[i], b[i + 1]);
        b[i + 1] -= dl[i] * b[i];
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        if (k + 1 < n) s -= du[k] * b[k + 1];
        if (k + 2 < n) s -= du2[k] * b[k + 2];
        b[k] = s / d[k];
    }
}

double rayleigh(const SymTridiagonal& t, const std::vector<double>& x) {
    const std::size_t n = t.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double tx = t.diag[i] * x[i];
        if (i > 0) tx += t.off[i - 1] * x[i - 1];
        if (i + 1 < n) tx += t.off[i] * x[i + 1];
        num += x[i] * tx;
        den += x[i] * x[i];
    }
    return num / den;
}

}  // namespace

std::size_t sturm_count(const SymTridiagonal& t, double x) {
    const std::size_t n = t.size();
    std::size_t count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double b2 = i > 0 ? t.off[i - 1] * t.off[i - 1] : 0.0;
        d = (t.diag[i] - x) - (i > 0 ? b2 / d : 0.0);
        if (d == 0.0) d = -kEps * (std::abs(x) + 1.0);
        if (d < 0.0) ++count;
    }
    return count;
}

TridiagonalEigenpairs lowest_eigenpairs(const SymTridiagonal& t, std::size_t count) {
    const std::size_t n = t.size();
    if (n == 0 || count == 0 || count > n) throw DomainError("lowest_eigenpairs: bad size or count");
    if (t.off.size() + 1 != n) throw DomainError("lowest_eigenpairs: off-diagonal length mismatch");

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.off[i - 1]);
        if (i + 1 < n) r += std::abs(t.off[i]);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
    const double scale = std::max(std::abs(lo), std::abs(hi));

    TridiagonalEigenpairs out;
    out.values.resize(count);
    out.vectors.resize(count);
    double floor = lo;
    for (std::size_t k = 0; k < count; ++k) {
        double a = floor, b = hi;
        for (int iter = 0; iter < 300; ++iter) {
            const double mid = 0.5 * (a + b);
            if (sturm_count(t, mid) > k) b = mid; else a = mid;
            if (b - a <= 2.0 * kEps * std::max(std::abs(a), std::abs(b)) + kEps * kEps * scale) break;
        }
        const double lambda = 0.5 * (a + b);
        floor = a;

        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.01 * std::sin(1.0 + 0.7 * static_cast<double>(i));
        const double shift = lambda - 4.0 * kEps * scale;
        for (int iter = 0; iter < 4; ++iter) {
            shifted_solve(t, shift, x);
            for (std::size_t j = 0; j < k; ++j) {
                if (std::abs(out.values[j] - lambda) > 1e-6 * (std::abs(lambda) + 1.0)) continue;
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += x[i] * out.vectors[j][i];
                for (std::size_t i = 0; i < n; ++i) x[i] -= dot * out.vectors[j][i];
            }
            const double nx = norm2(x);
            for (double& v : x) v /= nx;
        }
        out.values[k] = rayleigh(t, x);
        out.vectors[k] = std::move(x);
    }
    return out;
}

TridiagonalEigenpairs lowest_generalized_eigenpairs(const SymTridiagonal& k, std::span<const double> w,
                                                    std::size_t count) {
    const std::size_t n = k.size();
    if (w.size() != n) throw DomainError("lowest_generalized_eigenpairs: weight length mismatch");
    std::vector<double> inv_sqrt(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(w[i] > 0.0)) throw DomainError("lowest_generalized_eigenpairs: nonpositive mass weight");
        inv_sqrt[i] = 1.0 / std::sqrt(w[i]);
    }
    SymTridiagonal t;
    t.diag.resize(n);
    t.off.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i) t.diag[i] = k.diag[i] * inv_sqrt[i] * inv_sqrt[i];
    for (std::size_t i = 0; i + 1 < n; ++i) t.off[i] = k.off[i] * inv_sqrt[i] * inv_sqrt[i + 1];
    auto pairs = lowest_eigenpairs(t, count);
    for (auto& v : pairs.vectors)
        for (std::size_t i = 0; i < n; ++i) v[i] *= inv_sqrt[i];
    return pairs;
}

}  // namespace caplab
