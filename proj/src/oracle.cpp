#include "diminimal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diminimal/error.hpp"

namespace diminimal {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kSymmetryTol = 1e-12;
constexpr double kEqualBand = 1e4;
constexpr double kInconclusiveBand = 1e6;

double frobenius(const DenseMatrix& a) {
    double s = 0.0;
    for (const auto& row : a) {
        for (double x : row) s += x * x;
    }
    return std::sqrt(s);
}

double off_diagonal(const DenseMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (i != j) s += a[i][j] * a[i][j];
        }
    }
    return std::sqrt(s);
}

}  // namespace

double inf_norm(const DenseMatrix& a) {
    double best = 0.0;
    for (const auto& row : a) {
        double s = 0.0;
        for (double x : row) s += std::abs(x);
        best = std::max(best, s);
    }
    return best;
}

FloatSpectrum dense_eigenvalues(const DenseMatrix& input, double tol) {
    const std::size_t n = input.size();
    for (const auto& row : input) {
        if (row.size() != n) throw InvalidInput("matrix is not square");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double scale = std::max({1.0, std::abs(input[i][j]), std::abs(input[j][i])});
            if (std::abs(input[i][j] - input[j][i]) > kSymmetryTol * scale) {
                throw InvalidInput("matrix is not symmetric");
            }
        }
    }

    DenseMatrix a = input;
    FloatSpectrum out;
    const double target = tol * frobenius(a);
    out.off_norm = off_diagonal(a);
    while (out.off_norm > target) {
        if (out.sweeps == kMaxSweeps) throw VerificationError("Jacobi did not converge in 100 sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p][q];
                if (apq == 0.0) continue;
                // rotation that zeroes a[p][q]
                const double tau = (a[q][q] - a[p][p]) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
        ++out.sweeps;
        out.off_norm = off_diagonal(a);
        out.off_norm_history.push_back(out.off_norm);
    }
    out.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.values.push_back(a[i][i]);
    std::sort(out.values.begin(), out.values.end());
    return out;
}

CountComparison compare_counts(const WeightedTreeMatrix& m, const Rational& lambda, double tol) {
    const DenseMatrix a = to_dense_float(m);
    const FloatSpectrum spectrum = dense_eigenvalues(a, tol);
    const double scale = std::max(inf_norm(a), std::numeric_limits<double>::min());
    const double equal_band = kEqualBand * tol * scale;
    const double guard_band = kInconclusiveBand * tol * scale;
    const double point = lambda.to_double();

    CountComparison out;
    out.exact = counts_at(m, lambda);
    out.nearest_gap = std::numeric_limits<double>::infinity();
    bool ambiguous = false;
    for (double ev : spectrum.values) {
        const double gap = std::abs(ev - point);
        out.nearest_gap = std::min(out.nearest_gap, gap);
        if (gap <= equal_band) {
            ++out.floating.equal;
        } else if (gap <= guard_band) {
            ambiguous = true;
        } else if (ev < point) {
            ++out.floating.below;
        } else {
            ++out.floating.above;
        }
    }
    if (ambiguous) {
        out.agreement = Agreement::inconclusive;
    } else {
        out.agreement = out.exact == out.floating ? Agreement::agree : Agreement::disagree;
    }
    return out;
}

}  // namespace diminimal
