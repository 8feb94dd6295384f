#pragma once

#include <vector>

#include "diminimal/locate.hpp"
#include "diminimal/matrix.hpp"
#include "diminimal/rational.hpp"

namespace diminimal {

struct FloatSpectrum {
    std::vector<double> values;  // ascending
    int sweeps = 0;
    double off_norm = 0.0;                 // off-diagonal Frobenius norm at exit
    std::vector<double> off_norm_history;  // after each sweep
};

constexpr double kDefaultOracleTol = 1e-12;

/// Cyclic Jacobi, rotating over the upper triangle row by row until the
/// off-diagonal norm is at most tol * ||A||_F. Throws InvalidInput for a
/// non-symmetric input and VerificationError after 100 sweeps.
FloatSpectrum dense_eigenvalues(const DenseMatrix& a, double tol = kDefaultOracleTol);

/// Max absolute row sum.
double inf_norm(const DenseMatrix& a);

enum class Agreement { agree, disagree, inconclusive };

struct CountComparison {
    Counts exact;
    Counts floating;
    Agreement agreement = Agreement::inconclusive;
    double nearest_gap = 0.0;  // distance from lambda to the closest float eigenvalue
};

/// Float eigenvalues within 1e4 * tol * ||A||_inf of lambda count as equal,
/// those beyond 1e6 * tol * ||A||_inf are bucketed below/above; anything in
/// between makes the comparison inconclusive.
CountComparison compare_counts(const WeightedTreeMatrix& m, const Rational& lambda, double tol = kDefaultOracleTol);

}  // namespace diminimal
