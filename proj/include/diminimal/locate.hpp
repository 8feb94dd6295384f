#pragma once

#include <optional>
#include <vector>

#include "diminimal/matrix.hpp"
#include "diminimal/rational.hpp"
#include "diminimal/tree.hpp"

namespace diminimal {

struct Inertia {
    int negative = 0;
    int zero = 0;
    int positive = 0;
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// One run of the congruence diagonalization of M + xI.
struct DiagOutcome {
    std::vector<Rational> final_values;
    Inertia inertia;
    std::vector<Edge> removed_edges;  // parent edges cut by the zero-child rule
    std::vector<Vertex> zero_child;   // child picked by the zero-child rule at each vertex, or -1
    std::vector<int> depth;           // distance from the run's root
    Rational query_shift;
    Vertex root = 0;
};

/// Processes vertices bottom-up from `root`. A vertex with a zero child takes
/// the smallest such child j: d_k = -w(j,k)^2 / 2, d_j = 2, and its own parent
/// edge is cut for the rest of the run.
DiagOutcome diagonalize(const WeightedTreeMatrix& m, const Rational& x, Vertex root);
DiagOutcome diagonalize(const WeightedTreeMatrix& m, const Rational& x);

/// Eigenvalue counts of M relative to lambda.
struct Counts {
    int below = 0;
    int equal = 0;
    int above = 0;
    friend bool operator==(const Counts&, const Counts&) = default;
};

Counts counts_at(const WeightedTreeMatrix& m, const Rational& lambda);
int multiplicity(const WeightedTreeMatrix& m, const Rational& lambda);

/// Interval endpoint; an empty value means unbounded on that side.
struct Endpoint {
    std::optional<Rational> value;
    bool closed = false;
};

/// Number of eigenvalues in the interval. Throws InvalidInput when a > b.
int count_in_interval(const WeightedTreeMatrix& m, const Endpoint& a, const Endpoint& b);

/// Open interval (lo, hi), or the single point lo when lo == hi.
struct IsolatingInterval {
    Rational lo;
    Rational hi;
    int multiplicity = 0;
};

/// Bisection to width <= `width`, ascending. Multiplicities sum to n.
std::vector<IsolatingInterval> isolate_eigenvalues(const WeightedTreeMatrix& m, const Rational& width);

/// Gershgorin radius, square roots rounded up to denominator 10^6.
Rational gershgorin_bound(const WeightedTreeMatrix& m);

/// Smallest depth of a zero in the run at -lambda from `root`; empty when
/// lambda is not an eigenvalue.
std::optional<int> L_value(const WeightedTreeMatrix& m, const Rational& lambda, Vertex root);

/// m_{M[T-v]}(lambda) == m_M(lambda) + 1.
bool is_parter(const WeightedTreeMatrix& m, Vertex v, const Rational& lambda);

/// Number of components of T - v whose submatrix has lambda as an eigenvalue.
int components_with_eigenvalue(const WeightedTreeMatrix& m, Vertex v, const Rational& lambda);

struct ParterVertex {
    Vertex vertex = 0;
    bool from_recipe = true;  // false when the vertex came from the full scan
};

/// Parter vertex of degree >= 3 with lambda in >= 3 components of T - v.
/// Tries the parent of the deepest zero first, then scans every vertex.
/// Throws InvalidInput when the multiplicity is below 2, VerificationError
/// if no vertex qualifies.
ParterVertex find_parter_vertex(const WeightedTreeMatrix& m, const Rational& lambda);

}  // namespace diminimal
