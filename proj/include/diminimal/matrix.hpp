#pragma once

#include <cstddef>
#include <vector>

#include "diminimal/rational.hpp"
#include "diminimal/tree.hpp"

namespace diminimal {

/// Symmetric matrix whose graph is a tree, stored exactly: the diagonal and
/// the square of every off-diagonal entry. Only squared weights enter the
/// counting algorithms, so irrational weights stay representable.
class WeightedTreeMatrix {
public:
    /// 1x1 zero matrix on K_1.
    WeightedTreeMatrix();
    /// sq_edge is aligned with tree.edges(). Throws InvalidInput on size
    /// mismatch or a non-positive squared weight.
    WeightedTreeMatrix(RootedTree tree, std::vector<Rational> diag, std::vector<Rational> sq_edge);

    const RootedTree& tree() const { return tree_; }
    std::size_t size() const { return tree_.size(); }
    const std::vector<Rational>& diag() const { return diag_; }
    const Rational& diag(Vertex v) const { return diag_.at(static_cast<std::size_t>(v)); }
    const std::vector<Rational>& sq_edge() const { return sq_edge_; }

    /// Squared weight of edge {u, v}; throws InvalidInput if it is not an edge.
    const Rational& sq_weight(Vertex u, Vertex v) const;

    /// Squared weight of the edge to the parent, per vertex (zero at the root).
    std::vector<Rational> parent_sq_weights() const;

    WeightedTreeMatrix rerooted(Vertex root) const;

    friend bool operator==(const WeightedTreeMatrix&, const WeightedTreeMatrix&) = default;

private:
    RootedTree tree_;
    std::vector<Rational> diag_;
    std::vector<Rational> sq_edge_;
};

Rational trace(const WeightedTreeMatrix& m);

/// Principal submatrix on `vertices` (must induce a subtree), rooted at
/// `root`. origin[i] is the id in m of local vertex i; local ids follow the
/// ascending order of `vertices`.
struct Submatrix {
    WeightedTreeMatrix matrix;
    std::vector<Vertex> origin;
};

Submatrix induced_submatrix(const WeightedTreeMatrix& m, std::vector<Vertex> vertices, Vertex root);

/// M[T - v]: one submatrix per component, rooted at the former neighbour of
/// v, in ascending neighbour order.
std::vector<Submatrix> delete_vertex(const WeightedTreeMatrix& m, Vertex v);

using DenseMatrix = std::vector<std::vector<double>>;

/// Dense copy with the positive square root on every edge.
DenseMatrix to_dense_float(const WeightedTreeMatrix& m);

}  // namespace diminimal
