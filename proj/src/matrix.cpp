#include "diminimal/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "diminimal/error.hpp"

namespace diminimal {

namespace {

std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

std::size_t edge_index(const RootedTree& tree, Vertex u, Vertex v) {
    const Edge e = Edge::canonical(u, v);
    const auto& edges = tree.edges();
    const auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) {
        throw InvalidInput("{" + std::to_string(u) + "," + std::to_string(v) + "} is not an edge");
    }
    return static_cast<std::size_t>(it - edges.begin());
}

}  // namespace

WeightedTreeMatrix::WeightedTreeMatrix() : diag_(1) {}

WeightedTreeMatrix::WeightedTreeMatrix(RootedTree tree, std::vector<Rational> diag, std::vector<Rational> sq_edge)
    : tree_(std::move(tree)), diag_(std::move(diag)), sq_edge_(std::move(sq_edge)) {
    if (diag_.size() != tree_.size()) {
        throw InvalidInput("diagonal has " + std::to_string(diag_.size()) + " entries for " +
                           std::to_string(tree_.size()) + " vertices");
    }
    if (sq_edge_.size() != tree_.edges().size()) {
        throw InvalidInput("expected " + std::to_string(tree_.edges().size()) + " squared edge weights, got " +
                           std::to_string(sq_edge_.size()));
    }
    for (std::size_t i = 0; i < sq_edge_.size(); ++i) {
        if (sq_edge_[i].sign() <= 0) {
            const Edge& e = tree_.edges()[i];
            throw InvalidInput("squared weight of edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                               "} must be positive");
        }
    }
}

const Rational& WeightedTreeMatrix::sq_weight(Vertex u, Vertex v) const { return sq_edge_[edge_index(tree_, u, v)]; }

std::vector<Rational> WeightedTreeMatrix::parent_sq_weights() const {
    std::vector<Rational> out(size());
    const auto& edges = tree_.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        const Vertex child = tree_.parent(e.v) == e.u ? e.v : e.u;
        out[idx(child)] = sq_edge_[i];
    }
    return out;
}

WeightedTreeMatrix WeightedTreeMatrix::rerooted(Vertex root) const {
    WeightedTreeMatrix copy = *this;
    copy.tree_ = tree_.rerooted(root);
    return copy;
}

Rational trace(const WeightedTreeMatrix& m) {
    Rational sum;
    for (const Rational& d : m.diag()) sum += d;
    return sum;
}

Submatrix induced_submatrix(const WeightedTreeMatrix& m, std::vector<Vertex> vertices, Vertex root) {
    std::sort(vertices.begin(), vertices.end());
    std::vector<Vertex> local(m.size(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!m.tree().contains(vertices[i])) throw InvalidInput("vertex id out of range");
        local[idx(vertices[i])] = static_cast<Vertex>(i);
    }
    if (!m.tree().contains(root) || local[idx(root)] < 0) throw InvalidInput("submatrix root is not in the vertex set");

    std::vector<Edge> edges;
    std::vector<std::pair<Edge, Rational>> weights;
    const auto& all = m.tree().edges();
    for (std::size_t i = 0; i < all.size(); ++i) {
        const Vertex a = local[idx(all[i].u)];
        const Vertex b = local[idx(all[i].v)];
        if (a >= 0 && b >= 0) {
            edges.push_back(Edge::canonical(a, b));
            weights.emplace_back(Edge::canonical(a, b), m.sq_edge()[i]);
        }
    }
    RootedTree tree = build_tree(edges, local[idx(root)]);
    std::sort(weights.begin(), weights.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Rational> sq;
    sq.reserve(weights.size());
    for (auto& [e, w] : weights) sq.push_back(std::move(w));
    std::vector<Rational> diag;
    diag.reserve(vertices.size());
    for (Vertex v : vertices) diag.push_back(m.diag(v));
    return {WeightedTreeMatrix(std::move(tree), std::move(diag), std::move(sq)), std::move(vertices)};
}

std::vector<Submatrix> delete_vertex(const WeightedTreeMatrix& m, Vertex v) {
    if (!m.tree().contains(v)) throw InvalidInput("vertex " + std::to_string(v) + " is not in the tree");
    std::vector<Submatrix> out;
    for (Vertex w : m.tree().neighbors(v)) {
        out.push_back(induced_submatrix(m, branch_vertices(m.tree(), v, w), w));
    }
    return out;
}

DenseMatrix to_dense_float(const WeightedTreeMatrix& m) {
    const std::size_t n = m.size();
    DenseMatrix a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = m.diag()[i].to_double();
    const auto& edges = m.tree().edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const double w = std::sqrt(m.sq_edge()[i].to_double());
        a[idx(edges[i].u)][idx(edges[i].v)] = w;
        a[idx(edges[i].v)][idx(edges[i].u)] = w;
    }
    return a;
}

}  // namespace diminimal
