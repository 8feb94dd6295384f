#pragma once

// Shared helpers for the test binaries: random instances and an exact
// eigenvalue-count oracle that does not use the bottom-up elimination.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "diminimal/locate.hpp"
#include "diminimal/matrix.hpp"
#include "diminimal/rational.hpp"
#include "diminimal/realization.hpp"
#include "diminimal/tree.hpp"

namespace testsupport {

using diminimal::Counts;
using diminimal::Edge;
using diminimal::Rational;
using diminimal::RootedTree;
using diminimal::Vertex;
using diminimal::WeightedTreeMatrix;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational random_rational(Rng& rng, int num_bound, int den_bound) {
    return Rational(uniform(rng, -num_bound, num_bound), uniform(rng, 1, den_bound));
}

inline Rational random_positive(Rng& rng, int num_bound, int den_bound) {
    return Rational(uniform(rng, 1, num_bound), uniform(rng, 1, den_bound));
}

/// Random labelled tree: vertex i > 0 hangs from a uniform earlier vertex,
/// then ids are shuffled.
inline RootedTree random_tree(Rng& rng, int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) {
        edges.push_back({perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(uniform(rng, 0, i - 1))]});
    }
    return diminimal::build_tree(edges, uniform(rng, 0, n - 1));
}

inline WeightedTreeMatrix random_matrix(Rng& rng, const RootedTree& tree) {
    std::vector<Rational> diag;
    for (std::size_t i = 0; i < tree.size(); ++i) diag.push_back(random_rational(rng, 6, 4));
    std::vector<Rational> sq;
    for (std::size_t i = 0; i < tree.edges().size(); ++i) sq.push_back(random_positive(rng, 9, 4));
    return WeightedTreeMatrix(tree, diag, sq);
}

// ---------------------------------------------------------------------------
// Exact oracle. With D scaling each vertex by the product of edge weights
// down from the root, D M D^-1 has the squared weight above the diagonal
// and 1 below it: a rational matrix with the same characteristic
// polynomial. All roots are real, so Descartes' rule of signs on the shifted
// polynomial counts them exactly.
// ---------------------------------------------------------------------------

using Poly = std::vector<mpq_class>;  // coefficient of t^i at index i

inline std::vector<std::vector<mpq_class>> rational_similar(const WeightedTreeMatrix& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<mpq_class>> b(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) b[i][i] = m.diag()[i].raw();
    const auto& edges = m.tree().edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto u = static_cast<std::size_t>(edges[e].u);
        const auto v = static_cast<std::size_t>(edges[e].v);
        b[u][v] = m.sq_edge()[e].raw();
        b[v][u] = 1;
    }
    return b;
}

/// det(tI - A) by Faddeev-LeVerrier.
inline Poly characteristic_polynomial(const std::vector<std::vector<mpq_class>>& a) {
    const std::size_t n = a.size();
    Poly c(n + 1, 0);
    c[n] = 1;
    std::vector<std::vector<mpq_class>> mk(n, std::vector<mpq_class>(n, 0));
    std::vector<std::vector<mpq_class>> prod(n, std::vector<mpq_class>(n, 0));
    for (std::size_t k = 1; k <= n; ++k) {
        // mk <- A * mk + c[n-k+1] I
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                mpq_class s = 0;
                for (std::size_t l = 0; l < n; ++l) {
                    if (a[i][l] != 0 && mk[l][j] != 0) s += a[i][l] * mk[l][j];
                }
                prod[i][j] = s;
            }
        }
        for (std::size_t i = 0; i < n; ++i) prod[i][i] += c[n - k + 1];
        mk.swap(prod);
        mpq_class tr = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t l = 0; l < n; ++l) {
                if (a[i][l] != 0 && mk[l][i] != 0) tr += a[i][l] * mk[l][i];
            }
        }
        c[n - k] = -tr / static_cast<long>(k);
    }
    return c;
}

/// Coefficients of p(x + s) as a polynomial in s.
inline Poly taylor_shift(Poly p, const mpq_class& x) {
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = n - 1; j > i; --j) p[j - 1] += x * p[j];
    }
    return p;
}

inline int sign_variations(const Poly& p) {
    int changes = 0;
    int last = 0;
    for (const mpq_class& c : p) {
        const int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

class ExactOracle {
public:
    explicit ExactOracle(const WeightedTreeMatrix& m) : n_(static_cast<int>(m.size())), poly_(characteristic_polynomial(rational_similar(m))) {}

    Counts counts(const Rational& lambda) const {
        Poly q = taylor_shift(poly_, lambda.raw());
        int equal = 0;
        while (equal < static_cast<int>(q.size()) && q[static_cast<std::size_t>(equal)] == 0) ++equal;
        const int above = sign_variations(q);
        for (std::size_t i = 1; i < q.size(); i += 2) q[i] = -q[i];
        const int below = sign_variations(q);
        return {below, equal, above};
    }

    int multiplicity(const Rational& lambda) const { return counts(lambda).equal; }
    int size() const { return n_; }

private:
    int n_;
    Poly poly_;
};

// ---------------------------------------------------------------------------
// Trees
// ---------------------------------------------------------------------------

/// Random diameter-preserving unfolding: `steps` duplications of branches
/// that avoid every main root, skipping any step that would exceed max_n.
inline RootedTree random_unfolding(Rng& rng, RootedTree tree, int steps, int max_n) {
    for (int s = 0; s < steps; ++s) {
        const auto roots = diminimal::main_roots(tree);
        std::vector<std::pair<Vertex, Vertex>> choices;
        for (Vertex v = 0; v < static_cast<Vertex>(tree.size()); ++v) {
            for (Vertex c : tree.neighbors(v)) {
                const auto branch = diminimal::branch_vertices(tree, v, c);
                const bool has_root = std::any_of(roots.begin(), roots.end(), [&](Vertex r) {
                    return std::binary_search(branch.begin(), branch.end(), r);
                });
                if (!has_root) choices.emplace_back(v, c);
            }
        }
        if (choices.empty()) break;
        const auto [v, c] = choices[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(choices.size()) - 1))];
        const int copies = uniform(rng, 1, 2);
        const auto branch_size = static_cast<int>(diminimal::branch_vertices(tree, v, c).size());
        if (static_cast<int>(tree.size()) + copies * branch_size > max_n) continue;
        tree = diminimal::cbd(tree, v, c, copies);
    }
    return tree;
}

/// Canonical string of the unrooted tree (AHU encoding rooted at its center).
inline std::string canonical_form(const RootedTree& tree) {
    std::string best;
    for (Vertex r : diminimal::main_roots(tree)) {
        const RootedTree rooted = tree.rerooted(r);
        std::function<std::string(Vertex)> enc = [&](Vertex v) {
            std::vector<std::string> kids;
            for (Vertex c : rooted.children(v)) kids.push_back(enc(c));
            std::sort(kids.begin(), kids.end());
            std::string s = "(";
            for (const auto& k : kids) s += k;
            return s + ")";
        };
        const std::string s = enc(r);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

/// Every unlabelled tree with 1..max_n vertices, once each.
inline std::vector<RootedTree> all_trees(int max_n) {
    std::vector<RootedTree> out{RootedTree{}};
    std::vector<RootedTree> layer{RootedTree{}};
    for (int n = 2; n <= max_n; ++n) {
        std::map<std::string, RootedTree> next;
        for (const RootedTree& t : layer) {
            for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
                std::vector<Edge> edges = t.edges();
                edges.push_back({v, static_cast<Vertex>(t.size())});
                RootedTree grown = diminimal::build_tree(edges, 0);
                next.emplace(canonical_form(grown), std::move(grown));
            }
        }
        layer.clear();
        for (auto& [key, t] : next) layer.push_back(t);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

/// The weighted diameter-4 example: root (diag 1) with t[0] leaves of diag 1
/// and squared weight 1/t[0]; p = t.size() - 1 star centres of diag 0 joined
/// with squared weight 4/p, centre i carrying t[i] leaves of diag 0 and
/// squared weight 1/t[i].
inline WeightedTreeMatrix example_matrix(const std::vector<int>& t) {
    const int p = static_cast<int>(t.size()) - 1;
    std::vector<Edge> edges;
    std::vector<Rational> diag{Rational(1)};
    std::map<Edge, Rational> weight;
    Vertex next = 1;
    for (int j = 0; j < t[0]; ++j) {
        edges.push_back({0, next});
        weight[Edge::canonical(0, next)] = Rational(1, t[0]);
        diag.push_back(Rational(1));
        ++next;
    }
    for (int i = 1; i <= p; ++i) {
        const Vertex centre = next++;
        diag.push_back(Rational(0));
        edges.push_back({0, centre});
        weight[Edge::canonical(0, centre)] = Rational(4, p);
        for (int j = 0; j < t[static_cast<std::size_t>(i)]; ++j) {
            edges.push_back({centre, next});
            weight[Edge::canonical(centre, next)] = Rational(1, t[static_cast<std::size_t>(i)]);
            diag.push_back(Rational(0));
            ++next;
        }
    }
    RootedTree tree = diminimal::build_tree(edges, 0);
    std::vector<Rational> sq;
    for (const Edge& e : tree.edges()) sq.push_back(weight.at(e));
    return WeightedTreeMatrix(tree, diag, sq);
}

/// Constant-diagonal matrix with one squared weight on every edge.
inline WeightedTreeMatrix uniform_matrix(const RootedTree& tree, const Rational& diag, const Rational& sq) {
    return WeightedTreeMatrix(tree, std::vector<Rational>(tree.size(), diag),
                              std::vector<Rational>(tree.edges().size(), sq));
}

inline RootedTree path(int n, Vertex root) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return diminimal::build_tree(edges, root);
}

inline RootedTree star(int leaves) {
    std::vector<Edge> edges;
    for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
    return diminimal::build_tree(edges, 0);
}

/// Supported (family, diameter) pairs for realization in the given range.
struct FamilySeed {
    diminimal::Family family;
    int diameter;
};

inline std::vector<FamilySeed> corpus_seeds() {
    std::vector<FamilySeed> out;
    for (int d = 1; d <= 12; ++d) out.push_back({diminimal::Family::S, d});
    for (int d = 6; d <= 11; ++d) {
        out.push_back({diminimal::Family::S_prime, d});
        if (d % 2 == 1) out.push_back({diminimal::Family::S_doubleprime, d});
    }
    return out;
}

}  // namespace testsupport
