#include "diminimal/locate.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "diminimal/error.hpp"

namespace diminimal {

namespace {

std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

}  // namespace

DiagOutcome diagonalize(const WeightedTreeMatrix& m, const Rational& x, Vertex root) {
    if (!m.tree().contains(root)) throw InvalidInput("root " + std::to_string(root) + " is not in the tree");
    const WeightedTreeMatrix rooted = root == m.tree().root() ? m : m.rerooted(root);
    const RootedTree& tree = rooted.tree();
    const std::vector<Rational> up = rooted.parent_sq_weights();

    DiagOutcome out;
    out.root = root;
    out.query_shift = x;
    out.zero_child.assign(m.size(), -1);
    out.final_values.reserve(m.size());
    for (const Rational& d : rooted.diag()) out.final_values.push_back(d + x);
    auto& d = out.final_values;
    std::vector<bool> detached(m.size(), false);

    for (Vertex k : bottom_up_order(tree)) {
        std::optional<Vertex> zero;
        bool any_child = false;
        for (Vertex c : tree.children(k)) {
            if (detached[idx(c)]) continue;
            any_child = true;
            if (d[idx(c)].is_zero()) {
                zero = c;  // children ascend, so this is the smallest zero child
                break;
            }
        }
        if (!any_child) continue;
        if (!zero) {
            for (Vertex c : tree.children(k)) {
                if (!detached[idx(c)]) d[idx(k)] -= up[idx(c)] / d[idx(c)];
            }
            continue;
        }
        const Vertex j = *zero;
        out.zero_child[idx(k)] = j;
        d[idx(k)] = -up[idx(j)] / Rational(2);
        d[idx(j)] = Rational(2);
        if (const auto parent = tree.parent(k)) {
            detached[idx(k)] = true;
            out.removed_edges.push_back(Edge::canonical(k, *parent));
        }
    }

    for (const Rational& value : d) {
        const int s = value.sign();
        if (s < 0) {
            ++out.inertia.negative;
        } else if (s == 0) {
            ++out.inertia.zero;
        } else {
            ++out.inertia.positive;
        }
    }
    out.depth = tree.depths();
    return out;
}

DiagOutcome diagonalize(const WeightedTreeMatrix& m, const Rational& x) { return diagonalize(m, x, m.tree().root()); }

Counts counts_at(const WeightedTreeMatrix& m, const Rational& lambda) {
    const Inertia in = diagonalize(m, -lambda).inertia;
    return {in.negative, in.zero, in.positive};
}

int multiplicity(const WeightedTreeMatrix& m, const Rational& lambda) { return counts_at(m, lambda).equal; }

int count_in_interval(const WeightedTreeMatrix& m, const Endpoint& a, const Endpoint& b) {
    if (a.value && b.value && *b.value < *a.value) {
        throw InvalidInput("interval endpoints out of order: " + a.value->str() + " > " + b.value->str());
    }
    const int n = static_cast<int>(m.size());
    int upper = n;  // eigenvalues on the left of (or at) b
    if (b.value) {
        const Counts c = counts_at(m, *b.value);
        upper = c.below + (b.closed ? c.equal : 0);
    }
    int lower = 0;  // eigenvalues strictly left of the interval
    if (a.value) {
        const Counts c = counts_at(m, *a.value);
        lower = c.below + (a.closed ? 0 : c.equal);
    }
    return std::max(0, upper - lower);
}

Rational gershgorin_bound(const WeightedTreeMatrix& m) {
    constexpr long kDenominator = 1'000'000;
    std::vector<Rational> row(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) row[i] = m.diag()[i].abs();
    const auto& edges = m.tree().edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Rational w = sqrt_upper(m.sq_edge()[i], kDenominator);
        row[idx(edges[i].u)] += w;
        row[idx(edges[i].v)] += w;
    }
    return *std::max_element(row.begin(), row.end());
}

std::vector<IsolatingInterval> isolate_eigenvalues(const WeightedTreeMatrix& m, const Rational& width) {
    if (width.sign() <= 0) throw InvalidInput("isolation width must be positive");
    std::vector<IsolatingInterval> out;
    const Rational r = gershgorin_bound(m) + Rational(1);
    const int n = static_cast<int>(m.size());

    // count in the open interval (lo, hi) = below(hi) - below(lo) - equal(lo)
    std::function<void(const Rational&, const Counts&, const Rational&, const Counts&)> split =
        [&](const Rational& lo, const Counts& at_lo, const Rational& hi, const Counts& at_hi) {
            const int inside = at_hi.below - at_lo.below - at_lo.equal;
            if (inside == 0) return;
            if (hi - lo <= width) {
                out.push_back({lo, hi, inside});
                return;
            }
            const Rational mid = (lo + hi) / Rational(2);
            const Counts at_mid = counts_at(m, mid);
            split(lo, at_lo, mid, at_mid);
            if (at_mid.equal > 0) out.push_back({mid, mid, at_mid.equal});
            split(mid, at_mid, hi, at_hi);
        };
    split(-r, Counts{0, 0, n}, r, Counts{n, 0, 0});
    return out;
}

std::optional<int> L_value(const WeightedTreeMatrix& m, const Rational& lambda, Vertex root) {
    const DiagOutcome run = diagonalize(m, -lambda, root);
    std::optional<int> best;
    for (std::size_t v = 0; v < m.size(); ++v) {
        if (run.final_values[v].is_zero() && (!best || run.depth[v] < *best)) best = run.depth[v];
    }
    return best;
}

bool is_parter(const WeightedTreeMatrix& m, Vertex v, const Rational& lambda) {
    int sum = 0;
    for (const Submatrix& part : delete_vertex(m, v)) sum += multiplicity(part.matrix, lambda);
    return sum == multiplicity(m, lambda) + 1;
}

int components_with_eigenvalue(const WeightedTreeMatrix& m, Vertex v, const Rational& lambda) {
    int count = 0;
    for (const Submatrix& part : delete_vertex(m, v)) {
        if (multiplicity(part.matrix, lambda) > 0) ++count;
    }
    return count;
}

ParterVertex find_parter_vertex(const WeightedTreeMatrix& m, const Rational& lambda) {
    if (multiplicity(m, lambda) < 2) {
        throw InvalidInput("Parter vertex needs multiplicity >= 2 at " + lambda.str());
    }
    auto qualifies = [&](Vertex v) {
        return m.tree().degree(v) >= 3 && is_parter(m, v, lambda) && components_with_eigenvalue(m, v, lambda) >= 3;
    };

    const DiagOutcome run = diagonalize(m, -lambda);
    std::optional<Vertex> deepest;
    for (std::size_t v = 0; v < m.size(); ++v) {
        if (!run.final_values[v].is_zero()) continue;
        if (!deepest || run.depth[v] > run.depth[idx(*deepest)]) deepest = static_cast<Vertex>(v);
    }
    if (deepest) {
        if (const auto parent = m.tree().parent(*deepest); parent && qualifies(*parent)) return {*parent, true};
    }
    for (Vertex v = 0; v < static_cast<Vertex>(m.size()); ++v) {
        if (qualifies(v)) return {v, false};
    }
    throw VerificationError("no Parter vertex found for eigenvalue " + lambda.str());
}

}  // namespace diminimal
