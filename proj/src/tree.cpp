#include "diminimal/tree.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <utility>

#include "diminimal/error.hpp"

namespace diminimal {

namespace {

std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

/// BFS distances from `source` over the undirected tree.
std::vector<int> distances_from(const RootedTree& tree, Vertex source) {
    std::vector<int> dist(tree.size(), -1);
    std::queue<Vertex> queue;
    dist[idx(source)] = 0;
    queue.push(source);
    while (!queue.empty()) {
        const Vertex u = queue.front();
        queue.pop();
        for (Vertex w : tree.neighbors(u)) {
            if (dist[idx(w)] < 0) {
                dist[idx(w)] = dist[idx(u)] + 1;
                queue.push(w);
            }
        }
    }
    return dist;
}

Vertex farthest(const std::vector<int>& dist) {
    // first maximum = smallest id among the farthest vertices
    return static_cast<Vertex>(std::max_element(dist.begin(), dist.end()) - dist.begin());
}

}  // namespace

RootedTree::RootedTree() : adjacency_(1), children_(1), parent_(1, -1) {}

std::optional<Vertex> RootedTree::parent(Vertex v) const {
    const Vertex p = parent_.at(idx(v));
    if (p < 0) return std::nullopt;
    return p;
}

void RootedTree::orient() {
    const std::size_t n = adjacency_.size();
    parent_.assign(n, -1);
    children_.assign(n, {});
    std::vector<bool> seen(n, false);
    std::vector<Vertex> stack{root_};
    seen[idx(root_)] = true;
    std::size_t visited = 0;
    while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        ++visited;
        for (Vertex w : adjacency_[idx(u)]) {
            if (seen[idx(w)]) continue;
            seen[idx(w)] = true;
            parent_[idx(w)] = u;
            children_[idx(u)].push_back(w);
            stack.push_back(w);
        }
    }
    if (visited != n) throw InvalidInput("edge list does not describe a connected graph");
}

RootedTree RootedTree::rerooted(Vertex new_root) const {
    if (!contains(new_root)) throw InvalidInput("root " + std::to_string(new_root) + " is not a vertex of the tree");
    RootedTree copy = *this;
    copy.root_ = new_root;
    copy.orient();
    return copy;
}

std::vector<int> RootedTree::depths() const { return distances_from(*this, root_); }

RootedTree build_tree(std::span<const Edge> edge_list, Vertex root) {
    const std::size_t n = edge_list.size() + 1;
    RootedTree tree;
    tree.adjacency_.assign(n, {});
    std::set<Edge> seen;
    for (const Edge& raw : edge_list) {
        if (raw.u < 0 || raw.v < 0 || idx(raw.u) >= n || idx(raw.v) >= n) {
            throw InvalidInput("edge (" + std::to_string(raw.u) + "," + std::to_string(raw.v) +
                               ") has an id outside 0.." + std::to_string(n - 1));
        }
        if (raw.u == raw.v) throw InvalidInput("self loop at vertex " + std::to_string(raw.u));
        const Edge e = Edge::canonical(raw.u, raw.v);
        if (!seen.insert(e).second) {
            throw InvalidInput("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") closes a cycle");
        }
        tree.adjacency_[idx(e.u)].push_back(e.v);
        tree.adjacency_[idx(e.v)].push_back(e.u);
    }
    for (auto& list : tree.adjacency_) std::sort(list.begin(), list.end());
    tree.edges_.assign(seen.begin(), seen.end());
    if (root < 0 || idx(root) >= n) throw InvalidInput("root " + std::to_string(root) + " is not a vertex of the tree");
    tree.root_ = root;
    // n - 1 distinct edges and connected <=> acyclic
    tree.orient();
    for (auto& list : tree.children_) std::sort(list.begin(), list.end());
    return tree;
}

std::vector<Vertex> bottom_up_order(const RootedTree& tree) {
    std::vector<Vertex> order;
    order.reserve(tree.size());
    // iterative postorder: (vertex, next child index)
    std::vector<std::pair<Vertex, std::size_t>> stack{{tree.root(), 0}};
    while (!stack.empty()) {
        auto& [u, next] = stack.back();
        const auto kids = tree.children(u);
        if (next < kids.size()) {
            const Vertex c = kids[next++];
            stack.emplace_back(c, 0);
        } else {
            order.push_back(u);
            stack.pop_back();
        }
    }
    return order;
}

int height(const RootedTree& tree) {
    const auto d = tree.depths();
    return *std::max_element(d.begin(), d.end());
}

std::vector<int> subtree_heights(const RootedTree& tree) {
    std::vector<int> h(tree.size(), 0);
    for (Vertex v : bottom_up_order(tree)) {
        for (Vertex c : tree.children(v)) h[idx(v)] = std::max(h[idx(v)], h[idx(c)] + 1);
    }
    return h;
}

int diameter(const RootedTree& tree) {
    const Vertex x = farthest(distances_from(tree, 0));
    const auto dist = distances_from(tree, x);
    return dist[idx(farthest(dist))];
}

std::vector<Vertex> main_roots(const RootedTree& tree) {
    const Vertex x = farthest(distances_from(tree, 0));
    const auto from_x = distances_from(tree, x);
    const Vertex y = farthest(from_x);
    const int d = from_x[idx(y)];
    // walk back from y towards x along decreasing distance
    std::vector<Vertex> path{y};
    Vertex cur = y;
    while (cur != x) {
        for (Vertex w : tree.neighbors(cur)) {
            if (from_x[idx(w)] == from_x[idx(cur)] - 1) {
                cur = w;
                break;
            }
        }
        path.push_back(cur);
    }
    if (d % 2 == 0) return {path[idx(d / 2)]};
    Vertex a = path[idx(d / 2)];
    Vertex b = path[idx(d / 2 + 1)];
    if (b < a) std::swap(a, b);
    return {a, b};
}

JoinResult join(const RootedTree& core, std::span<const RootedTree> parts) {
    if (parts.empty()) throw InvalidInput("join needs at least one part");
    JoinResult result;
    Vertex next = 0;
    std::vector<Edge> edges;
    auto place = [&](const RootedTree& piece) {
        std::vector<Vertex> map(piece.size(), -1);
        for (Vertex v : bottom_up_order(piece)) map[idx(v)] = next++;
        for (const Edge& e : piece.edges()) edges.push_back(Edge::canonical(map[idx(e.u)], map[idx(e.v)]));
        result.relabel.push_back(std::move(map));
    };
    place(core);
    for (const RootedTree& part : parts) place(part);
    const Vertex core_root = result.relabel[0][idx(core.root())];
    for (std::size_t i = 0; i < parts.size(); ++i) {
        edges.push_back(Edge::canonical(core_root, result.relabel[i + 1][idx(parts[i].root())]));
    }
    result.tree = build_tree(edges, core_root);
    return result;
}

std::vector<Vertex> branch_vertices(const RootedTree& tree, Vertex v, Vertex branch_root) {
    if (!tree.contains(v) || !tree.contains(branch_root)) throw InvalidInput("vertex id out of range");
    const auto nbrs = tree.neighbors(v);
    if (std::find(nbrs.begin(), nbrs.end(), branch_root) == nbrs.end()) {
        throw InvalidInput("vertex " + std::to_string(branch_root) + " is not adjacent to " + std::to_string(v));
    }
    std::vector<Vertex> out;
    std::vector<Vertex> stack{branch_root};
    std::vector<bool> seen(tree.size(), false);
    seen[idx(v)] = true;
    seen[idx(branch_root)] = true;
    while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        out.push_back(u);
        for (Vertex w : tree.neighbors(u)) {
            if (!seen[idx(w)]) {
                seen[idx(w)] = true;
                stack.push_back(w);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

RootedTree cbd(const RootedTree& tree, Vertex v, Vertex branch_root, int copies) {
    if (copies < 1) throw InvalidInput("branch duplication needs at least one copy");
    const auto branch = branch_vertices(tree, v, branch_root);
    for (Vertex m : main_roots(tree)) {
        if (std::binary_search(branch.begin(), branch.end(), m)) {
            throw InvalidInput("branch at " + std::to_string(v) + " through " + std::to_string(branch_root) +
                               " contains main root " + std::to_string(m));
        }
    }
    const int n = static_cast<int>(tree.size());
    const int b = static_cast<int>(branch.size());
    std::vector<Vertex> local(tree.size(), -1);
    for (int i = 0; i < b; ++i) local[idx(branch[idx(i)])] = i;

    std::vector<Edge> edges = tree.edges();
    for (int copy = 0; copy < copies; ++copy) {
        const int offset = n + copy * b;
        for (const Edge& e : tree.edges()) {
            if (local[idx(e.u)] >= 0 && local[idx(e.v)] >= 0) {
                edges.push_back(Edge::canonical(offset + local[idx(e.u)], offset + local[idx(e.v)]));
            }
        }
        edges.push_back(Edge::canonical(v, offset + local[idx(branch_root)]));
    }
    RootedTree out = build_tree(edges, tree.root());
    if (diameter(out) != diameter(tree)) throw VerificationError("branch duplication changed the diameter");
    return out;
}

std::string family_name(Family family) {
    switch (family) {
        case Family::S: return "S";
        case Family::S_prime: return "S_prime";
        case Family::S_doubleprime: return "S_doubleprime";
        case Family::unsupported: return "unsupported";
    }
    return "unsupported";
}

Family parse_family(const std::string& text) {
    if (text == "S") return Family::S;
    if (text == "Sp" || text == "S_prime" || text == "S'") return Family::S_prime;
    if (text == "Spp" || text == "S_doubleprime" || text == "S''") return Family::S_doubleprime;
    throw InvalidInput("unknown seed family '" + text + "' (expected S, Sp or Spp)");
}

namespace {

RootedTree path_tree(int n, Vertex root) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return build_tree(edges, root);
}

RootedTree join_one(const RootedTree& a, const RootedTree& b) { return join(a, std::span(&b, 1)).tree; }

RootedTree join_two(const RootedTree& core, const RootedTree& a, const RootedTree& b) {
    const RootedTree parts[] = {a, b};
    return join(core, parts).tree;
}

RootedTree seed_s(int d) {
    if (d == 0) return RootedTree{};
    if (d == 1) return path_tree(2, 0);
    if (d == 2) return path_tree(3, 1);
    // d = 2k-1 or d = 2k, k >= 2, both built from S_{2k-3}
    const int k = (d + 1) / 2;
    const RootedTree base = seed_s(2 * k - 3);
    return d % 2 == 1 ? join_one(base, base) : join_two(base, base, base);
}

}  // namespace

RootedTree seed(Family family, int d) {
    switch (family) {
        case Family::S:
            if (d < 0) break;
            return seed_s(d);
        case Family::S_prime: {
            if (d < 4) break;
            if (d == 4) return join_two(seed_s(0), seed_s(1), seed_s(1));
            if (d == 5) {
                const RootedTree side = join_one(seed_s(0), seed_s(1));
                return join_one(side, side);
            }
            if (d % 2 == 0) {
                const int k = (d - 2) / 2;
                const RootedTree tall = seed_s(2 * k - 1);
                return join_two(seed_s(2 * k - 3), tall, tall);
            }
            const int k = (d - 3) / 2;
            const RootedTree side = join_one(seed_s(2 * k - 3), seed_s(2 * k - 1));
            return join_one(side, side);
        }
        case Family::S_doubleprime: {
            if (d < 5 || d % 2 == 0) break;
            if (d == 5) return join_one(join_one(seed_s(0), seed_s(1)), join_one(seed_s(1), seed_s(1)));
            const int k = (d - 3) / 2;
            const RootedTree tall = seed_s(2 * k - 1);
            return join_one(join_one(seed_s(2 * k - 3), tall), join_one(tall, tall));
        }
        case Family::unsupported: break;
    }
    throw InvalidInput("seed " + family_name(family) + " is undefined for diameter " + std::to_string(d));
}

PieceStructure::PieceStructure(RootedTree rooted)
    : tree_(std::move(rooted)), branch_height_(subtree_heights(tree_)), tstar_memo_(tree_.size()) {}

std::vector<Vertex> PieceStructure::tall_children(Vertex r, int h) const {
    std::vector<Vertex> out;
    for (Vertex c : tree_.children(r)) {
        if (branch_height_[idx(c)] == h - 1) out.push_back(c);
    }
    return out;
}

bool PieceStructure::is_tstar(Vertex r, int h) {
    if (h == 0) return true;
    auto& memo = tstar_memo_[idx(r)];
    if (memo.size() <= idx(h)) memo.resize(idx(h) + 1, -1);
    if (memo[idx(h)] >= 0) return memo[idx(h)] == 1;
    const auto tall = tall_children(r, h);
    bool ok = !tall.empty();
    for (Vertex c : tall) ok = ok && is_tstar(c, h - 1);
    ok = ok && is_tstar(r, h - 1);
    tstar_memo_[idx(r)][idx(h)] = ok ? 1 : 0;
    return ok;
}

bool PieceStructure::is_sprime(Vertex r, int h) {
    if (h < 2) return false;
    const auto tall = tall_children(r, h);
    if (tall.empty()) return false;
    for (Vertex c : tall) {
        if (!is_tstar(c, h - 1)) return false;
    }
    if (!tall_children(r, h - 1).empty()) return false;  // core must be exactly h-2 tall
    return is_tstar(r, h - 2);
}

void PieceStructure::collect_tstar_steps(Vertex r, int h, std::vector<JoinStep>& out) const {
    for (int level = h; level >= 1; --level) {
        auto tall = tall_children(r, level);
        out.push_back({r, level, tall});
        for (Vertex c : tall) collect_tstar_steps(c, level - 1, out);
    }
}

void PieceStructure::collect_sprime_steps(Vertex r, int h, std::vector<JoinStep>& out) const {
    for (Vertex c : tall_children(r, h)) collect_tstar_steps(c, h - 1, out);
    collect_tstar_steps(r, h - 2, out);
}

FamilyCertificate recognize_family(const RootedTree& tree) {
    FamilyCertificate cert;
    const int d = diameter(tree);
    cert.main_roots = main_roots(tree);
    cert.root = cert.main_roots.front();
    cert.tag = {Family::unsupported, d};
    PieceStructure classify(tree.rerooted(cert.root));

    auto add_piece = [&](SubtreeRef ref, PieceKind kind) {
        cert.pieces.push_back({ref, kind});
        if (kind == PieceKind::tstar) {
            classify.collect_tstar_steps(ref.root, ref.height, cert.steps);
        } else {
            classify.collect_sprime_steps(ref.root, ref.height, cert.steps);
        }
    };

    if (d % 2 == 0) {
        const SubtreeRef center{cert.root, d / 2};
        if (classify.is_tstar(center.root, center.height)) {
            cert.tag.family = Family::S;
            add_piece(center, PieceKind::tstar);
        } else if (classify.is_sprime(center.root, center.height)) {
            cert.tag.family = Family::S_prime;
            add_piece(center, PieceKind::sprime);
        }
        return cert;
    }

    const int h = (d - 1) / 2;
    const SubtreeRef sides[] = {{cert.main_roots[0], h}, {cert.main_roots[1], h}};
    PieceKind kinds[2];
    for (int i = 0; i < 2; ++i) {
        if (classify.is_tstar(sides[i].root, sides[i].height)) {
            kinds[i] = PieceKind::tstar;
        } else if (classify.is_sprime(sides[i].root, sides[i].height)) {
            kinds[i] = PieceKind::sprime;
        } else {
            return cert;
        }
    }
    if (kinds[0] == PieceKind::tstar && kinds[1] == PieceKind::tstar) {
        cert.tag.family = Family::S;
    } else if (kinds[0] == PieceKind::sprime && kinds[1] == PieceKind::sprime) {
        cert.tag.family = Family::S_prime;
    } else {
        cert.tag.family = Family::S_doubleprime;
    }
    add_piece(sides[0], kinds[0]);
    add_piece(sides[1], kinds[1]);
    return cert;
}

}  // namespace diminimal
