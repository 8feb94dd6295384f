#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace diminimal {

using Vertex = int;

/// Undirected edge stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    static Edge canonical(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A tree on dense ids 0..n-1 with a distinguished root. Immutable once built;
/// children lists are sorted ascending so every traversal is deterministic.
class RootedTree {
public:
    /// K_1 rooted at vertex 0.
    RootedTree();

    std::size_t size() const { return adjacency_.size(); }
    Vertex root() const { return root_; }
    std::optional<Vertex> parent(Vertex v) const;
    std::span<const Vertex> children(Vertex v) const { return children_.at(static_cast<std::size_t>(v)); }
    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
    std::size_t degree(Vertex v) const { return neighbors(v).size(); }
    bool is_leaf(Vertex v) const { return children(v).empty(); }
    bool contains(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < size(); }

    /// Canonical edge list, sorted.
    const std::vector<Edge>& edges() const { return edges_; }

    /// Same tree, different root.
    RootedTree rerooted(Vertex new_root) const;

    /// Distance from the root to every vertex.
    std::vector<int> depths() const;

    friend bool operator==(const RootedTree&, const RootedTree&) = default;

private:
    friend RootedTree build_tree(std::span<const Edge> edge_list, Vertex root);
    void orient();

    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::vector<Vertex>> children_;
    std::vector<Vertex> parent_;  // -1 for the root
    std::vector<Edge> edges_;
    Vertex root_ = 0;
};

/// Builds a tree on n = |edges| + 1 vertices. Throws InvalidInput on
/// out-of-range ids, self loops, duplicate edges, cycles or disconnection.
RootedTree build_tree(std::span<const Edge> edge_list, Vertex root);

/// Postorder with children visited in ascending id order; ends with the root.
std::vector<Vertex> bottom_up_order(const RootedTree& tree);

/// Max root-to-vertex distance.
int height(const RootedTree& tree);

/// Height of the subtree hanging from each vertex, relative to the tree's root.
std::vector<int> subtree_heights(const RootedTree& tree);

/// Diameter in edges.
int diameter(const RootedTree& tree);

/// Central vertex (even diameter) or both endpoints of the central edge
/// (odd diameter, smaller id first) shared by every longest path.
std::vector<Vertex> main_roots(const RootedTree& tree);

/// Result of T0 (.) (T1, ..., Tp). relabel[0] maps T0's ids to the joined
/// tree's ids, relabel[i] maps part i's ids.
struct JoinResult {
    RootedTree tree;
    std::vector<std::vector<Vertex>> relabel;
};

/// Attaches the root of every part as a new child of core's root. New ids are
/// handed out along the core's bottom-up order, then each part's in turn.
JoinResult join(const RootedTree& core, std::span<const RootedTree> parts);

/// Vertices of the component of T - v that contains branch_root.
std::vector<Vertex> branch_vertices(const RootedTree& tree, Vertex v, Vertex branch_root);

/// s-combinatorial branch duplication: appends `copies` copies of the branch
/// of T - v containing branch_root at v. The root is kept; copy vertices get
/// fresh ids n, n+1, ... (each copy in ascending original-id order). Throws
/// InvalidInput when branch_root is not adjacent to v or the branch holds a
/// main root.
RootedTree cbd(const RootedTree& tree, Vertex v, Vertex branch_root, int copies);

enum class Family { S, S_prime, S_doubleprime, unsupported };

std::string family_name(Family family);
/// Accepts "S", "Sp", "Spp" and the long enum spellings.
Family parse_family(const std::string& text);

struct FamilyTag {
    Family family = Family::unsupported;
    int diameter = 0;
    friend bool operator==(const FamilyTag&, const FamilyTag&) = default;
};

/// Seed trees rooted at a central vertex. S is defined for d >= 0, S_prime for
/// d >= 4, S_doubleprime for odd d >= 5.
RootedTree seed(Family family, int d);

/// Piece of a rooted tree: `root` together with every child whose branch has
/// height <= height - 1, and everything below those children.
struct SubtreeRef {
    Vertex root = 0;
    int height = 0;
    friend bool operator==(const SubtreeRef&, const SubtreeRef&) = default;
};

/// tstar: the piece lies in the join-closed class generated from K_1 with
/// equal-height operands. sprime: root joined to tall branches (height h-1,
/// each tstar) plus a tstar core of height exactly h-2.
enum class PieceKind { tstar, sprime };

struct FamilyPiece {
    SubtreeRef ref;
    PieceKind kind = PieceKind::tstar;
};

/// One join used by a tstar certificate: the piece (root, height) is its core
/// (root, height - 1) joined with the tstar branches rooted at part_roots.
struct JoinStep {
    Vertex root = 0;
    int height = 0;
    std::vector<Vertex> part_roots;
};

/// Piece queries on one fixed rooting of a tree. Holds its own copy of the tree.
class PieceStructure {
public:
    explicit PieceStructure(RootedTree rooted);

    const RootedTree& tree() const { return tree_; }
    int branch_height(Vertex v) const { return branch_height_.at(static_cast<std::size_t>(v)); }

    /// Children of r inside piece (r, h) whose branch has height exactly h - 1.
    std::vector<Vertex> tall_children(Vertex r, int h) const;

    bool is_tstar(Vertex r, int h);
    bool is_sprime(Vertex r, int h);

    /// Joins behind a tstar / sprime piece, outermost first.
    void collect_tstar_steps(Vertex r, int h, std::vector<JoinStep>& out) const;
    void collect_sprime_steps(Vertex r, int h, std::vector<JoinStep>& out) const;

private:
    RootedTree tree_;
    std::vector<int> branch_height_;
    std::vector<std::vector<signed char>> tstar_memo_;  // [vertex][height]: -1 unknown
};

struct FamilyCertificate {
    FamilyTag tag;
    Vertex root = 0;                  // rooting the pieces refer to
    std::vector<Vertex> main_roots;
    std::vector<FamilyPiece> pieces;  // even: one piece at the center; odd: two sides, first holds `root`
    std::vector<JoinStep> steps;      // every join used by tstar parts, outermost first
};

FamilyCertificate recognize_family(const RootedTree& tree);

}  // namespace diminimal
