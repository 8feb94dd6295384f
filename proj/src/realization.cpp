#include "diminimal/realization.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include "diminimal/error.hpp"
#include "diminimal/locate.hpp"

namespace diminimal {

namespace {

std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

std::string ref_str(SubtreeRef ref) {
    return "(" + std::to_string(ref.root) + ", " + std::to_string(ref.height) + ")";
}

/// A realized piece: its matrix on local ids rooted at the piece root, the map
/// back to ids of the whole tree, and the predicted multiplicity of every
/// candidate value (zero for candidates the piece drops).
struct Block {
    WeightedTreeMatrix m;
    std::vector<Vertex> global;
    std::map<Rational, int> nominal;
    Vertex root() const { return m.tree().root(); }
};

std::set<Rational> keys(const std::map<Rational, int>& nominal) {
    std::set<Rational> out;
    for (const auto& [value, mult] : nominal) out.insert(value);
    return out;
}

std::vector<SpectrumEntry> positive_entries(const std::map<Rational, int>& nominal) {
    std::vector<SpectrumEntry> out;
    for (const auto& [value, mult] : nominal) {
        if (mult > 0) out.push_back({value, mult});
    }
    return out;
}

std::string set_str(const std::set<Rational>& values) {
    std::string s = "{";
    for (const Rational& v : values) s += (s.size() > 1 ? ", " : "") + v.str();
    return s + "}";
}

class Realizer {
public:
    Realizer(PieceStructure pieces, Rational alpha, Rational beta, CheckOptions options, CheckStats& stats)
        : pieces_(std::move(pieces)), alpha_(std::move(alpha)), beta_(std::move(beta)), options_(options),
          stats_(stats) {}

    const Ladder& ladder_at(int k) {
        auto it = ladders_.find(k);
        if (it == ladders_.end()) it = ladders_.emplace(k, ladder(alpha_, beta_, k)).first;
        return it->second;
    }

    Rational step(int j) const { return (beta_ - alpha_) * Rational::pow2(-j); }

    /// M1 / M2 / M1_theta / M2_delta on the tstar piece `ref` at level ref.height.
    const Block& tstar(SubtreeRef ref, Variant variant, const Rational& param) {
        const auto key = std::make_tuple(ref.root, ref.height, static_cast<int>(variant), param);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        const int k = ref.height;
        if (k < 1) throw InvalidInput("piece " + ref_str(ref) + " is too short for a ladder");
        const Ladder& c = ladder_at(k);
        const bool shifted = variant == Variant::M1_theta || variant == Variant::M2_delta;
        if (shifted && (param.sign() <= 0 || param >= c.y())) {
            throw InvalidInput(variant_name(variant) + " parameter " + param.str() + " is outside (0, " + c.y().str() +
                               ")");
        }
        const auto tall = pieces_.tall_children(ref.root, k);
        if (tall.empty()) throw InvalidInput("piece " + ref_str(ref) + " has no branch of height " + std::to_string(k - 1));

        Block block = k == 1 ? star(ref.root, tall, variant, param, c) : inductive(ref, tall, variant, param);
        check_shape(block, variant, param, c, tall.size(), ref);
        check_block_spectrum(block);
        if (options_.strong) check_strong(block, variant, param, c);
        ++stats_.blocks;
        return memo_.emplace(key, std::move(block)).first->second;
    }

    /// Core (r, k-1) as M1 at level k-1, tall branches as M1 at level k, the
    /// maximum pinned to the top of C_k. `ref` has height k + 1.
    Block sprime_max_side(SubtreeRef ref) {
        const int k = ref.height - 1;
        const Ladder& c = ladder_at(k);
        const Block& core = tstar({ref.root, k - 1}, Variant::M1, Rational());
        std::vector<const Block*> parts;
        for (Vertex t : pieces_.tall_children(ref.root, ref.height)) parts.push_back(&tstar({t, k}, Variant::M1, Rational()));
        Block block = join_blocks(core, parts, c[idx(2 * k + 1)], Side::max);
        std::set<Rational> expected(c.values.begin(), c.values.end());
        expected.insert(c[0] - step(k - 1));
        expect_keys(block, expected, "max side " + ref_str(ref));
        check_block_spectrum(block);
        return block;
    }

    /// Core (r, k-1) as M2_delta(delta_{k-1}), tall branches as M2 at level k,
    /// the minimum pinned to the bottom of C_k. `ref` has height k + 1.
    Block sprime_min_side(SubtreeRef ref) {
        const int k = ref.height - 1;
        const Ladder& c = ladder_at(k);
        const Block& core = tstar({ref.root, k - 1}, Variant::M2_delta, step(k - 1));
        std::vector<const Block*> parts;
        for (Vertex t : pieces_.tall_children(ref.root, ref.height)) parts.push_back(&tstar({t, k}, Variant::M2, Rational()));
        Block block = join_blocks(core, parts, c[0], Side::min);
        std::set<Rational> expected(c.values.begin(), c.values.end());
        expected.insert(c[idx(2 * k + 1)] + step(k - 1));
        expect_keys(block, expected, "min side " + ref_str(ref));
        check_block_spectrum(block);
        return block;
    }

    /// Core (r, k) as M1_theta(theta_k), tall branches as M2 at level k, the
    /// minimum pinned to the bottom of C_k. `ref` is a tstar piece of height k + 1.
    Block tstar_min_side(SubtreeRef ref) {
        const int k = ref.height - 1;
        const Ladder& c = ladder_at(k);
        const Block& core = tstar({ref.root, k}, Variant::M1_theta, step(k));
        std::vector<const Block*> parts;
        for (Vertex t : pieces_.tall_children(ref.root, ref.height)) parts.push_back(&tstar({t, k}, Variant::M2, Rational()));
        Block block = join_blocks(core, parts, c[0], Side::min);
        std::set<Rational> expected(c.values.begin(), c.values.end());
        expected.insert(c[idx(2 * k + 1)] + step(k));
        expect_keys(block, expected, "min side " + ref_str(ref));
        check_block_spectrum(block);
        return block;
    }

    /// Joins the two sides across the main edge, pinning the maximum one
    /// step delta_{k-1} above everything either side predicts.
    Block central_join(const Block& min_side, const Block& max_side, int k) {
        Rational top = min_side.nominal.rbegin()->first;
        top = std::max(top, max_side.nominal.rbegin()->first);
        Block block = join_blocks(min_side, {&max_side}, top + step(k - 1), Side::max);
        check_block_spectrum(block);
        return block;
    }

private:
    Block leaf(Vertex v, const Rational& value) const {
        RootedTree k1;
        return {WeightedTreeMatrix(k1, {value}, {}), {v}, {{value, 1}}};
    }

    /// Attaches parts to core with the shared weight that pins y.
    Block attach(const Block& core, const std::vector<const Block*>& parts, const Rational& y, Side side) const {
        std::vector<WeightedTreeMatrix> mats;
        mats.reserve(parts.size());
        for (const Block* p : parts) mats.push_back(p->m);
        const Rational sq = solve_root_weight(core.m, mats, y, side);
        std::vector<std::vector<Vertex>> relabel;
        Block out;
        out.m = assemble(core.m, mats, sq, &relabel);
        out.global.assign(out.m.size(), -1);
        for (std::size_t i = 0; i < core.global.size(); ++i) out.global[idx(relabel[0][i])] = core.global[i];
        for (std::size_t p = 0; p < parts.size(); ++p) {
            for (std::size_t i = 0; i < parts[p]->global.size(); ++i) {
                out.global[idx(relabel[p + 1][i])] = parts[p]->global[i];
            }
        }
        return out;
    }

    Block star(Vertex r, const std::vector<Vertex>& leaves, Variant variant, const Rational& param, const Ladder& c) {
        Rational root_value;
        Rational leaf_value;
        Rational y;
        Side side = Side::max;
        switch (variant) {
            case Variant::M1: root_value = alpha_, leaf_value = alpha_, y = beta_, side = Side::max; break;
            case Variant::M2: root_value = beta_, leaf_value = beta_, y = alpha_, side = Side::min; break;
            case Variant::M1_theta: root_value = alpha_ + param, leaf_value = alpha_, y = beta_, side = Side::max; break;
            case Variant::M2_delta: root_value = beta_ + param, leaf_value = beta_, y = alpha_, side = Side::min; break;
            default: throw InvalidInput("not a tstar variant");
        }
        (void)c;
        const Block core = leaf(r, root_value);
        std::vector<Block> leaf_blocks;
        for (Vertex v : leaves) leaf_blocks.push_back(leaf(v, leaf_value));
        std::vector<const Block*> parts;
        for (const Block& b : leaf_blocks) parts.push_back(&b);
        Block out = attach(core, parts, y, side);
        const int p = static_cast<int>(leaves.size());
        // the trace fixes the remaining extreme
        out.nominal[leaf_value] = p - 1;
        out.nominal[y] = 1;
        out.nominal[root_value + leaf_value - y] = 1;
        return out;
    }

    Block inductive(SubtreeRef ref, const std::vector<Vertex>& tall, Variant variant, const Rational& param) {
        const int k = ref.height;
        const Ladder& c = ladder_at(k);
        const Rational prev = step(k - 1);  // delta_{k-1} = theta_{k-1}
        Variant core_variant{};
        Rational core_param;
        Variant part_variant{};
        Rational part_param;
        Rational y;
        Side side = Side::max;
        switch (variant) {
            case Variant::M1:
                core_variant = Variant::M2, part_variant = Variant::M1;
                y = c[idx(2 * k)], side = Side::max;
                break;
            case Variant::M2:
                core_variant = Variant::M1_theta, core_param = prev;
                part_variant = Variant::M2_delta, part_param = prev;
                y = c[1], side = Side::min;
                break;
            case Variant::M1_theta:
                core_variant = Variant::M2_delta, core_param = param;
                part_variant = Variant::M1;
                y = c[idx(2 * k)], side = Side::max;
                break;
            case Variant::M2_delta:
                core_variant = Variant::M1_theta, core_param = prev + param;
                part_variant = Variant::M2_delta, part_param = prev;
                y = c[1], side = Side::min;
                break;
            default: throw InvalidInput("not a tstar variant");
        }
        const Block& core = tstar({ref.root, k - 1}, core_variant, core_param);
        std::vector<const Block*> parts;
        for (Vertex t : tall) parts.push_back(&tstar({t, k - 1}, part_variant, part_param));
        return join_blocks(core, parts, y, side);
    }

    /// Two-block join: the candidate sets of core and parts
    /// differ in exactly their overall minimum a and maximum b. Shared values
    /// add up, a or b gets p - 1 when it comes from the parts and vanishes
    /// when it comes from the core, and the new extremes sum to a + b.
    Block join_blocks(const Block& core, const std::vector<const Block*>& parts, const Rational& y, Side side) {
        const std::set<Rational> core_keys = keys(core.nominal);
        const std::set<Rational> part_keys = keys(parts.front()->nominal);
        for (const Block* p : parts) {
            if (keys(p->nominal) != part_keys) throw VerificationError("parts of one join predict different candidate sets");
        }
        std::set<Rational> only_core;
        std::set<Rational> only_parts;
        std::set<Rational> shared;
        for (const Rational& v : core_keys) (part_keys.contains(v) ? shared : only_core).insert(v);
        for (const Rational& v : part_keys) {
            if (!core_keys.contains(v)) only_parts.insert(v);
        }
        std::set<Rational> diff = only_core;
        diff.insert(only_parts.begin(), only_parts.end());
        std::set<Rational> all = core_keys;
        all.insert(part_keys.begin(), part_keys.end());
        if (diff.size() != 2 || *diff.begin() != *all.begin() || *diff.rbegin() != *all.rbegin()) {
            throw VerificationError("candidate sets " + set_str(core_keys) + " and " + set_str(part_keys) +
                                    " do not differ in exactly their extremes");
        }
        const Rational a = *diff.begin();
        const Rational b = *diff.rbegin();
        const Rational other = a + b - y;
        const int p = static_cast<int>(parts.size());

        Block out = attach(core, parts, y, side);
        for (const Rational& v : shared) {
            int mult = core.nominal.at(v);
            for (const Block* part : parts) mult += part->nominal.at(v);
            out.nominal[v] = mult;
        }
        for (const Rational& v : only_parts) out.nominal[v] = p - 1;
        if (out.nominal.contains(y) || out.nominal.contains(other)) {
            throw VerificationError("pinned extreme " + y.str() + " collides with a candidate value");
        }
        out.nominal[y] = 1;
        out.nominal[other] = 1;
        const auto [lo, hi] = side == Side::max ? std::pair{other, y} : std::pair{y, other};
        if (out.nominal.begin()->first != lo || out.nominal.rbegin()->first != hi) {
            throw VerificationError("pinned extremes " + lo.str() + ", " + hi.str() + " do not bound the join");
        }
        if (options_.assembly) check_assembly(out, core, parts, shared, only_core, only_parts, lo, hi);
        return out;
    }

    void check_assembly(const Block& out, const Block& core, const std::vector<const Block*>& parts,
                        const std::set<Rational>& shared, const std::set<Rational>& only_core,
                        const std::set<Rational>& only_parts, const Rational& lo, const Rational& hi) {
        const int n = static_cast<int>(out.m.size());
        const int p = static_cast<int>(parts.size());
        auto fail = [](const std::string& what) { throw VerificationError("assembly check failed: " + what); };
        if (counts_at(out.m, lo) != Counts{0, 1, n - 1}) fail("minimum " + lo.str() + " is not a simple extreme");
        if (counts_at(out.m, hi) != Counts{n - 1, 1, 0}) fail("maximum " + hi.str() + " is not a simple extreme");
        // lo + hi == a + b holds by construction of `other`; the counts above
        // confirm both are the actual extremes.
        for (const Rational& v : shared) {
            int expected = multiplicity(core.m, v);
            for (const Block* part : parts) expected += multiplicity(part->m, v);
            if (multiplicity(out.m, v) != expected) fail("multiplicity at " + v.str() + " is not additive");
        }
        for (const Rational& v : only_parts) {
            if (multiplicity(out.m, v) != p - 1) fail("multiplicity at " + v.str() + " is not p - 1");
        }
        for (const Rational& v : only_core) {
            if (multiplicity(out.m, v) != 0) fail(v.str() + " survives from the core");
        }
        ++stats_.assembly_checks;
    }

    void expect_keys(const Block& block, const std::set<Rational>& expected, const std::string& what) const {
        const std::set<Rational> got = keys(block.nominal);
        if (got != expected) {
            throw VerificationError(what + ": candidate set " + set_str(got) + " differs from " + set_str(expected));
        }
    }

    /// Candidate set and dropped value dictated by the variant.
    void check_shape(const Block& block, Variant variant, const Rational& param, const Ladder& c, std::size_t p,
                     SubtreeRef ref) const {
        const int k = c.k;
        std::set<Rational> expected;
        Rational dropped;
        switch (variant) {
            case Variant::M1:
                expected.insert(c.values.begin(), c.values.begin() + 2 * k + 1);
                dropped = c[1];
                break;
            case Variant::M2:
                expected.insert(c.values.begin() + 1, c.values.end());
                dropped = c[idx(2 * k)];
                break;
            case Variant::M1_theta:
                expected.insert(c.values.begin() + 1, c.values.begin() + 2 * k + 1);
                expected.insert(c[0] + param);
                dropped = c[1];
                break;
            case Variant::M2_delta:
                expected.insert(c.values.begin() + 1, c.values.begin() + 2 * k + 1);
                expected.insert(c[idx(2 * k + 1)] + param);
                dropped = c[idx(2 * k)];
                break;
            default: break;
        }
        const std::string what = variant_name(variant) + " on " + ref_str(ref);
        expect_keys(block, expected, what);
        // a single tall branch means odd diameter: exactly one candidate is absent
        for (const auto& [value, mult] : block.nominal) {
            const bool absent = p == 1 && value == dropped;
            if ((mult == 0) != absent) {
                throw VerificationError(what + ": unexpected multiplicity " + std::to_string(mult) + " at " + value.str());
            }
        }
    }

    void check_block_spectrum(const Block& block) {
        if (!options_.block_spectra) return;
        const auto dspec = positive_entries(block.nominal);
        verify_spectrum(block.m, dspec);
        Rational weighted;
        for (const SpectrumEntry& e : dspec) weighted += e.value * Rational(e.multiplicity);
        if (weighted != trace(block.m)) throw VerificationError("predicted spectrum does not sum to the trace");
        ++stats_.block_spectrum_checks;
    }

    void check_strong(const Block& block, Variant variant, const Rational& param, const Ladder& c) {
        const int k = c.k;
        const Vertex root = block.root();
        std::vector<Rational> at_root;  // L = 0 expected
        std::vector<Rational> parter;   // Parter increment at the root expected
        switch (variant) {
            case Variant::M1:
                for (int i = 0; i <= k; ++i) at_root.push_back(c[idx(2 * i)]);
                for (int i = 1; i <= k; ++i) parter.push_back(c[idx(2 * i - 1)]);
                break;
            case Variant::M2:
                for (int i = 0; i <= k; ++i) at_root.push_back(c[idx(2 * i + 1)]);
                for (int i = 1; i <= k; ++i) parter.push_back(c[idx(2 * i)]);
                break;
            case Variant::M1_theta:
                at_root.push_back(c[0] + param);
                for (int i = 1; i <= k; ++i) at_root.push_back(c[idx(2 * i)]);
                for (int i = 1; i <= k; ++i) parter.push_back(c[idx(2 * i - 1)]);
                break;
            case Variant::M2_delta:
                at_root.push_back(c[idx(2 * k + 1)] + param);
                for (int i = 1; i <= k; ++i) at_root.push_back(c[idx(2 * i - 1)]);
                for (int i = 1; i <= k; ++i) parter.push_back(c[idx(2 * i)]);
                break;
            default: break;
        }
        const std::string what = variant_name(variant) + " at level " + std::to_string(k);
        for (const Rational& v : at_root) {
            if (L_value(block.m, v, root) != 0) throw VerificationError(what + ": L(" + v.str() + ") != 0");
            ++stats_.strong_checks;
        }
        for (const Rational& v : parter) {
            if (!is_parter(block.m, root, v)) {
                throw VerificationError(what + ": removing the root does not raise the multiplicity of " + v.str());
            }
            ++stats_.strong_checks;
            if (diagonalize(block.m, -v, root).zero_child[idx(root)] < 0) {
                throw VerificationError(what + ": no zero child at the root for " + v.str());
            }
            ++stats_.zero_child_checks;
        }
    }

    PieceStructure pieces_;
    Rational alpha_;
    Rational beta_;
    CheckOptions options_;
    CheckStats& stats_;
    std::map<int, Ladder> ladders_;
    std::map<std::tuple<Vertex, int, int, Rational>, Block> memo_;
};

/// Transfers a block covering the whole tree onto the tree's own ids.
WeightedTreeMatrix on_tree(const Block& block, const RootedTree& tree) {
    if (block.m.size() != tree.size()) throw VerificationError("construction does not cover the tree");
    std::vector<Rational> diag(tree.size());
    for (std::size_t i = 0; i < block.global.size(); ++i) diag[idx(block.global[i])] = block.m.diag()[i];
    std::vector<std::pair<Edge, Rational>> weighted;
    const auto& edges = block.m.tree().edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        weighted.emplace_back(Edge::canonical(block.global[idx(edges[i].u)], block.global[idx(edges[i].v)]),
                              block.m.sq_edge()[i]);
    }
    std::sort(weighted.begin(), weighted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Rational> sq;
    for (std::size_t i = 0; i < weighted.size(); ++i) {
        if (weighted[i].first != tree.edges()[i]) throw VerificationError("construction does not match the tree's edges");
        sq.push_back(weighted[i].second);
    }
    return WeightedTreeMatrix(tree, std::move(diag), std::move(sq));
}

RealizationCertificate finish(const Block& block, const RootedTree& tree, CheckStats stats) {
    RealizationCertificate cert;
    cert.matrix = on_tree(block, tree);
    cert.dspec = positive_entries(block.nominal);
    verify_spectrum(cert.matrix, cert.dspec);
    cert.stats = stats;
    return cert;
}

}  // namespace

Rational Ladder::step(int j) const { return (beta - alpha) * Rational::pow2(-j); }

Rational Ladder::y() const { return (beta - alpha) * Rational::pow2(1 - k); }

Ladder ladder(const Rational& alpha, const Rational& beta, int k) {
    if (!(alpha < beta)) throw InvalidInput("ladder needs alpha < beta, got " + alpha.str() + " >= " + beta.str());
    if (k < 1) throw InvalidInput("ladder level must be positive");
    Ladder out;
    out.k = 1;
    out.alpha = alpha;
    out.beta = beta;
    out.values = {alpha + alpha - beta, alpha, beta, beta + beta - alpha};
    while (out.k < k) {
        const int j = out.k;
        const Rational d = out.step(j);
        std::vector<Rational> next;
        next.reserve(out.values.size() + 2);
        next.push_back(out.values.front() - d);
        next.insert(next.end(), out.values.begin(), out.values.end() - 1);
        const Rational top = out.values.back() + d;
        next.push_back(top);
        next.push_back(top + d);
        out.values = std::move(next);
        ++out.k;
    }
    return out;
}

Rational solve_root_weight(const WeightedTreeMatrix& core, std::span<const WeightedTreeMatrix> parts,
                           const Rational& y, Side side) {
    if (parts.empty()) throw InvalidInput("root weight needs at least one part");
    const int want = side == Side::max ? -1 : 1;
    auto root_value = [&](const WeightedTreeMatrix& block) {
        const DiagOutcome run = diagonalize(block, -y);
        for (const Rational& v : run.final_values) {
            if (v.sign() != want) {
                throw InvalidInput(y.str() + " is not strictly " + (side == Side::max ? "above" : "below") +
                                   " the spectrum of every block");
            }
        }
        return run.final_values[idx(block.tree().root())];
    };
    const Rational core_root = root_value(core);
    Rational inverse_sum;
    for (const WeightedTreeMatrix& part : parts) inverse_sum += root_value(part).reciprocal();
    return core_root / inverse_sum;
}

WeightedTreeMatrix assemble(const WeightedTreeMatrix& core, std::span<const WeightedTreeMatrix> parts,
                            const Rational& sq_delta, std::vector<std::vector<Vertex>>* relabel) {
    if (sq_delta.sign() <= 0) throw InvalidInput("joint squared weight must be positive");
    if (parts.empty()) throw InvalidInput("assembly needs at least one part");
    std::vector<RootedTree> trees;
    trees.reserve(parts.size());
    for (const WeightedTreeMatrix& p : parts) trees.push_back(p.tree());
    JoinResult joined = join(core.tree(), trees);

    std::vector<Rational> diag(joined.tree.size());
    std::vector<std::pair<Edge, Rational>> weighted;
    auto place = [&](const WeightedTreeMatrix& block, const std::vector<Vertex>& map) {
        for (std::size_t i = 0; i < block.size(); ++i) diag[idx(map[i])] = block.diag()[i];
        const auto& edges = block.tree().edges();
        for (std::size_t i = 0; i < edges.size(); ++i) {
            weighted.emplace_back(Edge::canonical(map[idx(edges[i].u)], map[idx(edges[i].v)]), block.sq_edge()[i]);
        }
    };
    place(core, joined.relabel[0]);
    const Vertex core_root = joined.relabel[0][idx(core.tree().root())];
    for (std::size_t p = 0; p < parts.size(); ++p) {
        place(parts[p], joined.relabel[p + 1]);
        weighted.emplace_back(Edge::canonical(core_root, joined.relabel[p + 1][idx(parts[p].tree().root())]), sq_delta);
    }
    std::sort(weighted.begin(), weighted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Rational> sq;
    sq.reserve(weighted.size());
    for (auto& [e, w] : weighted) sq.push_back(std::move(w));
    if (relabel) *relabel = joined.relabel;
    return WeightedTreeMatrix(std::move(joined.tree), std::move(diag), std::move(sq));
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::M1: return "M1";
        case Variant::M2: return "M2";
        case Variant::M1_theta: return "M1_theta";
        case Variant::M2_delta: return "M2_delta";
        case Variant::family_S_prime: return "family_S_prime";
        case Variant::family_S_doubleprime: return "family_S_doubleprime";
    }
    return "M1";
}

Variant parse_variant(const std::string& text) {
    for (Variant v : {Variant::M1, Variant::M2, Variant::M1_theta, Variant::M2_delta, Variant::family_S_prime,
                      Variant::family_S_doubleprime}) {
        if (variant_name(v) == text) return v;
    }
    throw InvalidInput("unknown variant '" + text + "'");
}

void verify_spectrum(const WeightedTreeMatrix& m, std::span<const SpectrumEntry> dspec) {
    long total = 0;
    for (const SpectrumEntry& e : dspec) {
        const int got = multiplicity(m, e.value);
        if (got != e.multiplicity) {
            throw VerificationError("multiplicity at " + e.value.str() + " is " + std::to_string(got) + ", expected " +
                                    std::to_string(e.multiplicity));
        }
        total += got;
    }
    if (total != static_cast<long>(m.size())) {
        throw VerificationError("multiplicities sum to " + std::to_string(total) + " on " + std::to_string(m.size()) +
                                " vertices");
    }
}

RealizationCertificate realize_variant(const RootedTree& tree, Variant variant, const Ladder& ladder,
                                       std::optional<Rational> parameter, CheckOptions options) {
    const bool shifted = variant == Variant::M1_theta || variant == Variant::M2_delta;
    if (variant == Variant::family_S_prime || variant == Variant::family_S_doubleprime) {
        throw InvalidInput("realize_variant handles M1, M2, M1_theta and M2_delta only");
    }
    if (shifted != parameter.has_value()) {
        throw InvalidInput(variant_name(variant) + (shifted ? " needs a parameter" : " takes no parameter"));
    }
    const auto roots = main_roots(tree);
    if (std::find(roots.begin(), roots.end(), tree.root()) == roots.end()) {
        throw InvalidInput("tree must be rooted at a main root");
    }
    if (height(tree) != ladder.k) {
        throw InvalidInput("tree height " + std::to_string(height(tree)) + " does not match ladder level " +
                           std::to_string(ladder.k));
    }
    PieceStructure pieces(tree);
    if (!pieces.is_tstar(tree.root(), ladder.k)) throw InvalidInput("tree is not in the tstar class at this rooting");

    CheckStats stats;
    Realizer realizer(std::move(pieces), ladder.alpha, ladder.beta, options, stats);
    const Block& block = realizer.tstar({tree.root(), ladder.k}, variant, parameter.value_or(Rational()));
    RealizationCertificate cert = finish(block, tree, stats);
    cert.variant = variant;
    cert.family = Family::S;
    cert.diameter = diameter(tree);
    cert.alpha = ladder.alpha;
    cert.beta = ladder.beta;
    cert.parameter = parameter;
    return cert;
}

RealizationCertificate realize_M1(const RootedTree& tree, const Ladder& ladder, CheckOptions options) {
    return realize_variant(tree, Variant::M1, ladder, std::nullopt, options);
}

RealizationCertificate realize_M2(const RootedTree& tree, const Ladder& ladder, CheckOptions options) {
    return realize_variant(tree, Variant::M2, ladder, std::nullopt, options);
}

RealizationCertificate realize_M1_theta(const RootedTree& tree, const Ladder& ladder, const Rational& theta,
                                        CheckOptions options) {
    return realize_variant(tree, Variant::M1_theta, ladder, theta, options);
}

RealizationCertificate realize_M2_delta(const RootedTree& tree, const Ladder& ladder, const Rational& delta,
                                        CheckOptions options) {
    return realize_variant(tree, Variant::M2_delta, ladder, delta, options);
}

RealizationCertificate realize_family(const RootedTree& tree, const Rational& alpha, const Rational& beta,
                                      CheckOptions options) {
    if (!(alpha < beta)) throw InvalidInput("need alpha < beta, got " + alpha.str() + " >= " + beta.str());
    const FamilyCertificate shape = recognize_family(tree);
    const int d = shape.tag.diameter;
    if (shape.tag.family == Family::unsupported) throw InvalidInput("unsupported family");
    if (d < 1) throw InvalidInput("diameter must be at least 1");
    if (shape.tag.family != Family::S && d < 6) {
        throw InvalidInput(family_name(shape.tag.family) + " realization needs diameter >= 6, got " + std::to_string(d));
    }

    CheckStats stats;
    Realizer realizer(PieceStructure(tree.rerooted(shape.root)), alpha, beta, options, stats);
    Variant variant = Variant::M1;
    std::optional<Block> top;
    if (shape.tag.family == Family::S) {
        top = realizer.tstar({shape.root, (d + 1) / 2}, Variant::M1, Rational());
    } else if (d % 2 == 0) {
        variant = Variant::family_S_prime;
        top = realizer.sprime_max_side(shape.pieces.front().ref);
    } else {
        const int k = (d - 3) / 2;
        const FamilyPiece& first = shape.pieces[0];
        const FamilyPiece& second = shape.pieces[1];
        if (shape.tag.family == Family::S_prime) {
            variant = Variant::family_S_prime;
            const Block max_side = realizer.sprime_max_side(first.ref);
            const Block min_side = realizer.sprime_min_side(second.ref);
            top = realizer.central_join(min_side, max_side, k);
        } else {
            variant = Variant::family_S_doubleprime;
            const FamilyPiece& sp = first.kind == PieceKind::sprime ? first : second;
            const FamilyPiece& ts = first.kind == PieceKind::sprime ? second : first;
            const Block max_side = realizer.sprime_max_side(sp.ref);
            const Block min_side = realizer.tstar_min_side(ts.ref);
            top = realizer.central_join(min_side, max_side, k);
        }
    }

    RealizationCertificate cert = finish(*top, tree, stats);
    if (static_cast<int>(cert.dspec.size()) != d + 1) {
        throw VerificationError("realization has " + std::to_string(cert.dspec.size()) + " distinct eigenvalues, expected " +
                                std::to_string(d + 1));
    }
    cert.variant = variant;
    cert.family = shape.tag.family;
    cert.diameter = d;
    cert.alpha = alpha;
    cert.beta = beta;
    return cert;
}

RealizationCertificate realize_integral(const RootedTree& tree, const Rational& alpha,
                                        std::optional<Rational> beta_override, CheckOptions options) {
    if (!alpha.is_integer()) throw InvalidInput("integral mode needs an integer alpha, got " + alpha.str());
    const int d = diameter(tree);
    if (d < 1) throw InvalidInput("diameter must be at least 1");
    const Rational unit = Rational::pow2((d + 1) / 2 - 1);
    const Rational beta = beta_override.value_or(alpha + unit);
    const Rational ratio = (beta - alpha) / unit;
    if (ratio.sign() <= 0 || !ratio.is_integer()) {
        throw InvalidInput("beta - alpha must be a positive multiple of " + unit.str() + ", got " + (beta - alpha).str());
    }
    RealizationCertificate cert = realize_family(tree, alpha, beta, options);
    for (const SpectrumEntry& e : cert.dspec) {
        if (!e.value.is_integer()) throw VerificationError("non-integral eigenvalue " + e.value.str());
    }
    return cert;
}

}  // namespace diminimal
