#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diminimal/matrix.hpp"
#include "diminimal/rational.hpp"
#include "diminimal/tree.hpp"

namespace diminimal {

/// Candidate set C_k = {l_0 < ... < l_{2k+1}} with l_k = alpha, l_{k+1} = beta.
struct Ladder {
    int k = 0;
    Rational alpha;
    Rational beta;
    std::vector<Rational> values;

    const Rational& operator[](std::size_t i) const { return values.at(i); }
    /// delta_j = theta_j = (beta - alpha) / 2^j.
    Rational step(int j) const;
    /// y_k = (beta - alpha) / 2^(k-1): open upper end of the theta/delta range.
    Rational y() const;
};

/// C_1 = {2a - b, a, b, 2b - a}, then
/// C_{j+1} = {l_0 - d_j, l_0..l_{2j}, l_{2j+1} + d_j, l_{2j+1} + d_j + t_j}.
Ladder ladder(const Rational& alpha, const Rational& beta, int k);

enum class Side { max, min };

/// Squared weight shared by every edge from the core's root to a part's
/// root that makes y the largest (Side::max) or smallest eigenvalue of the
/// join. Requires y strictly beyond every block eigenvalue on that side.
Rational solve_root_weight(const WeightedTreeMatrix& core, std::span<const WeightedTreeMatrix> parts,
                           const Rational& y, Side side);

/// Block matrix on join(core tree, part trees), joint squared weights all
/// sq_delta. relabel, when given, receives the join's id maps.
WeightedTreeMatrix assemble(const WeightedTreeMatrix& core, std::span<const WeightedTreeMatrix> parts,
                            const Rational& sq_delta, std::vector<std::vector<Vertex>>* relabel = nullptr);

enum class Variant { M1, M2, M1_theta, M2_delta, family_S_prime, family_S_doubleprime };

std::string variant_name(Variant v);
Variant parse_variant(const std::string& text);

struct SpectrumEntry {
    Rational value;
    int multiplicity = 0;
    friend bool operator==(const SpectrumEntry&, const SpectrumEntry&) = default;
};

/// Which self-checks run during a construction. The final certificate check
/// (counts at every predicted value, multiplicities summing to n) always runs.
struct CheckOptions {
    bool block_spectra = true;  // verify the predicted spectrum of every intermediate block
    bool assembly = true;       // join invariants at every internal assembly
    bool strong = true;         // L-values and Parter increments of every tstar block
};

struct CheckStats {
    long blocks = 0;
    long block_spectrum_checks = 0;
    long assembly_checks = 0;
    long strong_checks = 0;
    long zero_child_checks = 0;  // zero-child rule observed at a Parter root
};

struct RealizationCertificate {
    WeightedTreeMatrix matrix;          // on the input tree's ids and root
    std::vector<SpectrumEntry> dspec;   // ascending, every multiplicity >= 1
    Variant variant = Variant::M1;
    Family family = Family::S;
    int diameter = 0;
    Rational alpha;
    Rational beta;
    std::optional<Rational> parameter;  // theta or delta
    CheckStats stats;
};

/// Realizes one of M1, M2, M1_theta, M2_delta on a tree whose root is a main
/// root and whose rooted form is a tstar piece of height ladder.k.
RealizationCertificate realize_variant(const RootedTree& tree, Variant variant, const Ladder& ladder,
                                       std::optional<Rational> parameter = std::nullopt, CheckOptions options = {});

RealizationCertificate realize_M1(const RootedTree& tree, const Ladder& ladder, CheckOptions options = {});
RealizationCertificate realize_M2(const RootedTree& tree, const Ladder& ladder, CheckOptions options = {});
RealizationCertificate realize_M1_theta(const RootedTree& tree, const Ladder& ladder, const Rational& theta,
                                        CheckOptions options = {});
RealizationCertificate realize_M2_delta(const RootedTree& tree, const Ladder& ladder, const Rational& delta,
                                        CheckOptions options = {});

/// A matrix with diameter + 1 distinct eigenvalues for any tree recognized
/// as S, S_prime or S_doubleprime (primed families need diameter >= 6). The
/// returned matrix keeps the input tree's root.
RealizationCertificate realize_family(const RootedTree& tree, const Rational& alpha, const Rational& beta,
                                      CheckOptions options = {});

/// realize_family with beta - alpha = 2^(ceil(d/2) - 1) (or the override,
/// which must be a positive multiple of it), so every eigenvalue is an integer.
RealizationCertificate realize_integral(const RootedTree& tree, const Rational& alpha,
                                        std::optional<Rational> beta_override = std::nullopt,
                                        CheckOptions options = {});

/// Exact check of a claimed distinct spectrum: every multiplicity matches and
/// they sum to n. Throws VerificationError naming the first mismatch.
void verify_spectrum(const WeightedTreeMatrix& m, std::span<const SpectrumEntry> dspec);

}  // namespace diminimal
