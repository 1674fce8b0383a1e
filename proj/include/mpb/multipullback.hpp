#pragma once

// Multi-pullbacks of a gluing family, the cocycle condition, and the two
// extension properties it is equivalent to for distributive families.

#include "mpb/algebra.hpp"
#include "mpb/family.hpp"
#include "mpb/lattice.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mpb {

/// Sorted, duplicate-free subset of a family's index positions.
using IndexSet = std::vector<std::size_t>;

inline constexpr std::size_t kDefaultMaxIndexCount = 8;

IndexSet all_indices(const GluingFamily& fam);
std::string describe(const GluingFamily& fam, const IndexSet& k);

/// The pullback over K as a bare subspace of the direct sum, without the
/// algebra structure. This is what the extension checks compare.
struct PullbackSpace {
  IndexSet over;
  /// offsets[t] is where the block of B_{over[t]} starts in the direct sum.
  std::vector<std::size_t> offsets;
  std::size_t ambient_dim = 0;
  SubspaceBasis subspace;

  std::size_t block_of(std::size_t piece) const;
};

PullbackSpace pullback_space(const GluingFamily& fam, const IndexSet& k);

/// Image of the pullback under the coordinate projection onto the blocks of
/// `onto`, which must be a subset of `p.over`.
SubspaceBasis project_components(const GluingFamily& fam, const PullbackSpace& p, const IndexSet& onto);

struct MultiPullback {
  PullbackSpace space;
  /// Componentwise product restricted to the subspace, in the coordinates of
  /// the subspace's RREF basis.
  AlgebraPtr algebra;
  /// Coordinate maps B^π -> B_i, one per member of `space.over`.
  std::vector<AlgebraHom> projections;

  const AlgebraHom& projection(std::size_t piece) const { return projections.at(space.block_of(piece)); }
};

/// Validates the family, then builds B^π over K together with its algebra.
/// The unit tuple and closure under product are verified on every build.
MultiPullback build_pullback(const GluingFamily& fam, const IndexSet& k);

struct ProjectionImage {
  bool surjective = false;
  SubspaceBasis image;
};

ProjectionImage projection_surjective(const MultiPullback& p, std::size_t piece);

/// One instance of an extension question: does every compatible tuple over
/// `base` extend to a compatible tuple over base ∪ {extension}?
struct ExtensionCheck {
  IndexSet base;
  std::size_t extension = 0;
  bool extends = true;
  /// Compatible tuples over `base`.
  SubspaceBasis compatible;
  /// The subset of those that extend.
  SubspaceBasis extendable;
  /// A compatible tuple that does not extend, in direct-sum coordinates of
  /// `base`; present iff extends is false.
  std::optional<VectorQ> witness;
};

/// Pairs {i, j} extended by a third index k, for every unordered triple and
/// every choice of k; ordered by (i, j, k).
std::vector<ExtensionCheck> check_condition3(const GluingFamily& fam);

/// Every nonempty proper K and every k outside it. Throws std::length_error
/// when the index set is larger than `max_indices`.
std::vector<ExtensionCheck> check_condition2(const GluingFamily& fam, std::size_t max_indices = kDefaultMaxIndexCount);

/// Whether `tuple` (direct-sum coordinates over `base`) is compatible and
/// admits some b_k making it compatible over base ∪ {k}.
bool tuple_is_compatible(const GluingFamily& fam, const IndexSet& base, const VectorQ& tuple);
bool tuple_extends(const GluingFamily& fam, const IndexSet& base, std::size_t k, const VectorQ& tuple);

/// Quotient data attached to an ordered triple (i, j, k) of distinct indices.
struct TripleQuotientData {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  /// B_i -> B^i_jk = B_i / (ker π^i_j + ker π^i_k).
  QuotientAlgebra bracket;
  /// π^i_j(ker π^i_k), an ideal of B_ij.
  SubspaceBasis pushed_kernel;
  /// B_ij -> B_ij / π^i_j(ker π^i_k).
  QuotientAlgebra overlap_quotient;
  /// π^ij_k : B^i_jk -> B_ij / π^i_j(ker π^i_k) and its inverse.
  MatrixQ iso;
  MatrixQ iso_inverse;
};

TripleQuotientData build_triple_quotients(const GluingFamily& fam, std::size_t i, std::size_t j, std::size_t k);

/// φ^ij_k = (π^ij_k)^-1 ∘ π^ji_k : B^j_ik -> B^i_jk. Throws std::domain_error
/// when π^i_j(ker π^i_k) != π^j_i(ker π^j_k), where the composite is undefined.
MatrixQ phi(const TripleQuotientData& ijk, const TripleQuotientData& jik);

struct KernelCondition {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  bool holds = false;
  SubspaceBasis lhs;  // π^i_j(ker π^i_k)
  SubspaceBasis rhs;  // π^j_i(ker π^j_k)
};

struct CompatibilityCondition {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  /// Empty when one of the three φ maps involved is undefined.
  std::optional<bool> holds;
  MatrixQ lhs;  // φ^ik_j
  MatrixQ rhs;  // φ^ij_k ∘ φ^jk_i
};

struct CocycleReport {
  std::vector<KernelCondition> condition1;
  std::vector<CompatibilityCondition> condition2;
  bool overall = false;
};

/// Both clauses over all ordered triples of distinct indices.
CocycleReport check_cocycle(const GluingFamily& fam);

struct TheoremReport {
  DistributiveFamilyReport hypothesis;
  CocycleReport cocycle;
  std::vector<ExtensionCheck> condition2;
  std::vector<ExtensionCheck> condition3;
  bool cocycle_holds = false;
  bool condition2_holds = false;
  bool condition3_holds = false;
  /// The three verdicts agree; false signals a defect in this library.
  bool consistent = false;
};

bool all_extend(const std::vector<ExtensionCheck>& checks);

/// Throws HypothesisError unless the family is distributive.
TheoremReport check_theorem_equivalence(const GluingFamily& fam, std::size_t cap = kDefaultLatticeCap,
                                        std::size_t max_indices = kDefaultMaxIndexCount);

}  // namespace mpb
