#pragma once

// Re-presents B^π as the multi-pullback of the canonical family
//   B_i ≅ B^π / ker(B^π -> B_i)  ->  B^π / (ker(B^π -> B_i) + ker(B^π -> B_j)),
// which satisfies the cocycle condition.

#include "mpb/multipullback.hpp"

#include <array>
#include <optional>

namespace mpb {

class RepairRefused : public HypothesisError {
 public:
  RepairRefused(const std::string& what, std::optional<std::size_t> piece,
                std::optional<std::array<SubspaceBasis, 3>> witness)
      : HypothesisError(what), non_surjective_piece(piece), distributivity_witness(std::move(witness)) {}

  /// The first piece whose projection from B^π is not onto.
  std::optional<std::size_t> non_surjective_piece;
  /// Kernels (a, b, c) inside B^π with a ∩ (b + c) != (a ∩ b) + (a ∩ c).
  std::optional<std::array<SubspaceBasis, 3>> distributivity_witness;
};

struct RepairedFamily {
  /// Same labels and pieces (in their original coordinates); new overlaps
  /// and maps.
  GluingFamily family;
  MultiPullback original;
  CocycleReport cocycle;
  /// B^π -> multi-pullback of `family` is a bijection.
  bool comparison_bijective = false;
};

/// Throws RepairRefused when a projection B^π -> B_i is not surjective or the
/// projection kernels do not generate a distributive lattice.
RepairedFamily repair(const GluingFamily& fam, std::size_t cap = kDefaultLatticeCap);

}  // namespace mpb
