#pragma once

// Gluing of finite point sets along pairwise identifications, the embedding
// diagnostics for pieces and partial gluings, and the passage to function
// algebras. Topology is trivialized: closed subspaces are arbitrary subsets
// and homeomorphisms are bijections.

#include "mpb/family.hpp"
#include "mpb/multipullback.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mpb {

/// A point of the disjoint union: (piece, index within the piece).
using PointRef = std::pair<std::size_t, std::size_t>;

struct FiniteGluingSpec {
  std::vector<std::string> labels;
  /// Point labels of each X_i.
  std::vector<std::vector<std::string>> spaces;
  /// Keyed by (i, j) with i < j: matched points (x in X_i, y in X_j). The
  /// order of the pairs fixes the coordinates of B_ij after dualizing.
  std::map<IndexPair, std::vector<std::pair<std::size_t, std::size_t>>> identifications;

  std::size_t size() const { return labels.size(); }
  std::size_t index_of(const std::string& label) const;
};

class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws InvalidSpec unless every identification is a bijection between
/// subsets of the stated spaces.
void validate_spec(const FiniteGluingSpec& spec);

struct GluedSpace {
  IndexSet over;
  /// Equivalence classes, each sorted; classes ordered by their first point.
  std::vector<std::vector<PointRef>> classes;
  /// class_of.at(piece)[x] is the class of point x of that piece.
  std::map<std::size_t, std::vector<std::size_t>> class_of;
  /// Number of successful union operations.
  std::size_t merges = 0;
};

GluedSpace glue(const FiniteGluingSpec& spec, const IndexSet& k);

struct EmbeddingCheck {
  IndexSet k;
  IndexSet l;
  bool injective = true;
  /// Pairs of distinct classes of glue(K) that meet in glue(L).
  std::vector<std::pair<std::size_t, std::size_t>> merged;
};

/// Injectivity of the canonical map glue(K) -> glue(L), K ⊆ L.
EmbeddingCheck check_embedding(const FiniteGluingSpec& spec, const IndexSet& k, const IndexSet& l);

/// Function algebras Q^{X_i}, overlaps Q^{Y_ij}, restriction maps.
GluingFamily dualize(const FiniteGluingSpec& spec);

struct DualityReport {
  bool consistent = true;
  std::size_t pullback_dim = 0;
  std::size_t class_count = 0;
  /// One line per mismatch between the two sides.
  std::vector<std::string> mismatches;
};

DualityReport duality_check(const FiniteGluingSpec& spec);

// --- fixtures --------------------------------------------------------------

inline constexpr std::size_t kDefaultChainLength = 3;

/// Point labels of a chain discretizing [-1, 1] with `length` >= 2 points.
std::vector<std::string> chain_points(std::size_t length);

/// Three intervals glued as in T_*: 1_1~1_2, 1_1~1_3, -1_2~1_3, 1_2~-1_3.
FiniteGluingSpec tstar_spec(std::size_t chain_length = kDefaultChainLength);
/// T_∘ with 1_1~1_2, 1_1~1_3, -1_2~-1_3.
FiniteGluingSpec tcirc_a_spec(std::size_t chain_length = kDefaultChainLength);
/// T_∘ with 1_1~1_2, 1_1~1_3 and both ends of I_2, I_3 matched.
FiniteGluingSpec tcirc_c_spec(std::size_t chain_length = kDefaultChainLength);

/// "tstar", "tcirc-a", "tcirc-c"; throws std::out_of_range otherwise.
FiniteGluingSpec gluing_fixture(const std::string& name, std::size_t chain_length = kDefaultChainLength);
/// "example1", "example2", "example3": dualized tstar, tcirc-a, tcirc-c.
GluingFamily family_fixture(const std::string& name, std::size_t chain_length = kDefaultChainLength);

struct RandomSpecParams {
  std::size_t min_pieces = 1;
  std::size_t max_pieces = 6;
  std::size_t min_points = 1;
  std::size_t max_points = 12;
  /// Chance, in percent, that a pair of pieces is identified at all.
  unsigned pair_percent = 60;
  std::size_t max_overlap = 4;
};

/// Deterministic for a fixed seed on every platform (only raw mt19937_64
/// output is used).
FiniteGluingSpec random_spec(std::uint64_t seed, const RandomSpecParams& params = {});

}  // namespace mpb
