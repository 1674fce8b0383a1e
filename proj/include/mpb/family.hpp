#pragma once

// A finite family of homomorphisms pi^i_j : B_i -> B_ij = B_ji indexed by
// ordered pairs of distinct labels.

#include "mpb/algebra.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mpb {

using IndexPair = std::pair<std::size_t, std::size_t>;

struct GluingFamily {
  std::vector<std::string> labels;
  std::vector<AlgebraPtr> pieces;
  /// Keyed by (i, j) with i < j; both directed maps target the same object.
  std::map<IndexPair, AlgebraPtr> overlaps;
  /// pi^i_j keyed by (i, j), i != j.
  std::map<IndexPair, AlgebraHom> maps;

  std::size_t size() const { return labels.size(); }
  const AlgebraPtr& overlap(std::size_t i, std::size_t j) const;
  const AlgebraHom& map(std::size_t i, std::size_t j) const;
  std::size_t index_of(const std::string& label) const;
};

/// Malformed families: missing entries, shape errors, non-homomorphisms.
class InvalidFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A standing hypothesis (surjectivity, distributivity, a repair
/// precondition) does not hold.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FamilyIssue {
  enum class Kind { structure, algebra, hom, surjectivity };
  Kind kind;
  std::string message;
  /// The offending map (i, j) for hom and surjectivity issues.
  std::optional<IndexPair> map;
};

/// Every problem found, in a deterministic order; empty means valid.
std::vector<FamilyIssue> validate_family(const GluingFamily& fam);

/// Throws InvalidFamily for structural problems and HypothesisError for
/// non-surjective maps.
void require_valid(const GluingFamily& fam);

/// "pi^i_j" with the family's labels.
std::string map_name(const GluingFamily& fam, std::size_t i, std::size_t j);
std::string overlap_name(const GluingFamily& fam, std::size_t i, std::size_t j);

}  // namespace mpb
