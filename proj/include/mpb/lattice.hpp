#pragma once

// Sublattices of the subspace lattice generated under sum and intersection,
// and the distributivity test on them.

#include "mpb/exactlin.hpp"
#include "mpb/family.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace mpb {

inline constexpr std::size_t kDefaultLatticeCap = 10000;

enum class Verdict { yes, no, indeterminate };

const char* to_string(Verdict v);

/// How an element entered the closure: as generator `lhs`, or as the sum or
/// intersection of elements `lhs` and `rhs` (indices into `elements`).
struct Provenance {
  enum class Op { generator, sum, meet };
  Op op;
  std::size_t lhs;
  std::size_t rhs;
};

struct LatticeClosure {
  std::vector<SubspaceBasis> generators;
  std::vector<SubspaceBasis> elements;
  std::vector<Provenance> provenance;
  bool complete = false;
  std::size_t cap = kDefaultLatticeCap;

  /// Index of the sum / intersection of two elements. Only meaningful on a
  /// complete closure, where every pair has been combined.
  std::size_t join(std::size_t a, std::size_t b) const;
  std::size_t meet(std::size_t a, std::size_t b) const;
  std::optional<std::size_t> find(const SubspaceBasis& s) const;

  // Lower-triangular tables: row i holds results for j <= i.
  std::vector<std::vector<std::size_t>> join_table;
  std::vector<std::vector<std::size_t>> meet_table;
};

/// Fixed-point closure of `gens` under sum and intersection, deduplicated by
/// canonical form. Stops with complete == false when a new element would
/// exceed `cap`.
LatticeClosure generate_lattice(const std::vector<SubspaceBasis>& gens, std::size_t cap = kDefaultLatticeCap);

struct DistributivityResult {
  Verdict verdict = Verdict::indeterminate;
  /// Element indices (a, b, c) with a ∩ (b + c) != (a ∩ b) + (a ∩ c).
  std::optional<std::array<std::size_t, 3>> witness;
};

DistributivityResult is_distributive(const LatticeClosure& l);

struct PieceLattice {
  std::size_t piece;
  LatticeClosure closure;
  /// Every closure element is a two-sided ideal of the piece.
  bool all_ideals = true;
  DistributivityResult distributivity;
};

struct DistributiveFamilyReport {
  Verdict verdict = Verdict::yes;
  /// Maps that fail to be surjective, as (i, j).
  std::vector<IndexPair> non_surjective;
  std::vector<PieceLattice> pieces;
};

/// Runs the kernel-lattice test inside every piece. Structural defects throw
/// InvalidFamily; surjectivity failures are part of the report.
DistributiveFamilyReport check_distributive_family(const GluingFamily& fam, std::size_t cap = kDefaultLatticeCap);

}  // namespace mpb
