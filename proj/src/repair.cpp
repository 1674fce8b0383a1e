#include "mpb/repair.hpp"

#include "mpb/lattice.hpp"

#include <stdexcept>

namespace mpb {

namespace {

// A linear right inverse of a surjective map, built through the quotient
// chart of its kernel.
MatrixQ right_inverse(const MatrixQ& surjection) {
  const QuotientChart chart = quotient(surjection.cols(), kernel(surjection));
  return chart.section * inverse(surjection * chart.section);
}

}  // namespace

RepairedFamily repair(const GluingFamily& fam, std::size_t cap) {
  RepairedFamily out;
  out.original = build_pullback(fam, all_indices(fam));
  const MultiPullback& bp = out.original;
  const std::size_t n = fam.size();

  for (std::size_t i = 0; i < n; ++i) {
    if (!projection_surjective(bp, i).surjective) {
      throw RepairRefused("repair refused: projection B^π -> B_" + fam.labels[i] + " is not surjective", i, std::nullopt);
    }
  }
  std::vector<SubspaceBasis> kernels;
  for (std::size_t i = 0; i < n; ++i) kernels.push_back(kernel_ideal(bp.projection(i)).subspace);

  const LatticeClosure closure = generate_lattice(kernels, cap);
  const DistributivityResult dist = is_distributive(closure);
  if (dist.verdict == Verdict::indeterminate) {
    throw RepairRefused("repair refused: kernel lattice in B^π exceeded the closure cap of " + std::to_string(cap),
                        std::nullopt, std::nullopt);
  }
  if (dist.verdict == Verdict::no) {
    const auto& [a, b, c] = *dist.witness;
    throw RepairRefused("repair refused: projection kernels in B^π do not generate a distributive lattice",
                        std::nullopt, std::array<SubspaceBasis, 3>{closure.elements[a], closure.elements[b], closure.elements[c]});
  }

  std::vector<MatrixQ> sections;
  for (std::size_t i = 0; i < n; ++i) sections.push_back(right_inverse(bp.projection(i).matrix));

  GluingFamily& rf = out.family;
  rf.labels = fam.labels;
  rf.pieces = fam.pieces;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      QuotientAlgebra q = quotient_algebra(bp.algebra, sum(kernels[i], kernels[j]),
                                           "B'_" + fam.labels[i] + fam.labels[j]);
      rf.overlaps.emplace(IndexPair{i, j}, q.algebra);
      // ker(B^π -> B_i) lies in the ideal, so the result does not depend on
      // the choice of section.
      rf.maps.emplace(IndexPair{i, j}, AlgebraHom(fam.pieces[i], q.algebra, q.projection.matrix * sections[i]));
      rf.maps.emplace(IndexPair{j, i}, AlgebraHom(fam.pieces[j], q.algebra, q.projection.matrix * sections[j]));
    }
  }

  require_valid(rf);
  out.cocycle = check_cocycle(rf);
  if (!out.cocycle.overall) throw std::logic_error("repair: re-presented family fails the cocycle condition");

  // Pieces keep their coordinates, so the comparison map is the identity on
  // direct-sum coordinates and B^π sits inside the new pullback.
  const PullbackSpace repaired = pullback_space(rf, all_indices(rf));
  out.comparison_bijective = repaired.subspace == bp.space.subspace;
  if (!out.comparison_bijective) throw std::logic_error("repair: B^π is not the multi-pullback of the re-presented family");
  return out;
}

}  // namespace mpb
