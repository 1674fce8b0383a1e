#pragma once

// Hand-rolled generators shared by the property tests and the acceptance
// binary. Only raw mt19937_64 output is used so runs are reproducible.

#include "mpb/algebra.hpp"
#include "mpb/exactlin.hpp"
#include "mpb/family.hpp"
#include "mpb/finset.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace mpb::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng_() % n; }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool coin(unsigned percent) { return below(100) < percent; }

  /// p/q with |p| <= bound and 1 <= q <= bound; zero with probability
  /// `zero_percent`.
  Rational rational(std::int64_t bound, unsigned zero_percent = 20) {
    if (coin(zero_percent)) return 0;
    Rational r(mpz_class(std::to_string(between(-bound, bound))), mpz_class(std::to_string(between(1, bound))));
    r.canonicalize();
    return r;
  }

  MatrixQ matrix(std::size_t rows, std::size_t cols, std::int64_t bound, unsigned zero_percent = 20) {
    MatrixQ m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational(bound, zero_percent);
    return m;
  }

  /// A rows x cols matrix of rank at most `r`, as a product of two factors.
  MatrixQ low_rank(std::size_t rows, std::size_t cols, std::size_t r, std::int64_t bound) {
    if (r == 0) return MatrixQ(rows, cols);
    return matrix(rows, r, bound) * matrix(r, cols, bound);
  }

  VectorQ vector(std::size_t n, std::int64_t bound, unsigned zero_percent = 20) {
    VectorQ v(n);
    for (auto& x : v) x = rational(bound, zero_percent);
    return v;
  }

  SubspaceBasis subspace(std::size_t ambient, std::int64_t bound) {
    const std::size_t k = below(ambient + 1);
    std::vector<VectorQ> vs;
    for (std::size_t t = 0; t < k; ++t) vs.push_back(vector(ambient, bound));
    return SubspaceBasis::span(ambient, vs);
  }

 private:
  std::mt19937_64 rng_;
};

/// Seeds of the random gluing corpus used by the property and acceptance
/// suites.
inline std::vector<std::uint64_t> corpus_seeds(std::size_t count) {
  std::vector<std::uint64_t> seeds;
  for (std::size_t s = 0; s < count; ++s) seeds.push_back(1000 + s);
  return seeds;
}

/// Four pieces: B_1 = Q[x,y]/(x,y)^2 glued to its three quotients by the
/// lines x, y, x+y of the radical, which pairwise meet in Q. The kernels in
/// B_1 are three lines in a plane, so the family is not distributive.
inline GluingFamily three_lines_family() {
  std::vector<Rational> c(27, 0);
  auto at = [&](int a, int b, int r) -> Rational& { return c[(a * 3 + b) * 3 + r]; };
  for (int t = 0; t < 3; ++t) at(0, t, t) = at(t, 0, t) = 1;
  auto a = std::make_shared<const Algebra>(Algebra("A", 3, c, {1, 0, 0}));
  auto q = std::make_shared<const Algebra>(Algebra::functions_on(1, "Q"));

  GluingFamily fam;
  fam.labels = {"1", "2", "3", "4"};
  fam.pieces.push_back(a);
  const std::vector<VectorQ> lines = {{0, 1, 0}, {0, 0, 1}, {0, 1, 1}};
  for (std::size_t j = 1; j <= 3; ++j) {
    QuotientAlgebra quo = quotient_algebra(a, SubspaceBasis::span(3, {lines[j - 1]}), "A/L" + std::to_string(j));
    fam.pieces.push_back(quo.algebra);
    fam.overlaps.emplace(IndexPair{0, j}, quo.algebra);
    fam.maps.emplace(IndexPair{0, j}, quo.projection);
    fam.maps.emplace(IndexPair{j, 0}, AlgebraHom(quo.algebra, quo.algebra, MatrixQ::identity(2)));
  }
  // The unit sits in chart coordinate 0 of every quotient.
  const MatrixQ augmentation = MatrixQ::from_rows(2, {{1, 0}});
  for (std::size_t j = 1; j <= 3; ++j)
    for (std::size_t k = j + 1; k <= 3; ++k) {
      fam.overlaps.emplace(IndexPair{j, k}, q);
      fam.maps.emplace(IndexPair{j, k}, AlgebraHom(fam.pieces[j], q, augmentation));
      fam.maps.emplace(IndexPair{k, j}, AlgebraHom(fam.pieces[k], q, augmentation));
    }
  return fam;
}

}  // namespace mpb::testing
