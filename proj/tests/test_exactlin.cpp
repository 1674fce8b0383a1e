#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpb/exactlin.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace mpb;
using mpb::testing::Gen;

namespace {

MatrixQ rows(std::size_t cols, std::vector<VectorQ> rs) { return MatrixQ::from_rows(cols, rs); }

}  // namespace

TEST_CASE("parse_rational and to_string") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("+2/6") == Rational(1, 3));
  CHECK(to_string(Rational(-3, 2)) == "-3/2");
  CHECK(to_string(Rational(4)) == "4");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
}

TEST_CASE("rref examples") {
  const SubspaceBasis id = rref(MatrixQ::identity(2));
  CHECK(id.basis_rows() == MatrixQ::identity(2));
  const SubspaceBasis z = rref(MatrixQ(2, 2));
  CHECK(z.dim() == 0);
  CHECK(z.ambient_dim() == 2);
  const SubspaceBasis r = rref(rows(2, {{2, 4}, {1, 2}}));
  CHECK(r.basis_rows() == rows(2, {{1, 2}}));
  CHECK(r.pivots() == std::vector<std::size_t>{0});
}

TEST_CASE("sum and intersect examples") {
  const auto u = SubspaceBasis::span(3, {{1, 2, 3}});
  CHECK(sum(u, SubspaceBasis::zero(3)) == u);
  CHECK(sum(SubspaceBasis::span(2, {{1, 0}}), SubspaceBasis::span(2, {{0, 1}})).is_full());
  const auto s = sum(SubspaceBasis::span(3, {{1, 1, 0}}), SubspaceBasis::span(3, {{1, 1, 1}}));
  CHECK(s.basis_rows() == rows(3, {{1, 1, 0}, {0, 0, 1}}));

  CHECK(intersect(u, u) == u);
  CHECK(intersect(SubspaceBasis::span(2, {{1, 0}}), SubspaceBasis::span(2, {{0, 1}})).is_zero());
  CHECK(intersect(SubspaceBasis::full(2), SubspaceBasis::span(2, {{1, 1}})) == SubspaceBasis::span(2, {{1, 1}}));
  CHECK_THROWS_AS(sum(SubspaceBasis::zero(2), SubspaceBasis::zero(3)), DimensionError);
}

TEST_CASE("image, preimage, kernel examples") {
  const auto u = SubspaceBasis::span(3, {{1, -1, 0}});
  CHECK(image(MatrixQ::identity(3), u) == u);
  const MatrixQ eval_last = rows(3, {{0, 0, 1}});
  const SubspaceBasis k = kernel(eval_last);
  CHECK(k.dim() == 2);
  CHECK(k == SubspaceBasis::span(3, {{1, 0, 0}, {0, 1, 0}}));
  CHECK(preimage(eval_last, SubspaceBasis::full(1)).is_full());
  CHECK(preimage(eval_last, SubspaceBasis::zero(1)) == k);
}

TEST_CASE("quotient examples") {
  const QuotientChart q0 = quotient(3, SubspaceBasis::zero(3));
  CHECK(is_invertible(q0.projection));

  const auto plane = SubspaceBasis::span(3, {{1, 0, 0}, {0, 1, 0}});
  const QuotientChart q = quotient(3, plane);
  CHECK(q.projection.rows() == 1);
  CHECK(q.chart_columns == std::vector<std::size_t>{2});
  CHECK(kernel(q.projection) == plane);

  const QuotientChart qf = quotient(3, SubspaceBasis::full(3));
  CHECK(qf.projection.rows() == 0);
  CHECK(qf.section.cols() == 0);
}

TEST_CASE("inverse") {
  const MatrixQ m = rows(2, {{1, 2}, {3, 4}});
  CHECK(m * inverse(m) == MatrixQ::identity(2));
  CHECK_THROWS_AS(inverse(rows(2, {{1, 2}, {2, 4}})), std::domain_error);
}

TEST_CASE("property: canonical form is idempotent and order independent") {
  Gen gen(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = 1 + gen.below(5), c = 1 + gen.below(5);
    const MatrixQ m = gen.low_rank(r, c, gen.below(std::min(r, c) + 1), 50);
    const SubspaceBasis s = rref(m);
    CHECK(rref(s.basis_rows()) == s);
    // Reversing the generators spans the same space and must give the same form.
    std::vector<VectorQ> reversed;
    for (std::size_t i = r; i-- > 0;) reversed.push_back(m.row(i));
    CHECK(SubspaceBasis::span(c, reversed) == s);
    CHECK(s.dim() == oracle::bareiss_rank(m));
  }
}

TEST_CASE("property: modular law") {
  Gen gen(12);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + gen.below(5);
    const SubspaceBasis w = gen.subspace(n, 9);
    std::vector<VectorQ> inside;
    for (std::size_t i = 0; i < w.dim(); ++i)
      if (gen.coin(50)) inside.push_back(w.vector(i));
    const SubspaceBasis u = SubspaceBasis::span(n, inside);
    const SubspaceBasis v = gen.subspace(n, 9);
    REQUIRE(w.contains(u));
    CHECK(sum(u, intersect(v, w)) == intersect(sum(u, v), w));
    CHECK(intersect(v, w).dim() + sum(v, w).dim() == v.dim() + w.dim());
  }
}

TEST_CASE("property: one-pass sum and intersection agree with the separate routes") {
  Gen gen(14);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + gen.below(6);
    const SubspaceBasis u = gen.subspace(n, 9);
    const SubspaceBasis v = gen.coin(20) ? u : gen.subspace(n, 9);
    const auto [s, i] = sum_and_intersection(u, v);
    CHECK(s == sum(u, v));
    CHECK(i == intersect(u, v));
    // Every vector of u and v lies in s; every vector of i lies in both.
    CHECK((s.contains(u) && s.contains(v) && u.contains(i) && v.contains(i)));
  }
}

TEST_CASE("property: rank-nullity and quotient exactness") {
  Gen gen(13);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = 1 + gen.below(6), c = 1 + gen.below(6);
    const MatrixQ f = gen.low_rank(r, c, gen.below(std::min(r, c) + 1), 1000);
    CHECK(kernel(f).dim() + image(f).dim() == c);
    CHECK(image(f).dim() == oracle::bareiss_rank(f));
    const SubspaceBasis v = gen.subspace(c, 20);
    const QuotientChart q = quotient(c, v);
    CHECK(kernel(q.projection) == v);
    CHECK(q.projection * q.section == MatrixQ::identity(c - v.dim()));
    // Preimage of an image contains the original, and equals it plus the kernel.
    CHECK(preimage(f, image(f, v)) == sum(v, kernel(f)));
  }
}

TEST_CASE("coordinates and reduce") {
  const auto s = SubspaceBasis::span(3, {{1, 1, 0}, {0, 1, 1}});
  const VectorQ x = {2, 5, 3};
  REQUIRE(s.contains(x));
  const VectorQ coords = s.coordinates(x);
  VectorQ back(3, 0);
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t c = 0; c < 3; ++c) back[c] += coords[i] * s.vector(i)[c];
  CHECK(back == x);
  CHECK_FALSE(s.contains(VectorQ{1, 0, 0}));
}
