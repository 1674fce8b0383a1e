#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpb/algebra.hpp"
#include "support.hpp"

#include <array>

using namespace mpb;
using mpb::testing::Gen;

namespace {

AlgebraPtr functions(std::size_t n, const std::string& label = "A") {
  return std::make_shared<const Algebra>(Algebra::functions_on(n, label));
}

// Basis E11, E12, E22 of upper-triangular 2x2 matrices.
Algebra upper_triangular() {
  std::vector<Rational> c(27, 0);
  auto set = [&](int a, int b, int r) { c[(a * 3 + b) * 3 + r] = 1; };
  set(0, 0, 0);
  set(0, 1, 1);
  set(1, 2, 1);
  set(2, 2, 2);
  return Algebra("T2", 3, c, {1, 0, 1});
}

using Mat2 = std::array<std::array<Rational, 2>, 2>;

Mat2 as_matrix(const VectorQ& v) { return {{{v[0], v[1]}, {0, v[2]}}}; }

Mat2 mul(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

/// Unital hom Q^m -> Q^n given by pulling back along f: {0..n-1} -> {0..m-1}.
MatrixQ pullback_matrix(std::size_t m, const std::vector<std::size_t>& f) {
  MatrixQ out(f.size(), m);
  for (std::size_t y = 0; y < f.size(); ++y) out(y, f[y]) = 1;
  return out;
}

}  // namespace

TEST_CASE("validate_algebra examples") {
  CHECK_FALSE(validate_algebra(Algebra::functions_on(3, "Q3")).has_value());

  // e_a e_b = e_a: every (s, 1 - s) is a right unit, none is a left unit.
  std::vector<Rational> left(8, 0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) left[(a * 2 + b) * 2 + a] = 1;
  const auto v = validate_algebra(Algebra("L", 2, left, {1, 0}));
  REQUIRE(v.has_value());
  CHECK(v->message.find("unit") != std::string::npos);

  CHECK_FALSE(validate_algebra(upper_triangular()).has_value());
}

TEST_CASE("upper-triangular product agrees with matrix multiplication") {
  const Algebra t = upper_triangular();
  Gen gen(21);
  for (int k = 0; k < 100; ++k) {
    const VectorQ x = gen.vector(3, 9), y = gen.vector(3, 9);
    const VectorQ xy = t.multiply(x, y);
    CHECK(as_matrix(xy) == mul(as_matrix(x), as_matrix(y)));
  }
}

TEST_CASE("non-associative constants are rejected with a triple") {
  // Unit e0; e1 e1 = e2, e2 e1 = e1, e1 e2 = 0, so (e1 e1) e1 != e1 (e1 e1).
  std::vector<Rational> c(27, 0);
  auto at = [&](int a, int b, int r) -> Rational& { return c[(a * 3 + b) * 3 + r]; };
  for (int x = 0; x < 3; ++x) at(0, x, x) = at(x, 0, x) = 1;
  at(1, 1, 2) = 1;
  at(2, 1, 1) = 1;
  const auto v = validate_algebra(Algebra("N", 3, c, {1, 0, 0}));
  REQUIRE(v.has_value());
  CHECK(v->message.find("(e") != std::string::npos);
}

TEST_CASE("validate_hom and is_surjective examples") {
  const auto q3 = functions(3, "Q3");
  const auto q2 = functions(2, "Q2");
  const auto q1 = functions(1, "Q");
  const AlgebraHom eval_last(q3, q1, pullback_matrix(3, {2}));
  const AlgebraHom eval_ends(q3, q2, pullback_matrix(3, {0, 2}));
  CHECK_FALSE(validate_hom(eval_last).has_value());
  CHECK_FALSE(validate_hom(eval_ends).has_value());
  CHECK(is_surjective(eval_last));
  CHECK(is_surjective(eval_ends));

  const AlgebraHom zero(q3, q1, MatrixQ(1, 3));
  const auto v = validate_hom(zero);
  REQUIRE(v.has_value());
  CHECK(v->message.find("unit") != std::string::npos);

  CHECK(is_surjective(AlgebraHom(q3, q3, MatrixQ::identity(3))));
  const AlgebraHom diagonal(q1, q2, MatrixQ::from_rows(1, {{1}, {1}}));
  CHECK_FALSE(validate_hom(diagonal).has_value());
  CHECK_FALSE(is_surjective(diagonal));

  CHECK_THROWS(AlgebraHom(q3, q2, MatrixQ(3, 3)));
}

TEST_CASE("is_ideal examples") {
  const Algebra q3 = Algebra::functions_on(3, "Q3");
  CHECK(is_ideal(q3, SubspaceBasis::zero(3)));
  CHECK(is_ideal(q3, SubspaceBasis::span(3, {{1, 0, 0}, {0, 1, 0}})));
  CHECK(is_ideal(q3, SubspaceBasis::span(3, {{1, 0, 0}})));
  CHECK_FALSE(is_ideal(q3, SubspaceBasis::span(3, {{1, 1, 0}})));
  // Strictly upper entries form a two-sided ideal; the diagonal E11 is only a one-sided one.
  const Algebra t = upper_triangular();
  CHECK(is_ideal(t, SubspaceBasis::span(3, {{0, 1, 0}})));
  CHECK_FALSE(is_ideal(t, SubspaceBasis::span(3, {{1, 0, 0}})));
}

TEST_CASE("quotient_algebra examples") {
  const auto q3 = functions(3, "Q3");
  const QuotientAlgebra same = quotient_algebra(q3, SubspaceBasis::zero(3));
  CHECK(same.algebra->dim() == 3);
  CHECK(is_invertible(same.projection.matrix));

  const SubspaceBasis vanish_last = SubspaceBasis::span(3, {{1, 0, 0}, {0, 1, 0}});
  const QuotientAlgebra q = quotient_algebra(q3, vanish_last);
  CHECK(q.algebra->dim() == 1);
  CHECK_FALSE(validate_algebra(*q.algebra).has_value());
  CHECK(q.algebra->same_presentation(Algebra::functions_on(1, "Q")));
  CHECK(kernel(q.projection.matrix) == vanish_last);
  CHECK_FALSE(validate_hom(q.projection).has_value());

  const QuotientAlgebra zero = quotient_algebra(q3, SubspaceBasis::full(3));
  CHECK(zero.algebra->dim() == 0);

  CHECK_THROWS_AS(quotient_algebra(q3, SubspaceBasis::span(3, {{1, 1, 0}})), NotAnIdeal);
}

TEST_CASE("induced_subalgebra of constants and of a pullback-like subspace") {
  const Algebra q3 = Algebra::functions_on(3, "Q3");
  const Algebra constants = induced_subalgebra(q3, SubspaceBasis::span(3, {{1, 1, 1}}), "const");
  CHECK(constants.same_presentation(Algebra::functions_on(1, "Q")));
  const Algebra glued = induced_subalgebra(q3, SubspaceBasis::span(3, {{1, 1, 0}, {0, 0, 1}}), "glued");
  CHECK(glued.dim() == 2);
  CHECK_FALSE(validate_algebra(glued).has_value());
  CHECK_THROWS_AS(induced_subalgebra(q3, SubspaceBasis::span(3, {{1, 2, 0}, {0, 0, 1}}), "bad"), std::logic_error);
}

TEST_CASE("property: kernels grow under composition") {
  Gen gen(22);
  for (int t = 0; t < 200; ++t) {
    const std::size_t a = 1 + gen.below(5), b = 1 + gen.below(5), c = 1 + gen.below(5);
    std::vector<std::size_t> f_points(b), g_points(c);
    for (auto& x : f_points) x = gen.below(a);
    for (auto& x : g_points) x = gen.below(b);
    const auto qa = functions(a), qb = functions(b), qc = functions(c);
    const AlgebraHom f(qa, qb, pullback_matrix(a, f_points));
    const AlgebraHom g(qb, qc, pullback_matrix(b, g_points));
    REQUIRE_FALSE(validate_hom(f).has_value());
    REQUIRE_FALSE(validate_hom(g).has_value());
    const AlgebraHom gf = compose(g, f);
    CHECK_FALSE(validate_hom(gf).has_value());
    CHECK(kernel_ideal(gf).subspace.contains(kernel_ideal(f).subspace));
  }
}

TEST_CASE("property: quotient by a vanishing ideal") {
  Gen gen(23);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + gen.below(7);
    const auto qn = functions(n);
    std::vector<bool> in_s(n);
    std::size_t s_size = 0;
    std::vector<VectorQ> vanishing;
    for (std::size_t x = 0; x < n; ++x) {
      in_s[x] = gen.coin(50);
      if (in_s[x]) ++s_size;
      else {
        VectorQ e(n, 0);
        e[x] = 1;
        vanishing.push_back(e);
      }
    }
    const SubspaceBasis ideal = SubspaceBasis::span(n, vanishing);
    REQUIRE(is_ideal(*qn, ideal));
    const QuotientAlgebra q = quotient_algebra(qn, ideal);
    CHECK(q.algebra->dim() == s_size);
    CHECK(kernel(q.projection.matrix) == ideal);
    CHECK_FALSE(validate_algebra(*q.algebra).has_value());
    CHECK_FALSE(validate_hom(q.projection).has_value());
  }
}

TEST_CASE("property: quotients of upper-triangular matrices") {
  const auto t = std::make_shared<const Algebra>(upper_triangular());
  const QuotientAlgebra q = quotient_algebra(t, SubspaceBasis::span(3, {{0, 1, 0}}));
  CHECK(q.algebra->dim() == 2);
  CHECK(q.algebra->same_presentation(Algebra::functions_on(2, "diag")));
  CHECK(kernel(q.projection.matrix) == SubspaceBasis::span(3, {{0, 1, 0}}));
}
