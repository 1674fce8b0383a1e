#include "mpb/algebra.hpp"

#include <stdexcept>
#include <utility>

namespace mpb {

namespace {

bool is_zero_vector(const VectorQ& v) {
  for (const auto& q : v)
    if (sgn(q) != 0) return false;
  return true;
}

std::string basis_name(std::size_t a) { return "e" + std::to_string(a); }

}  // namespace

Algebra::Algebra(std::string label, std::size_t dim, std::vector<Rational> structure_constants, VectorQ unit)
    : label_(std::move(label)), dim_(dim), constants_(std::move(structure_constants)), unit_(std::move(unit)) {
  if (constants_.size() != dim_ * dim_ * dim_) {
    throw DimensionError("algebra '" + label_ + "': expected " + std::to_string(dim_ * dim_ * dim_) +
                         " structure constants, got " + std::to_string(constants_.size()));
  }
  if (unit_.size() != dim_) {
    throw DimensionError("algebra '" + label_ + "': unit has length " + std::to_string(unit_.size()) +
                         ", expected " + std::to_string(dim_));
  }
}

Algebra Algebra::functions_on(std::size_t points, std::string label) {
  std::vector<Rational> c(points * points * points);
  for (std::size_t a = 0; a < points; ++a) c[(a * points + a) * points + a] = 1;
  return Algebra(std::move(label), points, std::move(c), VectorQ(points, Rational(1)));
}

Algebra Algebra::direct_sum(const std::vector<const Algebra*>& blocks, std::string label) {
  std::size_t n = 0;
  for (const auto* b : blocks) n += b->dim();
  std::vector<Rational> c(n * n * n);
  VectorQ unit(n);
  std::size_t off = 0;
  for (const auto* b : blocks) {
    const std::size_t d = b->dim();
    for (std::size_t x = 0; x < d; ++x) {
      unit[off + x] = b->unit()[x];
      for (std::size_t y = 0; y < d; ++y)
        for (std::size_t z = 0; z < d; ++z) c[((off + x) * n + off + y) * n + off + z] = b->constant(x, y, z);
    }
    off += d;
  }
  return Algebra(std::move(label), n, std::move(c), std::move(unit));
}

VectorQ Algebra::basis_vector(std::size_t a) const {
  VectorQ v(dim_);
  v.at(a) = 1;
  return v;
}

VectorQ Algebra::multiply(const VectorQ& x, const VectorQ& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw DimensionError("algebra '" + label_ + "': operand length mismatch");
  VectorQ out(dim_);
  for (std::size_t a = 0; a < dim_; ++a) {
    if (sgn(x[a]) == 0) continue;
    for (std::size_t b = 0; b < dim_; ++b) {
      if (sgn(y[b]) == 0) continue;
      const Rational xy = x[a] * y[b];
      const std::size_t base = (a * dim_ + b) * dim_;
      for (std::size_t c = 0; c < dim_; ++c) {
        if (sgn(constants_[base + c]) != 0) out[c] += xy * constants_[base + c];
      }
    }
  }
  return out;
}

bool Algebra::same_presentation(const Algebra& other) const {
  return dim_ == other.dim_ && constants_ == other.constants_ && unit_ == other.unit_;
}

AlgebraHom::AlgebraHom(AlgebraPtr src, AlgebraPtr tgt, MatrixQ m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
  if (!source || !target) throw std::invalid_argument("AlgebraHom: null algebra");
  if (matrix.rows() != target->dim() || matrix.cols() != source->dim()) {
    throw DimensionError("hom " + source->label() + " -> " + target->label() + ": matrix is " +
                         std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols()) + ", expected " +
                         std::to_string(target->dim()) + "x" + std::to_string(source->dim()));
  }
}

AlgebraHom compose(const AlgebraHom& second, const AlgebraHom& first) {
  if (first.target->dim() != second.source->dim()) throw DimensionError("compose: incompatible homs");
  return AlgebraHom(first.source, second.target, second.matrix * first.matrix);
}

std::optional<Violation> validate_algebra(const Algebra& a) {
  const std::size_t n = a.dim();
  for (std::size_t x = 0; x < n; ++x) {
    const VectorQ ex = a.basis_vector(x);
    if (a.multiply(a.unit(), ex) != ex) {
      return Violation{"algebra '" + a.label() + "': unit axiom fails, unit * " + basis_name(x) + " != " + basis_name(x)};
    }
    if (a.multiply(ex, a.unit()) != ex) {
      return Violation{"algebra '" + a.label() + "': unit axiom fails, " + basis_name(x) + " * unit != " + basis_name(x)};
    }
  }
  std::vector<VectorQ> products(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) products[x * n + y] = a.multiply(a.basis_vector(x), a.basis_vector(y));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (a.multiply(products[x * n + y], a.basis_vector(z)) != a.multiply(a.basis_vector(x), products[y * n + z])) {
          return Violation{"algebra '" + a.label() + "': associativity fails on (" + basis_name(x) + ", " +
                           basis_name(y) + ", " + basis_name(z) + ")"};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Violation> validate_hom(const AlgebraHom& f) {
  const Algebra& src = *f.source;
  const Algebra& tgt = *f.target;
  const std::string name = "hom " + src.label() + " -> " + tgt.label();
  if (f(src.unit()) != tgt.unit()) return Violation{name + ": unit is not preserved"};
  std::vector<VectorQ> images(src.dim());
  for (std::size_t a = 0; a < src.dim(); ++a) images[a] = f.matrix.column(a);
  for (std::size_t a = 0; a < src.dim(); ++a) {
    for (std::size_t b = 0; b < src.dim(); ++b) {
      if (f(src.multiply(src.basis_vector(a), src.basis_vector(b))) != tgt.multiply(images[a], images[b])) {
        return Violation{name + ": not multiplicative on (" + basis_name(a) + ", " + basis_name(b) + ")"};
      }
    }
  }
  return std::nullopt;
}

bool is_surjective(const AlgebraHom& f) { return rank(f.matrix) == f.target->dim(); }

bool is_ideal(const Algebra& a, const SubspaceBasis& s) {
  if (s.ambient_dim() != a.dim()) throw DimensionError("is_ideal: subspace does not live in '" + a.label() + "'");
  for (std::size_t r = 0; r < s.dim(); ++r) {
    const VectorQ v = s.vector(r);
    for (std::size_t x = 0; x < a.dim(); ++x) {
      const VectorQ ex = a.basis_vector(x);
      if (!s.contains(a.multiply(ex, v)) || !s.contains(a.multiply(v, ex))) return false;
    }
  }
  return true;
}

IdealWitness kernel_ideal(const AlgebraHom& f) {
  IdealWitness w{kernel(f.matrix)};
  if (!is_ideal(*f.source, w.subspace)) {
    throw std::logic_error("kernel of " + f.source->label() + " -> " + f.target->label() + " is not an ideal");
  }
  return w;
}

QuotientAlgebra quotient_algebra(const AlgebraPtr& a, const SubspaceBasis& ideal, std::string label) {
  if (!is_ideal(*a, ideal)) throw NotAnIdeal("quotient_algebra: subspace is not a two-sided ideal of '" + a->label() + "'");
  QuotientChart chart = quotient(a->dim(), ideal);
  const std::size_t m = chart.chart_columns.size();
  std::vector<Rational> c(m * m * m);
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = 0; t < m; ++t) {
      const VectorQ prod = chart.projection.apply(
          a->multiply(a->basis_vector(chart.chart_columns[s]), a->basis_vector(chart.chart_columns[t])));
      for (std::size_t u = 0; u < m; ++u) c[(s * m + t) * m + u] = prod[u];
    }
  }
  if (label.empty()) label = a->label() + "/I";
  auto q = std::make_shared<const Algebra>(std::move(label), m, std::move(c), chart.projection.apply(a->unit()));
  return QuotientAlgebra{q, AlgebraHom(a, q, chart.projection), std::move(chart.section)};
}

Algebra induced_subalgebra(const Algebra& ambient, const SubspaceBasis& subspace, std::string label) {
  if (subspace.ambient_dim() != ambient.dim()) throw DimensionError("induced_subalgebra: ambient mismatch");
  return induced_subalgebra([&](const VectorQ& x, const VectorQ& y) { return ambient.multiply(x, y); }, ambient.unit(),
                            subspace, std::move(label));
}

Algebra induced_subalgebra(const Multiplication& multiply, const VectorQ& unit, const SubspaceBasis& subspace,
                           std::string label) {
  if (unit.size() != subspace.ambient_dim()) throw DimensionError("induced_subalgebra: unit length mismatch");
  if (!subspace.contains(unit)) throw std::logic_error("induced_subalgebra: unit not in subspace");
  const std::size_t d = subspace.dim();
  std::vector<VectorQ> basis(d);
  for (std::size_t r = 0; r < d; ++r) basis[r] = subspace.vector(r);
  std::vector<Rational> c(d * d * d);
  for (std::size_t s = 0; s < d; ++s) {
    for (std::size_t t = 0; t < d; ++t) {
      const VectorQ prod = multiply(basis[s], basis[t]);
      if (!subspace.contains(prod)) throw std::logic_error("induced_subalgebra: subspace not closed under product");
      if (is_zero_vector(prod)) continue;
      const VectorQ coeffs = subspace.coordinates(prod);
      for (std::size_t u = 0; u < d; ++u) c[(s * d + t) * d + u] = coeffs[u];
    }
  }
  return Algebra(std::move(label), d, std::move(c), subspace.coordinates(unit));
}

}  // namespace mpb
