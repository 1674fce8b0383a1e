#pragma once

// Finite-dimensional unital associative algebras over Q given by structure
// constants, unital homomorphisms between them, ideals and quotients.

#include "mpb/exactlin.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mpb {

class Algebra {
 public:
  /// `structure_constants[(a * dim + b) * dim + c]` is the coefficient of
  /// e_c in e_a * e_b.
  Algebra(std::string label, std::size_t dim, std::vector<Rational> structure_constants, VectorQ unit);

  /// Q^n with pointwise product and all-ones unit.
  static Algebra functions_on(std::size_t points, std::string label);

  /// Product algebra with componentwise multiplication, blocks in order.
  static Algebra direct_sum(const std::vector<const Algebra*>& blocks, std::string label);

  const std::string& label() const { return label_; }
  std::size_t dim() const { return dim_; }
  const VectorQ& unit() const { return unit_; }
  const std::vector<Rational>& structure_constants() const { return constants_; }
  const Rational& constant(std::size_t a, std::size_t b, std::size_t c) const {
    return constants_[(a * dim_ + b) * dim_ + c];
  }

  VectorQ basis_vector(std::size_t a) const;
  VectorQ multiply(const VectorQ& x, const VectorQ& y) const;

  /// Same dimension, structure constants and unit; the label is ignored.
  bool same_presentation(const Algebra& other) const;

 private:
  std::string label_;
  std::size_t dim_;
  std::vector<Rational> constants_;
  VectorQ unit_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// A linear map between two algebras, stored as a target.dim x source.dim
/// matrix. Construction only checks the shape; algebraic properties are
/// established by validate_hom.
struct AlgebraHom {
  AlgebraHom(AlgebraPtr source, AlgebraPtr target, MatrixQ matrix);

  AlgebraPtr source;
  AlgebraPtr target;
  MatrixQ matrix;

  VectorQ operator()(const VectorQ& x) const { return matrix.apply(x); }
};

/// The second map applied after the first.
AlgebraHom compose(const AlgebraHom& second, const AlgebraHom& first);

struct Violation {
  std::string message;
};

std::optional<Violation> validate_algebra(const Algebra& a);
std::optional<Violation> validate_hom(const AlgebraHom& f);

bool is_surjective(const AlgebraHom& f);

bool is_ideal(const Algebra& a, const SubspaceBasis& s);

struct IdealWitness {
  SubspaceBasis subspace;
};

/// Kernel of f; throws std::logic_error if it is not a two-sided ideal,
/// which can only happen when f is not multiplicative.
IdealWitness kernel_ideal(const AlgebraHom& f);

class NotAnIdeal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct QuotientAlgebra {
  AlgebraPtr algebra;
  /// The canonical surjection a -> a / ideal.
  AlgebraHom projection;
  /// Linear section of `projection` through the chart coordinates of a.
  MatrixQ section;
};

/// Throws NotAnIdeal when `ideal` is not a two-sided ideal of `a`.
QuotientAlgebra quotient_algebra(const AlgebraPtr& a, const SubspaceBasis& ideal, std::string label = {});

/// The algebra structure a subspace inherits from `ambient`, in the
/// coordinates of the subspace's RREF basis. Throws std::logic_error if the
/// subspace is not a unital subalgebra.
Algebra induced_subalgebra(const Algebra& ambient, const SubspaceBasis& subspace, std::string label);

using Multiplication = std::function<VectorQ(const VectorQ&, const VectorQ&)>;

/// Same, for an ambient algebra given only by its product and unit.
Algebra induced_subalgebra(const Multiplication& multiply, const VectorQ& unit, const SubspaceBasis& subspace,
                           std::string label);

}  // namespace mpb
