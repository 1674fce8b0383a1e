#pragma once

// Exact linear algebra over Q: dense rational matrices, canonical (RREF)
// subspace bases and the subspace calculus used by everything else.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mpb {

/// GMP keeps mpq_class values canonical (lowest terms, positive denominator)
/// after every arithmetic operation.
using Rational = mpq_class;
using VectorQ = std::vector<Rational>;

/// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise; always lowest terms.
std::string to_string(const Rational& value);

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MatrixQ {
 public:
  MatrixQ() = default;
  MatrixQ(std::size_t rows, std::size_t cols);
  MatrixQ(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static MatrixQ identity(std::size_t n);
  static MatrixQ from_rows(std::size_t cols, const std::vector<VectorQ>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  VectorQ row(std::size_t r) const;
  VectorQ column(std::size_t c) const;
  const std::vector<Rational>& entries() const { return data_; }

  MatrixQ transposed() const;
  VectorQ apply(const VectorQ& x) const;

  /// Stacks `below` under this matrix; column counts must agree.
  MatrixQ stacked(const MatrixQ& below) const;
  /// Keeps only the first n rows.
  void truncate_rows(std::size_t n);

  friend MatrixQ operator*(const MatrixQ& a, const MatrixQ& b);
  friend bool operator==(const MatrixQ& a, const MatrixQ& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// A linear subspace of Q^n held as the reduced row-echelon basis of its row
/// space. Two values describe the same subspace iff they compare equal.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;

  static SubspaceBasis zero(std::size_t ambient_dim);
  static SubspaceBasis full(std::size_t ambient_dim);
  static SubspaceBasis span(std::size_t ambient_dim, const std::vector<VectorQ>& vectors);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim_; }

  const MatrixQ& basis_rows() const { return basis_; }
  VectorQ vector(std::size_t i) const { return basis_.row(i); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// x minus its component along the basis, reduced at the pivot columns.
  VectorQ reduce(const VectorQ& x) const;
  bool contains(const VectorQ& x) const;
  bool contains(const SubspaceBasis& other) const;

  /// Coefficients of x in this basis; x must lie in the subspace.
  VectorQ coordinates(const VectorQ& x) const;

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b);
  friend bool operator<(const SubspaceBasis& a, const SubspaceBasis& b);

 private:
  friend SubspaceBasis rref(MatrixQ m);
  void reduce_in_place(VectorQ& r, Rational& coeff) const;

  std::size_t ambient_dim_ = 0;
  MatrixQ basis_;
  std::vector<std::size_t> pivots_;
};

SubspaceBasis rref(MatrixQ m);

std::size_t rank(const MatrixQ& m);

SubspaceBasis sum(const SubspaceBasis& u, const SubspaceBasis& v);
SubspaceBasis intersect(const SubspaceBasis& u, const SubspaceBasis& v);
/// Both at once, from a single elimination of the stacked pair.
std::pair<SubspaceBasis, SubspaceBasis> sum_and_intersection(const SubspaceBasis& u, const SubspaceBasis& v);

/// {w : <w, u> = 0}; the rows of the result cut u out as a joint kernel.
SubspaceBasis annihilator(const SubspaceBasis& u);

// f is a b x a matrix acting on column vectors, i.e. a map Q^a -> Q^b.
SubspaceBasis image(const MatrixQ& f, const SubspaceBasis& u);
SubspaceBasis image(const MatrixQ& f);
SubspaceBasis preimage(const MatrixQ& f, const SubspaceBasis& v);
SubspaceBasis kernel(const MatrixQ& f);

struct QuotientChart {
  /// Q^n -> Q^(n - dim v); kernel is exactly v.
  MatrixQ projection;
  /// Q^(n - dim v) -> Q^n; projection * section = identity.
  MatrixQ section;
  /// Coordinates of Q^n that index the quotient (non-pivot columns of v).
  std::vector<std::size_t> chart_columns;
};

QuotientChart quotient(std::size_t ambient_dim, const SubspaceBasis& v);

/// Exact inverse of a square matrix; throws std::domain_error if singular.
MatrixQ inverse(const MatrixQ& m);
bool is_invertible(const MatrixQ& m);

}  // namespace mpb
