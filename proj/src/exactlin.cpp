#include "mpb/exactlin.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace mpb {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

void require_same_ambient(const SubspaceBasis& u, const SubspaceBasis& v, const char* op) {
  if (u.ambient_dim() != v.ambient_dim()) {
    throw DimensionError(std::string(op) + ": ambient dimensions differ (" + std::to_string(u.ambient_dim()) +
                         " vs " + std::to_string(v.ambient_dim()) + ")");
  }
}

// In-place Gauss-Jordan elimination; returns the pivot columns.
std::vector<std::size_t> eliminate(MatrixQ& m) {
  std::vector<std::size_t> pivots;
  Rational inv, factor, scratch;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t found = lead_row;
    while (found < m.rows() && sgn(m(found, col)) == 0) ++found;
    if (found == m.rows()) continue;
    if (found != lead_row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(found, c), m(lead_row, c));
    }
    mpq_inv(inv.get_mpq_t(), m(lead_row, col).get_mpq_t());
    for (std::size_t c = col; c < m.cols(); ++c)
      if (sgn(m(lead_row, c)) != 0) mpq_mul(m(lead_row, c).get_mpq_t(), m(lead_row, c).get_mpq_t(), inv.get_mpq_t());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || sgn(m(r, col)) == 0) continue;
      factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (sgn(m(lead_row, c)) == 0) continue;
        mpq_mul(scratch.get_mpq_t(), factor.get_mpq_t(), m(lead_row, c).get_mpq_t());
        mpq_sub(m(r, c).get_mpq_t(), m(r, c).get_mpq_t(), scratch.get_mpq_t());
      }
    }
    pivots.push_back(col);
    ++lead_row;
  }
  return pivots;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in rational '" + std::string(text) + "'");
  if (negative) n = -n;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

// --- MatrixQ ---------------------------------------------------------------

MatrixQ::MatrixQ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

MatrixQ::MatrixQ(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("MatrixQ: " + std::to_string(data_.size()) + " entries for a " + std::to_string(rows_) +
                         "x" + std::to_string(cols_) + " matrix");
  }
}

MatrixQ MatrixQ::identity(std::size_t n) {
  MatrixQ m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

MatrixQ MatrixQ::from_rows(std::size_t cols, const std::vector<VectorQ>& rows) {
  MatrixQ m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("MatrixQ::from_rows: ragged row");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

VectorQ MatrixQ::row(std::size_t r) const {
  return VectorQ(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

VectorQ MatrixQ::column(std::size_t c) const {
  VectorQ out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

MatrixQ MatrixQ::transposed() const {
  MatrixQ t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

VectorQ MatrixQ::apply(const VectorQ& x) const {
  if (x.size() != cols_) {
    throw DimensionError("MatrixQ::apply: vector of length " + std::to_string(x.size()) + " for " +
                         std::to_string(cols_) + " columns");
  }
  VectorQ y(rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (sgn(x[c]) == 0) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (sgn((*this)(r, c)) != 0) y[r] += (*this)(r, c) * x[c];
    }
  }
  return y;
}

void MatrixQ::truncate_rows(std::size_t n) {
  if (n >= rows_) return;
  rows_ = n;
  data_.resize(n * cols_);
}

MatrixQ MatrixQ::stacked(const MatrixQ& below) const {
  if (below.cols_ != cols_) throw DimensionError("MatrixQ::stacked: column mismatch");
  MatrixQ out(rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), out.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return out;
}

MatrixQ operator*(const MatrixQ& a, const MatrixQ& b) {
  if (a.cols_ != b.rows_) {
    throw DimensionError("MatrixQ product: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " times " +
                         std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  }
  MatrixQ out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (sgn(b(k, j)) != 0) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

bool operator==(const MatrixQ& a, const MatrixQ& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// --- SubspaceBasis ---------------------------------------------------------

SubspaceBasis SubspaceBasis::zero(std::size_t ambient_dim) { return rref(MatrixQ(0, ambient_dim)); }

SubspaceBasis SubspaceBasis::full(std::size_t ambient_dim) { return rref(MatrixQ::identity(ambient_dim)); }

SubspaceBasis SubspaceBasis::span(std::size_t ambient_dim, const std::vector<VectorQ>& vectors) {
  return rref(MatrixQ::from_rows(ambient_dim, vectors));
}

void SubspaceBasis::reduce_in_place(VectorQ& r, Rational& coeff) const {
  Rational scratch;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    if (sgn(r[pivots_[i]]) == 0) continue;
    coeff = r[pivots_[i]];
    for (std::size_t c = pivots_[i]; c < ambient_dim_; ++c) {
      if (sgn(basis_(i, c)) == 0) continue;
      mpq_mul(scratch.get_mpq_t(), coeff.get_mpq_t(), basis_(i, c).get_mpq_t());
      mpq_sub(r[c].get_mpq_t(), r[c].get_mpq_t(), scratch.get_mpq_t());
    }
  }
}

VectorQ SubspaceBasis::reduce(const VectorQ& x) const {
  if (x.size() != ambient_dim_) throw DimensionError("SubspaceBasis::reduce: vector length mismatch");
  VectorQ r = x;
  Rational coeff;
  reduce_in_place(r, coeff);
  return r;
}

bool SubspaceBasis::contains(const VectorQ& x) const {
  const VectorQ r = reduce(x);
  return std::all_of(r.begin(), r.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool SubspaceBasis::contains(const SubspaceBasis& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw DimensionError("SubspaceBasis::contains: ambient mismatch");
  if (other.dim() > dim()) return false;
  VectorQ r(ambient_dim_);
  Rational coeff;
  for (std::size_t i = 0; i < other.dim(); ++i) {
    for (std::size_t c = 0; c < ambient_dim_; ++c) r[c] = other.basis_(i, c);
    reduce_in_place(r, coeff);
    if (!std::all_of(r.begin(), r.end(), [](const Rational& q) { return sgn(q) == 0; })) return false;
  }
  return true;
}

VectorQ SubspaceBasis::coordinates(const VectorQ& x) const {
  if (!contains(x)) throw std::invalid_argument("SubspaceBasis::coordinates: vector not in subspace");
  VectorQ coeffs(dim());
  for (std::size_t i = 0; i < pivots_.size(); ++i) coeffs[i] = x[pivots_[i]];
  return coeffs;
}

bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
  return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
}

bool operator<(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim_ != b.ambient_dim_) return a.ambient_dim_ < b.ambient_dim_;
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  const auto& ea = a.basis_.entries();
  const auto& eb = b.basis_.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    const int c = cmp(ea[i], eb[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

// --- operations ------------------------------------------------------------

SubspaceBasis rref(MatrixQ m) {
  auto pivots = eliminate(m);
  m.truncate_rows(pivots.size());
  SubspaceBasis out;
  out.ambient_dim_ = m.cols();
  out.basis_ = std::move(m);
  out.pivots_ = std::move(pivots);
  return out;
}

std::size_t rank(const MatrixQ& m) { return rref(m).dim(); }

SubspaceBasis sum(const SubspaceBasis& u, const SubspaceBasis& v) {
  require_same_ambient(u, v, "sum");
  if (u.is_zero()) return v;
  if (v.is_zero()) return u;
  return rref(u.basis_rows().stacked(v.basis_rows()));
}

std::pair<SubspaceBasis, SubspaceBasis> sum_and_intersection(const SubspaceBasis& u, const SubspaceBasis& v) {
  require_same_ambient(u, v, "sum_and_intersection");
  if (u.contains(v)) return {u, v};
  if (v.contains(u)) return {v, u};
  // Zassenhaus: reduce the rows (u | u) and (v | 0). Rows pivoting on the
  // left give u + v; the right halves of the remaining rows span u ∩ v.
  const std::size_t n = u.ambient_dim();
  MatrixQ work(u.dim() + v.dim(), 2 * n);
  for (std::size_t r = 0; r < u.dim(); ++r)
    for (std::size_t c = 0; c < n; ++c) work(r, c) = work(r, n + c) = u.basis_rows()(r, c);
  for (std::size_t r = 0; r < v.dim(); ++r)
    for (std::size_t c = 0; c < n; ++c) work(u.dim() + r, c) = v.basis_rows()(r, c);
  const auto pivots = eliminate(work);
  const std::size_t left = static_cast<std::size_t>(
      std::count_if(pivots.begin(), pivots.end(), [n](std::size_t p) { return p < n; }));
  MatrixQ s(left, n);
  MatrixQ i(pivots.size() - left, n);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) {
      if (r < left) s(r, c) = work(r, c);
      else i(r - left, c) = work(r, n + c);
    }
  return {rref(std::move(s)), rref(std::move(i))};
}

SubspaceBasis annihilator(const SubspaceBasis& u) {
  if (u.is_zero()) return SubspaceBasis::full(u.ambient_dim());
  return kernel(u.basis_rows());
}

SubspaceBasis intersect(const SubspaceBasis& u, const SubspaceBasis& v) {
  require_same_ambient(u, v, "intersect");
  if (u.is_zero() || v.is_full()) return u;
  if (v.is_zero() || u.is_full()) return v;
  return kernel(annihilator(u).basis_rows().stacked(annihilator(v).basis_rows()));
}

SubspaceBasis image(const MatrixQ& f, const SubspaceBasis& u) {
  if (u.ambient_dim() != f.cols()) {
    throw DimensionError("image: subspace of Q^" + std::to_string(u.ambient_dim()) + " under a map from Q^" +
                         std::to_string(f.cols()));
  }
  if (u.is_zero()) return SubspaceBasis::zero(f.rows());
  return rref(u.basis_rows() * f.transposed());
}

SubspaceBasis image(const MatrixQ& f) { return image(f, SubspaceBasis::full(f.cols())); }

SubspaceBasis kernel(const MatrixQ& f) {
  MatrixQ work = f;
  const auto pivots = eliminate(work);
  std::vector<bool> is_pivot(f.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<VectorQ> null_vectors;
  for (std::size_t free = 0; free < f.cols(); ++free) {
    if (is_pivot[free]) continue;
    VectorQ x(f.cols());
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -work(r, free);
    null_vectors.push_back(std::move(x));
  }
  return SubspaceBasis::span(f.cols(), null_vectors);
}

SubspaceBasis preimage(const MatrixQ& f, const SubspaceBasis& v) {
  if (v.ambient_dim() != f.rows()) {
    throw DimensionError("preimage: subspace of Q^" + std::to_string(v.ambient_dim()) + " under a map into Q^" +
                         std::to_string(f.rows()));
  }
  if (v.is_full()) return SubspaceBasis::full(f.cols());
  return kernel(annihilator(v).basis_rows() * f);
}

QuotientChart quotient(std::size_t ambient_dim, const SubspaceBasis& v) {
  if (v.ambient_dim() != ambient_dim) throw DimensionError("quotient: ambient dimension mismatch");
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto p : v.pivots()) is_pivot[p] = true;
  QuotientChart chart;
  for (std::size_t c = 0; c < ambient_dim; ++c)
    if (!is_pivot[c]) chart.chart_columns.push_back(c);
  const std::size_t m = chart.chart_columns.size();
  chart.projection = MatrixQ(m, ambient_dim);
  chart.section = MatrixQ(ambient_dim, m);
  // Reducing x by the RREF rows clears the pivot coordinates; what remains at
  // the chart columns is the class of x.
  for (std::size_t t = 0; t < m; ++t) {
    const std::size_t col = chart.chart_columns[t];
    chart.projection(t, col) = 1;
    chart.section(col, t) = 1;
    for (std::size_t r = 0; r < v.dim(); ++r) chart.projection(t, v.pivots()[r]) = -v.basis_rows()(r, col);
  }
  return chart;
}

MatrixQ inverse(const MatrixQ& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  MatrixQ aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto pivots = eliminate(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) throw std::domain_error("inverse: matrix is singular");
  MatrixQ inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  return inv;
}

bool is_invertible(const MatrixQ& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

}  // namespace mpb
