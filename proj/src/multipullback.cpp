#include "mpb/multipullback.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace mpb {

namespace {

void require_index_set(const GluingFamily& fam, const IndexSet& k) {
  if (k.empty()) throw std::invalid_argument("index subset must be nonempty");
  for (std::size_t t = 0; t < k.size(); ++t) {
    if (k[t] >= fam.size()) throw std::out_of_range("index " + std::to_string(k[t]) + " outside the family");
    if (t > 0 && k[t - 1] >= k[t]) throw std::invalid_argument("index subset must be sorted and duplicate-free");
  }
}

IndexSet with(IndexSet k, std::size_t extra) {
  k.insert(std::upper_bound(k.begin(), k.end(), extra), extra);
  return k;
}

class PullbackCache {
 public:
  explicit PullbackCache(const GluingFamily& fam) : fam_(fam) {}

  const PullbackSpace& get(const IndexSet& k) {
    auto it = cache_.find(k);
    if (it == cache_.end()) it = cache_.emplace(k, pullback_space(fam_, k)).first;
    return it->second;
  }

  ExtensionCheck extension(const IndexSet& base, std::size_t k) {
    ExtensionCheck check;
    check.base = base;
    check.extension = k;
    check.compatible = get(base).subspace;
    check.extendable = project_components(fam_, get(with(base, k)), base);
    check.extends = check.extendable == check.compatible;
    if (!check.extends) {
      for (std::size_t r = 0; r < check.compatible.dim(); ++r) {
        VectorQ v = check.compatible.vector(r);
        if (!check.extendable.contains(v)) {
          check.witness = std::move(v);
          break;
        }
      }
    }
    return check;
  }

 private:
  const GluingFamily& fam_;
  std::map<IndexSet, PullbackSpace> cache_;
};

// Block-diagonal product in the direct sum of the pieces of `space`.
VectorQ product_multiply(const GluingFamily& fam, const PullbackSpace& space, const VectorQ& x, const VectorQ& y) {
  VectorQ out(space.ambient_dim);
  for (std::size_t t = 0; t < space.over.size(); ++t) {
    const Algebra& piece = *fam.pieces[space.over[t]];
    const auto first = static_cast<std::ptrdiff_t>(space.offsets[t]);
    const auto last = first + static_cast<std::ptrdiff_t>(piece.dim());
    const VectorQ block = piece.multiply(VectorQ(x.begin() + first, x.begin() + last), VectorQ(y.begin() + first, y.begin() + last));
    std::copy(block.begin(), block.end(), out.begin() + first);
  }
  return out;
}

std::string triple_name(const GluingFamily& fam, std::size_t i, std::size_t j, std::size_t k) {
  return "(" + fam.labels[i] + "," + fam.labels[j] + "," + fam.labels[k] + ")";
}

}  // namespace

IndexSet all_indices(const GluingFamily& fam) {
  IndexSet k(fam.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = i;
  return k;
}

std::string describe(const GluingFamily& fam, const IndexSet& k) {
  std::string out = "{";
  for (std::size_t t = 0; t < k.size(); ++t) out += (t ? "," : "") + fam.labels.at(k[t]);
  return out + "}";
}

std::size_t PullbackSpace::block_of(std::size_t piece) const {
  const auto it = std::lower_bound(over.begin(), over.end(), piece);
  if (it == over.end() || *it != piece) throw std::out_of_range("piece " + std::to_string(piece) + " not in pullback");
  return static_cast<std::size_t>(it - over.begin());
}

PullbackSpace pullback_space(const GluingFamily& fam, const IndexSet& k) {
  require_index_set(fam, k);
  PullbackSpace p;
  p.over = k;
  for (auto i : k) {
    p.offsets.push_back(p.ambient_dim);
    p.ambient_dim += fam.pieces[i]->dim();
  }
  std::size_t constraint_rows = 0;
  for (std::size_t a = 0; a < k.size(); ++a)
    for (std::size_t b = a + 1; b < k.size(); ++b) constraint_rows += fam.overlap(k[a], k[b])->dim();

  // Row block for each pair: π^i_j at block i, -π^j_i at block j.
  MatrixQ constraints(constraint_rows, p.ambient_dim);
  std::size_t row = 0;
  for (std::size_t a = 0; a < k.size(); ++a) {
    for (std::size_t b = a + 1; b < k.size(); ++b) {
      const MatrixQ& fwd = fam.map(k[a], k[b]).matrix;
      const MatrixQ& back = fam.map(k[b], k[a]).matrix;
      for (std::size_t r = 0; r < fwd.rows(); ++r) {
        for (std::size_t c = 0; c < fwd.cols(); ++c) constraints(row + r, p.offsets[a] + c) = fwd(r, c);
        for (std::size_t c = 0; c < back.cols(); ++c) constraints(row + r, p.offsets[b] + c) = -back(r, c);
      }
      row += fwd.rows();
    }
  }
  p.subspace = kernel(constraints);
  return p;
}

SubspaceBasis project_components(const GluingFamily& fam, const PullbackSpace& p, const IndexSet& onto) {
  std::size_t target_dim = 0;
  for (auto i : onto) target_dim += fam.pieces.at(i)->dim();
  MatrixQ select(target_dim, p.ambient_dim);
  std::size_t row = 0;
  for (auto i : onto) {
    const std::size_t off = p.offsets[p.block_of(i)];
    for (std::size_t c = 0; c < fam.pieces[i]->dim(); ++c) select(row++, off + c) = 1;
  }
  return image(select, p.subspace);
}

MultiPullback build_pullback(const GluingFamily& fam, const IndexSet& k) {
  require_valid(fam);
  MultiPullback mp;
  mp.space = pullback_space(fam, k);
  const PullbackSpace& space = mp.space;

  VectorQ unit_tuple(space.ambient_dim);
  for (std::size_t t = 0; t < k.size(); ++t) {
    const VectorQ& u = fam.pieces[k[t]]->unit();
    std::copy(u.begin(), u.end(), unit_tuple.begin() + static_cast<std::ptrdiff_t>(space.offsets[t]));
  }
  // induced_subalgebra throws if the unit tuple is missing or the subspace is
  // not closed under the componentwise product.
  mp.algebra = std::make_shared<const Algebra>(induced_subalgebra(
      [&](const VectorQ& x, const VectorQ& y) { return product_multiply(fam, space, x, y); }, unit_tuple,
      space.subspace, "B^π" + describe(fam, k)));

  for (std::size_t t = 0; t < k.size(); ++t) {
    const AlgebraPtr& piece = fam.pieces[k[t]];
    MatrixQ m(piece->dim(), space.subspace.dim());
    for (std::size_t r = 0; r < space.subspace.dim(); ++r)
      for (std::size_t c = 0; c < piece->dim(); ++c) m(c, r) = space.subspace.basis_rows()(r, space.offsets[t] + c);
    mp.projections.emplace_back(mp.algebra, piece, std::move(m));
  }
  return mp;
}

ProjectionImage projection_surjective(const MultiPullback& p, std::size_t piece) {
  const AlgebraHom& proj = p.projection(piece);
  ProjectionImage out;
  out.image = image(proj.matrix);
  out.surjective = out.image.is_full();
  return out;
}

std::vector<ExtensionCheck> check_condition3(const GluingFamily& fam) {
  require_valid(fam);
  PullbackCache cache(fam);
  std::vector<ExtensionCheck> out;
  const std::size_t n = fam.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j) out.push_back(cache.extension({i, j}, k));
  return out;
}

std::vector<ExtensionCheck> check_condition2(const GluingFamily& fam, std::size_t max_indices) {
  const std::size_t n = fam.size();
  if (n > max_indices) {
    throw std::length_error("condition (2) enumerates every subset of the index set; " + std::to_string(n) +
                            " indices exceed the bound of " + std::to_string(max_indices));
  }
  require_valid(fam);
  PullbackCache cache(fam);
  std::vector<std::pair<IndexSet, std::size_t>> cases;
  const std::size_t full = (std::size_t{1} << n) - 1;
  for (std::size_t mask = 1; mask < full; ++mask) {
    IndexSet base;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) base.push_back(i);
    for (std::size_t k = 0; k < n; ++k)
      if (!(mask & (std::size_t{1} << k))) cases.emplace_back(base, k);
  }
  std::sort(cases.begin(), cases.end());
  std::vector<ExtensionCheck> out;
  out.reserve(cases.size());
  for (const auto& [base, k] : cases) out.push_back(cache.extension(base, k));
  return out;
}

bool tuple_is_compatible(const GluingFamily& fam, const IndexSet& base, const VectorQ& tuple) {
  return pullback_space(fam, base).subspace.contains(tuple);
}

bool tuple_extends(const GluingFamily& fam, const IndexSet& base, std::size_t k, const VectorQ& tuple) {
  if (!tuple_is_compatible(fam, base, tuple)) return false;
  // Solve π^k_l(b_k) = π^l_k(b_l) for all l in base: consistent iff the
  // augmented system has the same rank as the coefficient matrix.
  const std::size_t dim_k = fam.pieces.at(k)->dim();
  std::size_t rows = 0;
  for (auto l : base) rows += fam.overlap(k, l)->dim();
  MatrixQ augmented(rows, dim_k + 1);
  std::size_t row = 0;
  std::size_t off = 0;
  for (auto l : base) {
    const MatrixQ& from_k = fam.map(k, l).matrix;
    const AlgebraHom& from_l = fam.map(l, k);
    const auto first = static_cast<std::ptrdiff_t>(off);
    const VectorQ rhs = from_l(VectorQ(tuple.begin() + first, tuple.begin() + first + static_cast<std::ptrdiff_t>(from_l.source->dim())));
    for (std::size_t r = 0; r < from_k.rows(); ++r) {
      for (std::size_t c = 0; c < dim_k; ++c) augmented(row + r, c) = from_k(r, c);
      augmented(row + r, dim_k) = rhs[r];
    }
    row += from_k.rows();
    off += from_l.source->dim();
  }
  MatrixQ coefficients(rows, dim_k);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < dim_k; ++c) coefficients(r, c) = augmented(r, c);
  return rank(coefficients) == rank(augmented);
}

TripleQuotientData build_triple_quotients(const GluingFamily& fam, std::size_t i, std::size_t j, std::size_t k) {
  if (i == j || j == k || i == k) throw std::invalid_argument("build_triple_quotients: indices must be distinct");
  const AlgebraHom& pij = fam.map(i, j);
  const AlgebraHom& pik = fam.map(i, k);
  const std::string sup = fam.labels[i];
  const std::string sub = fam.labels[j] + fam.labels[k];

  const SubspaceBasis ker_ij = kernel(pij.matrix);
  const SubspaceBasis ker_ik = kernel(pik.matrix);
  QuotientAlgebra bracket = quotient_algebra(fam.pieces[i], sum(ker_ij, ker_ik), "B^" + sup + "_" + sub);

  SubspaceBasis pushed = image(pij.matrix, ker_ik);
  QuotientAlgebra overlap_q = [&] {
    try {
      return quotient_algebra(pij.target, pushed, overlap_name(fam, i, j) + "/" + map_name(fam, i, j) + "(ker)");
    } catch (const NotAnIdeal&) {
      throw std::logic_error(map_name(fam, i, j) + "(ker " + map_name(fam, i, k) + ") is not an ideal of " +
                             overlap_name(fam, i, j) + "; is " + map_name(fam, i, j) + " surjective?");
    }
  }();

  MatrixQ iso = overlap_q.projection.matrix * pij.matrix * bracket.section;
  if (iso * bracket.projection.matrix != overlap_q.projection.matrix * pij.matrix) {
    throw std::logic_error("π^" + sup + sub + " does not factor through B^" + sup + "_" + sub);
  }
  if (!is_invertible(iso)) {
    throw std::logic_error("π^" + sup + sub + " is not invertible on " + triple_name(fam, i, j, k) +
                           "; the family data is inconsistent");
  }
  MatrixQ iso_inv = inverse(iso);
  return TripleQuotientData{i, j, k, std::move(bracket), std::move(pushed), std::move(overlap_q), std::move(iso), std::move(iso_inv)};
}

MatrixQ phi(const TripleQuotientData& ijk, const TripleQuotientData& jik) {
  if (ijk.i != jik.j || ijk.j != jik.i || ijk.k != jik.k) throw std::invalid_argument("phi: triples do not match");
  if (!(ijk.pushed_kernel == jik.pushed_kernel)) {
    throw std::domain_error("phi: π^i_j(ker π^i_k) and π^j_i(ker π^j_k) differ, the quotients do not match");
  }
  return ijk.iso_inverse * jik.iso;
}

CocycleReport check_cocycle(const GluingFamily& fam) {
  require_valid(fam);
  const std::size_t n = fam.size();
  using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;
  std::map<Triple, TripleQuotientData> data;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (i != j && j != k && i != k) data.emplace(Triple{i, j, k}, build_triple_quotients(fam, i, j, k));

  CocycleReport report;
  report.overall = true;
  std::map<Triple, bool> kernels_agree;
  for (const auto& [key, d] : data) {
    const auto& [i, j, k] = key;
    const TripleQuotientData& other = data.at(Triple{j, i, k});
    KernelCondition c{i, j, k, d.pushed_kernel == other.pushed_kernel, d.pushed_kernel, other.pushed_kernel};
    kernels_agree[key] = c.holds;
    report.overall = report.overall && c.holds;
    report.condition1.push_back(std::move(c));
  }
  auto phi_of = [&](std::size_t a, std::size_t b, std::size_t c) {
    return phi(data.at(Triple{a, b, c}), data.at(Triple{b, a, c}));
  };
  for (const auto& [key, d] : data) {
    const auto& [i, j, k] = key;
    CompatibilityCondition c;
    std::tie(c.i, c.j, c.k) = key;
    // φ^ik_j, φ^ij_k and φ^jk_i each need clause (1) on their own triple.
    if (kernels_agree.at(Triple{i, k, j}) && kernels_agree.at(Triple{i, j, k}) && kernels_agree.at(Triple{j, k, i})) {
      c.lhs = phi_of(i, k, j);
      c.rhs = phi_of(i, j, k) * phi_of(j, k, i);
      c.holds = c.lhs == c.rhs;
    }
    report.overall = report.overall && c.holds.value_or(false);
    report.condition2.push_back(std::move(c));
  }
  return report;
}

bool all_extend(const std::vector<ExtensionCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const ExtensionCheck& c) { return c.extends; });
}

TheoremReport check_theorem_equivalence(const GluingFamily& fam, std::size_t cap, std::size_t max_indices) {
  TheoremReport r;
  r.hypothesis = check_distributive_family(fam, cap);
  if (r.hypothesis.verdict != Verdict::yes) {
    std::string why;
    for (const auto& [i, j] : r.hypothesis.non_surjective) why += map_name(fam, i, j) + " is not surjective; ";
    for (const auto& p : r.hypothesis.pieces) {
      if (!p.all_ideals) why += "kernel lattice of B_" + fam.labels[p.piece] + " contains a non-ideal; ";
      if (p.distributivity.verdict == Verdict::no) why += "kernel lattice of B_" + fam.labels[p.piece] + " is not distributive; ";
      if (p.distributivity.verdict == Verdict::indeterminate) {
        why += "kernel lattice of B_" + fam.labels[p.piece] + " exceeded the closure cap; ";
      }
    }
    throw HypothesisError("family is not distributive: " + why.substr(0, why.size() - 2));
  }
  r.cocycle = check_cocycle(fam);
  r.condition2 = check_condition2(fam, max_indices);
  r.condition3 = check_condition3(fam);
  r.cocycle_holds = r.cocycle.overall;
  r.condition2_holds = all_extend(r.condition2);
  r.condition3_holds = all_extend(r.condition3);
  r.consistent = r.cocycle_holds == r.condition2_holds && r.condition2_holds == r.condition3_holds;
  return r;
}

}  // namespace mpb
