#include "mpb/lattice.hpp"

#include <map>

namespace mpb {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "true";
    case Verdict::no: return "false";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

std::size_t LatticeClosure::join(std::size_t a, std::size_t b) const {
  return a >= b ? join_table.at(a).at(b) : join_table.at(b).at(a);
}

std::size_t LatticeClosure::meet(std::size_t a, std::size_t b) const {
  return a >= b ? meet_table.at(a).at(b) : meet_table.at(b).at(a);
}

std::optional<std::size_t> LatticeClosure::find(const SubspaceBasis& s) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == s) return i;
  return std::nullopt;
}

LatticeClosure generate_lattice(const std::vector<SubspaceBasis>& gens, std::size_t cap) {
  LatticeClosure l;
  l.generators = gens;
  l.cap = cap;
  for (const auto& g : gens) {
    if (g.ambient_dim() != gens.front().ambient_dim()) throw DimensionError("generate_lattice: generators differ in ambient dimension");
  }

  std::map<SubspaceBasis, std::size_t> index;
  // Returns false when the element is new and the cap is exhausted.
  auto insert = [&](const SubspaceBasis& s, Provenance p, std::size_t& out) {
    if (auto it = index.find(s); it != index.end()) {
      out = it->second;
      return true;
    }
    if (l.elements.size() >= cap) return false;
    out = l.elements.size();
    index.emplace(s, out);
    l.elements.push_back(s);
    l.provenance.push_back(p);
    return true;
  };

  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::size_t ignored = 0;
    if (!insert(gens[g], {Provenance::Op::generator, g, g}, ignored)) return l;
  }
  for (std::size_t i = 0; i < l.elements.size(); ++i) {
    l.join_table.emplace_back();
    l.meet_table.emplace_back();
    for (std::size_t j = 0; j <= i; ++j) {
      std::size_t s_idx = 0;
      std::size_t m_idx = 0;
      auto [joined, met] = sum_and_intersection(l.elements[i], l.elements[j]);
      if (!insert(joined, {Provenance::Op::sum, i, j}, s_idx)) return l;
      if (!insert(met, {Provenance::Op::meet, i, j}, m_idx)) return l;
      l.join_table[i].push_back(s_idx);
      l.meet_table[i].push_back(m_idx);
    }
  }
  l.complete = true;
  return l;
}

DistributivityResult is_distributive(const LatticeClosure& l) {
  if (!l.complete) return {Verdict::indeterminate, std::nullopt};
  const std::size_t n = l.elements.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = l.meet(a, b);
      for (std::size_t c = b + 1; c < n; ++c) {
        if (l.meet(a, l.join(b, c)) != l.join(ab, l.meet(a, c))) {
          return {Verdict::no, std::array<std::size_t, 3>{a, b, c}};
        }
      }
    }
  }
  return {Verdict::yes, std::nullopt};
}

DistributiveFamilyReport check_distributive_family(const GluingFamily& fam, std::size_t cap) {
  DistributiveFamilyReport report;
  std::string structural;
  for (const auto& issue : validate_family(fam)) {
    if (issue.kind == FamilyIssue::Kind::surjectivity) {
      report.non_surjective.push_back(*issue.map);
    } else {
      if (!structural.empty()) structural += "; ";
      structural += issue.message;
    }
  }
  if (!structural.empty()) throw InvalidFamily("invalid family: " + structural);

  bool any_indeterminate = false;
  bool any_failure = !report.non_surjective.empty();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const Algebra& piece = *fam.pieces[i];
    std::vector<SubspaceBasis> gens;
    for (std::size_t j = 0; j < fam.size(); ++j) {
      if (j != i) gens.push_back(kernel_ideal(fam.map(i, j)).subspace);
    }
    PieceLattice pl{i, generate_lattice(gens, cap), true, {}};
    for (const auto& e : pl.closure.elements) {
      if (!is_ideal(piece, e)) {
        pl.all_ideals = false;
        break;
      }
    }
    pl.distributivity = is_distributive(pl.closure);
    if (!pl.all_ideals || pl.distributivity.verdict == Verdict::no) any_failure = true;
    if (pl.distributivity.verdict == Verdict::indeterminate) any_indeterminate = true;
    report.pieces.push_back(std::move(pl));
  }
  report.verdict = any_failure ? Verdict::no : any_indeterminate ? Verdict::indeterminate : Verdict::yes;
  return report;
}

}  // namespace mpb
