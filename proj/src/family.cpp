#include "mpb/family.hpp"

#include <set>

namespace mpb {

const AlgebraPtr& GluingFamily::overlap(std::size_t i, std::size_t j) const {
  const auto it = overlaps.find({std::min(i, j), std::max(i, j)});
  if (it == overlaps.end()) throw InvalidFamily("no overlap algebra for pair (" + labels.at(i) + ", " + labels.at(j) + ")");
  return it->second;
}

const AlgebraHom& GluingFamily::map(std::size_t i, std::size_t j) const {
  const auto it = maps.find({i, j});
  if (it == maps.end()) throw InvalidFamily("no map pi^" + labels.at(i) + "_" + labels.at(j));
  return it->second;
}

std::size_t GluingFamily::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  throw InvalidFamily("unknown index label '" + label + "'");
}

std::string map_name(const GluingFamily& fam, std::size_t i, std::size_t j) {
  return "π^" + fam.labels.at(i) + "_" + fam.labels.at(j);
}

std::string overlap_name(const GluingFamily& fam, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return "B_" + fam.labels.at(i) + fam.labels.at(j);
}

std::vector<FamilyIssue> validate_family(const GluingFamily& fam) {
  using Kind = FamilyIssue::Kind;
  std::vector<FamilyIssue> issues;
  const std::size_t n = fam.size();
  if (fam.pieces.size() != n) {
    issues.push_back({Kind::structure, "number of pieces differs from the number of labels", std::nullopt});
    return issues;
  }
  if (std::set<std::string>(fam.labels.begin(), fam.labels.end()).size() != n) {
    issues.push_back({Kind::structure, "index labels are not distinct", std::nullopt});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!fam.pieces[i]) {
      issues.push_back({Kind::structure, "piece " + fam.labels[i] + " is missing", std::nullopt});
      continue;
    }
    if (auto v = validate_algebra(*fam.pieces[i])) issues.push_back({Kind::algebra, v->message, std::nullopt});
  }
  for (const auto& [key, alg] : fam.overlaps) {
    if (key.first >= key.second || key.second >= n) {
      issues.push_back({Kind::structure, "overlap keyed by an invalid pair", std::nullopt});
    } else if (!alg) {
      issues.push_back({Kind::structure, overlap_name(fam, key.first, key.second) + " is missing", std::nullopt});
    } else if (auto v = validate_algebra(*alg)) {
      issues.push_back({Kind::algebra, v->message, std::nullopt});
    }
  }
  for (const auto& [key, f] : fam.maps) {
    if (key.first == key.second || key.first >= n || key.second >= n) {
      issues.push_back({Kind::structure, "map keyed by an invalid pair", std::nullopt});
    }
  }
  if (!issues.empty()) return issues;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::string name = map_name(fam, i, j);
      const auto ov = fam.overlaps.find({std::min(i, j), std::max(i, j)});
      const auto mp = fam.maps.find({i, j});
      if (ov == fam.overlaps.end()) {
        if (i < j) issues.push_back({Kind::structure, overlap_name(fam, i, j) + " is not defined", std::nullopt});
        continue;
      }
      if (mp == fam.maps.end()) {
        issues.push_back({Kind::structure, name + " is not defined", IndexPair{i, j}});
        continue;
      }
      const AlgebraHom& f = mp->second;
      if (f.source != fam.pieces[i]) {
        issues.push_back({Kind::structure, name + " does not start at B_" + fam.labels[i], IndexPair{i, j}});
        continue;
      }
      if (f.target != ov->second) {
        issues.push_back({Kind::structure, name + " does not land in the shared " + overlap_name(fam, i, j), IndexPair{i, j}});
        continue;
      }
      if (auto v = validate_hom(f)) {
        issues.push_back({Kind::hom, name + ": " + v->message, IndexPair{i, j}});
        continue;
      }
      if (!is_surjective(f)) issues.push_back({Kind::surjectivity, name + " is not surjective", IndexPair{i, j}});
    }
  }
  return issues;
}

void require_valid(const GluingFamily& fam) {
  const auto issues = validate_family(fam);
  if (issues.empty()) return;
  std::string structural;
  std::string hypothesis;
  for (const auto& issue : issues) {
    std::string& sink = issue.kind == FamilyIssue::Kind::surjectivity ? hypothesis : structural;
    if (!sink.empty()) sink += "; ";
    sink += issue.message;
  }
  if (!structural.empty()) throw InvalidFamily("invalid family: " + structural);
  throw HypothesisError("family is not surjective: " + hypothesis);
}

}  // namespace mpb
