#include "mpb/finset.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace mpb {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// True if x and y were in different sets.
  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (y < x) std::swap(x, y);
    parent_[y] = x;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

bool is_subset(const IndexSet& small, const IndexSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void require_index_set(const FiniteGluingSpec& spec, const IndexSet& k) {
  if (k.empty()) throw std::invalid_argument("index subset must be nonempty");
  for (std::size_t t = 0; t < k.size(); ++t) {
    if (k[t] >= spec.size()) throw std::out_of_range("index outside the gluing spec");
    if (t > 0 && k[t - 1] >= k[t]) throw std::invalid_argument("index subset must be sorted and duplicate-free");
  }
}

MatrixQ restriction(std::size_t from_points, const std::vector<std::size_t>& points) {
  MatrixQ m(points.size(), from_points);
  for (std::size_t t = 0; t < points.size(); ++t) m(t, points[t]) = 1;
  return m;
}

std::vector<std::size_t> choose_distinct(std::mt19937_64& rng, std::size_t from, std::size_t count) {
  std::vector<std::size_t> pool(from);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t pick = t + static_cast<std::size_t>(rng() % (from - t));
    std::swap(pool[t], pool[pick]);
  }
  pool.resize(count);
  return pool;
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

}  // namespace

std::size_t FiniteGluingSpec::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  throw InvalidSpec("unknown space label '" + label + "'");
}

void validate_spec(const FiniteGluingSpec& spec) {
  if (spec.spaces.size() != spec.labels.size()) throw InvalidSpec("number of spaces differs from the number of labels");
  if (std::set<std::string>(spec.labels.begin(), spec.labels.end()).size() != spec.labels.size()) {
    throw InvalidSpec("space labels are not distinct");
  }
  for (const auto& [key, pairs] : spec.identifications) {
    const auto [i, j] = key;
    if (i >= j || j >= spec.size()) throw InvalidSpec("identification keyed by an invalid pair");
    const std::string where = "identification " + spec.labels[i] + "~" + spec.labels[j];
    std::set<std::size_t> left;
    std::set<std::size_t> right;
    for (const auto& [x, y] : pairs) {
      if (x >= spec.spaces[i].size() || y >= spec.spaces[j].size()) throw InvalidSpec(where + ": point out of range");
      if (!left.insert(x).second || !right.insert(y).second) throw InvalidSpec(where + ": not a bijection");
    }
  }
}

GluedSpace glue(const FiniteGluingSpec& spec, const IndexSet& k) {
  require_index_set(spec, k);
  std::vector<std::size_t> offset(spec.size(), 0);
  std::size_t total = 0;
  for (auto i : k) {
    offset[i] = total;
    total += spec.spaces[i].size();
  }
  DisjointSets sets(total);
  GluedSpace g;
  g.over = k;
  for (const auto& [key, pairs] : spec.identifications) {
    const auto [i, j] = key;
    if (!std::binary_search(k.begin(), k.end(), i) || !std::binary_search(k.begin(), k.end(), j)) continue;
    for (const auto& [x, y] : pairs) {
      if (sets.unite(offset[i] + x, offset[j] + y)) ++g.merges;
    }
  }
  std::map<std::size_t, std::size_t> class_of_root;
  for (auto i : k) {
    auto& cls = g.class_of[i];
    for (std::size_t x = 0; x < spec.spaces[i].size(); ++x) {
      const std::size_t root = sets.find(offset[i] + x);
      auto [it, fresh] = class_of_root.emplace(root, g.classes.size());
      if (fresh) g.classes.emplace_back();
      g.classes[it->second].emplace_back(i, x);
      cls.push_back(it->second);
    }
  }
  return g;
}

EmbeddingCheck check_embedding(const FiniteGluingSpec& spec, const IndexSet& k, const IndexSet& l) {
  if (!is_subset(k, l)) throw std::invalid_argument("check_embedding: K must be a subset of L");
  const GluedSpace small = glue(spec, k);
  const GluedSpace big = glue(spec, l);
  EmbeddingCheck out{k, l, true, {}};
  std::map<std::size_t, std::size_t> first_preimage;
  for (std::size_t c = 0; c < small.classes.size(); ++c) {
    const auto [piece, point] = small.classes[c].front();
    const std::size_t target = big.class_of.at(piece)[point];
    auto [it, fresh] = first_preimage.emplace(target, c);
    if (!fresh) {
      out.injective = false;
      out.merged.emplace_back(it->second, c);
    }
  }
  return out;
}

GluingFamily dualize(const FiniteGluingSpec& spec) {
  validate_spec(spec);
  GluingFamily fam;
  fam.labels = spec.labels;
  const std::size_t n = spec.size();
  for (std::size_t i = 0; i < n; ++i) {
    fam.pieces.push_back(std::make_shared<const Algebra>(Algebra::functions_on(spec.spaces[i].size(), "B_" + spec.labels[i])));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<std::size_t> on_i;
      std::vector<std::size_t> on_j;
      if (auto it = spec.identifications.find({i, j}); it != spec.identifications.end()) {
        for (const auto& [x, y] : it->second) {
          on_i.push_back(x);
          on_j.push_back(y);
        }
      }
      auto overlap = std::make_shared<const Algebra>(Algebra::functions_on(on_i.size(), "B_" + spec.labels[i] + spec.labels[j]));
      fam.overlaps.emplace(IndexPair{i, j}, overlap);
      fam.maps.emplace(IndexPair{i, j}, AlgebraHom(fam.pieces[i], overlap, restriction(spec.spaces[i].size(), on_i)));
      fam.maps.emplace(IndexPair{j, i}, AlgebraHom(fam.pieces[j], overlap, restriction(spec.spaces[j].size(), on_j)));
    }
  }
  return fam;
}

DualityReport duality_check(const FiniteGluingSpec& spec) {
  const GluingFamily fam = dualize(spec);
  const IndexSet everything = all_indices(fam);
  DualityReport r;
  const MultiPullback bp = build_pullback(fam, everything);
  r.pullback_dim = bp.space.subspace.dim();
  r.class_count = glue(spec, everything).classes.size();
  if (r.pullback_dim != r.class_count) {
    r.mismatches.push_back("dim B^π = " + std::to_string(r.pullback_dim) + " but the glued space has " +
                           std::to_string(r.class_count) + " points");
  }
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const bool onto = projection_surjective(bp, i).surjective;
    const bool embedded = check_embedding(spec, {i}, everything).injective;
    if (onto != embedded) {
      r.mismatches.push_back("B^π -> B_" + spec.labels[i] + (onto ? " is" : " is not") + " surjective but X_" +
                             spec.labels[i] + (embedded ? " is" : " is not") + " embedded");
    }
  }
  for (const auto& c : check_condition3(fam)) {
    const bool embedded = check_embedding(spec, c.base, [&] {
      IndexSet l = c.base;
      l.push_back(c.extension);
      std::sort(l.begin(), l.end());
      return l;
    }()).injective;
    if (c.extends != embedded) {
      r.mismatches.push_back("extension of " + describe(fam, c.base) + " by " + spec.labels[c.extension] +
                             (c.extends ? " holds" : " fails") + " but the partial gluing is" +
                             (embedded ? "" : " not") + " embedded");
    }
  }
  r.consistent = r.mismatches.empty();
  return r;
}

std::vector<std::string> chain_points(std::size_t length) {
  if (length < 2) throw std::invalid_argument("chain length must be at least 2");
  std::vector<std::string> pts;
  for (std::size_t t = 0; t < length; ++t) {
    Rational pos(mpz_class(static_cast<unsigned long>(2 * t)), mpz_class(static_cast<unsigned long>(length - 1)));
    pos.canonicalize();
    pts.push_back(to_string(pos - 1));
  }
  return pts;
}

namespace {

FiniteGluingSpec three_chains(std::size_t chain_length) {
  FiniteGluingSpec s;
  s.labels = {"1", "2", "3"};
  s.spaces.assign(3, chain_points(chain_length));
  return s;
}

}  // namespace

FiniteGluingSpec tstar_spec(std::size_t chain_length) {
  FiniteGluingSpec s = three_chains(chain_length);
  const std::size_t lo = 0;
  const std::size_t hi = chain_length - 1;
  s.identifications[{0, 1}] = {{hi, hi}};
  s.identifications[{0, 2}] = {{hi, hi}};
  s.identifications[{1, 2}] = {{lo, hi}, {hi, lo}};
  return s;
}

FiniteGluingSpec tcirc_a_spec(std::size_t chain_length) {
  FiniteGluingSpec s = three_chains(chain_length);
  const std::size_t hi = chain_length - 1;
  s.identifications[{0, 1}] = {{hi, hi}};
  s.identifications[{0, 2}] = {{hi, hi}};
  s.identifications[{1, 2}] = {{0, 0}};
  return s;
}

FiniteGluingSpec tcirc_c_spec(std::size_t chain_length) {
  FiniteGluingSpec s = three_chains(chain_length);
  const std::size_t hi = chain_length - 1;
  s.identifications[{0, 1}] = {{hi, hi}};
  s.identifications[{0, 2}] = {{hi, hi}};
  s.identifications[{1, 2}] = {{0, 0}, {hi, hi}};
  return s;
}

FiniteGluingSpec gluing_fixture(const std::string& name, std::size_t chain_length) {
  if (name == "tstar") return tstar_spec(chain_length);
  if (name == "tcirc-a") return tcirc_a_spec(chain_length);
  if (name == "tcirc-c") return tcirc_c_spec(chain_length);
  throw std::out_of_range("unknown gluing fixture '" + name + "'");
}

GluingFamily family_fixture(const std::string& name, std::size_t chain_length) {
  if (name == "example1") return dualize(tstar_spec(chain_length));
  if (name == "example2") return dualize(tcirc_a_spec(chain_length));
  if (name == "example3") return dualize(tcirc_c_spec(chain_length));
  throw std::out_of_range("unknown family fixture '" + name + "'");
}

FiniteGluingSpec random_spec(std::uint64_t seed, const RandomSpecParams& params) {
  if (params.min_pieces < 1 || params.min_pieces > params.max_pieces || params.min_points < 1 ||
      params.min_points > params.max_points || params.max_pieces > 6 || params.max_points > 12) {
    throw std::invalid_argument("random_spec: sizes outside 1..6 pieces / 1..12 points");
  }
  std::mt19937_64 rng(seed);
  FiniteGluingSpec s;
  const std::size_t n = uniform(rng, params.min_pieces, params.max_pieces);
  for (std::size_t i = 0; i < n; ++i) {
    s.labels.push_back(std::to_string(i + 1));
    const std::size_t points = uniform(rng, params.min_points, params.max_points);
    std::vector<std::string> names;
    for (std::size_t x = 0; x < points; ++x) names.push_back("p" + std::to_string(x));
    s.spaces.push_back(std::move(names));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng() % 100 >= params.pair_percent) continue;
      const std::size_t limit = std::min({s.spaces[i].size(), s.spaces[j].size(), params.max_overlap});
      if (limit == 0) continue;
      const std::size_t count = uniform(rng, 1, limit);
      const auto left = choose_distinct(rng, s.spaces[i].size(), count);
      const auto right = choose_distinct(rng, s.spaces[j].size(), count);
      auto& pairs = s.identifications[{i, j}];
      for (std::size_t t = 0; t < count; ++t) pairs.emplace_back(left[t], right[t]);
    }
  }
  return s;
}

}  // namespace mpb
