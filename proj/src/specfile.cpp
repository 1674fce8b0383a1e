#include "mpb/specfile.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mpb {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw SpecError(path + ": " + what); }

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

const json& array_at(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_array()) fail(path + "." + key, "expected an array");
  return v;
}

std::string string_of(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::size_t count_of(const json& v, const std::string& path) {
  if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
  return v.get<std::size_t>();
}

Rational rational_of(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "rationals must be strings \"p/q\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

VectorQ vector_of(const json& v, std::size_t expected, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of rationals");
  if (v.size() != expected) fail(path, "expected " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
  VectorQ out;
  for (std::size_t t = 0; t < v.size(); ++t) out.push_back(rational_of(v[t], path + "[" + std::to_string(t) + "]"));
  return out;
}

SpecOptions options_of(const json& doc) {
  SpecOptions o;
  const auto it = doc.find("options");
  if (it == doc.end()) return o;
  if (!it->is_object()) fail("options", "expected an object");
  auto opt = [&](const char* key, std::optional<std::size_t>& slot) {
    if (const auto f = it->find(key); f != it->end()) slot = count_of(*f, std::string("options.") + key);
  };
  opt("cap", o.cap);
  opt("max_j", o.max_j);
  opt("chain_length", o.chain_length);
  return o;
}

json options_to_json(const SpecOptions& o) {
  json j = json::object();
  if (o.cap) j["cap"] = *o.cap;
  if (o.max_j) j["max_j"] = *o.max_j;
  if (o.chain_length) j["chain_length"] = *o.chain_length;
  return j;
}

std::vector<std::string> labels_of(const json& doc, const std::string& key) {
  std::vector<std::string> labels;
  const json& arr = array_at(doc, key, "$");
  for (std::size_t t = 0; t < arr.size(); ++t) labels.push_back(string_of(arr[t], key + "[" + std::to_string(t) + "]"));
  if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) fail(key, "labels are not distinct");
  return labels;
}

std::size_t label_index(const std::vector<std::string>& labels, const json& v, const std::string& path) {
  const std::string s = string_of(v, path);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == s) return i;
  fail(path, "unknown label '" + s + "'");
}

AlgebraPtr algebra_of(const json& a, const std::string& path) {
  const std::string name = string_of(field(a, "name", path), path + ".name");
  const std::size_t dim = count_of(field(a, "dim", path), path + ".dim");
  VectorQ unit = vector_of(field(a, "unit", path), dim, path + ".unit");
  const json& sc = field(a, "structure_constants", path);
  const std::string sc_path = path + ".structure_constants";
  if (!sc.is_array() || sc.size() != dim) fail(sc_path, "expected " + std::to_string(dim) + " rows");
  std::vector<Rational> constants;
  constants.reserve(dim * dim * dim);
  for (std::size_t x = 0; x < dim; ++x) {
    const std::string row_path = sc_path + "[" + std::to_string(x) + "]";
    if (!sc[x].is_array() || sc[x].size() != dim) fail(row_path, "expected " + std::to_string(dim) + " products");
    for (std::size_t y = 0; y < dim; ++y) {
      const VectorQ prod = vector_of(sc[x][y], dim, row_path + "[" + std::to_string(y) + "]");
      constants.insert(constants.end(), prod.begin(), prod.end());
    }
  }
  return std::make_shared<const Algebra>(name, dim, std::move(constants), std::move(unit));
}

json algebra_to_json(const Algebra& a, const std::string& name) {
  json sc = json::array();
  for (std::size_t x = 0; x < a.dim(); ++x) {
    json row = json::array();
    for (std::size_t y = 0; y < a.dim(); ++y) {
      VectorQ prod(a.dim());
      for (std::size_t z = 0; z < a.dim(); ++z) prod[z] = a.constant(x, y, z);
      row.push_back(rational_vector_to_json(prod));
    }
    sc.push_back(std::move(row));
  }
  return json{{"name", name}, {"dim", a.dim()}, {"unit", rational_vector_to_json(a.unit())}, {"structure_constants", sc}};
}

}  // namespace

json rational_vector_to_json(const VectorQ& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

json matrix_to_json(const MatrixQ& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(rational_vector_to_json(m.row(r)));
  return out;
}

json subspace_to_json(const SubspaceBasis& s) {
  return json{{"ambient_dim", s.ambient_dim()}, {"dim", s.dim()}, {"basis", matrix_to_json(s.basis_rows())}};
}

GluingFamily family_from_json(const json& doc) {
  GluingFamily fam;
  fam.labels = labels_of(doc, "index");
  const std::size_t n = fam.labels.size();

  std::map<std::string, AlgebraPtr> algebras;
  const json& algs = array_at(doc, "algebras", "$");
  for (std::size_t t = 0; t < algs.size(); ++t) {
    const std::string path = "algebras[" + std::to_string(t) + "]";
    AlgebraPtr a = algebra_of(algs[t], path);
    if (!algebras.emplace(a->label(), a).second) fail(path + ".name", "duplicate algebra name '" + a->label() + "'");
  }
  auto lookup = [&](const json& v, const std::string& path) {
    const std::string name = string_of(v, path);
    const auto it = algebras.find(name);
    if (it == algebras.end()) fail(path, "unknown algebra '" + name + "'");
    return it->second;
  };

  const json& pieces = field(doc, "pieces", "$");
  if (!pieces.is_object()) fail("pieces", "expected an object mapping index labels to algebra names");
  for (const auto& label : fam.labels) fam.pieces.push_back(lookup(field(pieces, label, "pieces"), "pieces." + label));
  if (pieces.size() != n) fail("pieces", "entries for labels outside the index set");

  const json& overlaps = array_at(doc, "overlaps", "$");
  for (std::size_t t = 0; t < overlaps.size(); ++t) {
    const std::string path = "overlaps[" + std::to_string(t) + "]";
    const json& pair = field(overlaps[t], "pair", path);
    if (!pair.is_array() || pair.size() != 2) fail(path + ".pair", "expected two labels");
    std::size_t i = label_index(fam.labels, pair[0], path + ".pair[0]");
    std::size_t j = label_index(fam.labels, pair[1], path + ".pair[1]");
    if (i == j) fail(path + ".pair", "labels must differ");
    if (i > j) std::swap(i, j);
    if (!fam.overlaps.emplace(IndexPair{i, j}, lookup(field(overlaps[t], "algebra", path), path + ".algebra")).second) {
      fail(path, "duplicate overlap for this pair");
    }
  }

  const json& maps = array_at(doc, "maps", "$");
  for (std::size_t t = 0; t < maps.size(); ++t) {
    const std::string path = "maps[" + std::to_string(t) + "]";
    const std::size_t i = label_index(fam.labels, field(maps[t], "from", path), path + ".from");
    const std::size_t j = label_index(fam.labels, field(maps[t], "to", path), path + ".to");
    if (i == j) fail(path, "from and to must differ");
    const auto ov = fam.overlaps.find({std::min(i, j), std::max(i, j)});
    if (ov == fam.overlaps.end()) fail(path, "no overlap declared for this pair");
    const Algebra& src = *fam.pieces[i];
    const Algebra& tgt = *ov->second;
    const json& rows = field(maps[t], "matrix", path);
    if (!rows.is_array() || rows.size() != tgt.dim()) {
      fail(path + ".matrix", "expected " + std::to_string(tgt.dim()) + " rows (dim " + tgt.label() + ")");
    }
    std::vector<VectorQ> vs;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      vs.push_back(vector_of(rows[r], src.dim(), path + ".matrix[" + std::to_string(r) + "]"));
    }
    if (!fam.maps.emplace(IndexPair{i, j}, AlgebraHom(fam.pieces[i], ov->second, MatrixQ::from_rows(src.dim(), vs))).second) {
      fail(path, "duplicate map");
    }
  }
  return fam;
}

json family_to_json(const GluingFamily& fam, const SpecOptions& options) {
  // Every distinct algebra object is emitted once; shared objects stay shared.
  std::map<const Algebra*, std::string> names;
  std::set<std::string> used;
  json algebras = json::array();
  auto name_of = [&](const AlgebraPtr& a) {
    if (const auto it = names.find(a.get()); it != names.end()) return it->second;
    std::string name = a->label();
    for (int suffix = 2; used.count(name); ++suffix) name = a->label() + "#" + std::to_string(suffix);
    used.insert(name);
    names.emplace(a.get(), name);
    algebras.push_back(algebra_to_json(*a, name));
    return name;
  };
  json pieces = json::object();
  for (std::size_t i = 0; i < fam.size(); ++i) pieces[fam.labels[i]] = name_of(fam.pieces[i]);
  json overlaps = json::array();
  for (const auto& [key, alg] : fam.overlaps) {
    overlaps.push_back({{"pair", {fam.labels[key.first], fam.labels[key.second]}}, {"algebra", name_of(alg)}});
  }
  json maps = json::array();
  for (const auto& [key, f] : fam.maps) {
    maps.push_back({{"from", fam.labels[key.first]}, {"to", fam.labels[key.second]}, {"matrix", matrix_to_json(f.matrix)}});
  }
  json doc = {{"kind", "algebra-family"}, {"index", fam.labels}, {"algebras", algebras},
              {"pieces", pieces},        {"overlaps", overlaps},  {"maps", maps}};
  if (const json o = options_to_json(options); !o.empty()) doc["options"] = o;
  return doc;
}

FiniteGluingSpec gluing_from_json(const json& doc) {
  FiniteGluingSpec spec;
  const json& spaces = array_at(doc, "spaces", "$");
  std::vector<std::map<std::string, std::size_t>> point_index;
  for (std::size_t t = 0; t < spaces.size(); ++t) {
    const std::string path = "spaces[" + std::to_string(t) + "]";
    spec.labels.push_back(string_of(field(spaces[t], "label", path), path + ".label"));
    const json& pts = array_at(spaces[t], "points", path);
    std::vector<std::string> names;
    std::map<std::string, std::size_t> index;
    for (std::size_t x = 0; x < pts.size(); ++x) {
      names.push_back(string_of(pts[x], path + ".points[" + std::to_string(x) + "]"));
      if (!index.emplace(names.back(), x).second) fail(path + ".points", "duplicate point '" + names.back() + "'");
    }
    spec.spaces.push_back(std::move(names));
    point_index.push_back(std::move(index));
  }
  if (std::set<std::string>(spec.labels.begin(), spec.labels.end()).size() != spec.labels.size()) {
    fail("spaces", "labels are not distinct");
  }
  auto point_of = [&](std::size_t space, const json& v, const std::string& path) {
    const std::string name = string_of(v, path);
    const auto it = point_index[space].find(name);
    if (it == point_index[space].end()) fail(path, "no point '" + name + "' in space " + spec.labels[space]);
    return it->second;
  };

  if (const auto ids = doc.find("identifications"); ids != doc.end()) {
    if (!ids->is_array()) fail("identifications", "expected an array");
    for (std::size_t t = 0; t < ids->size(); ++t) {
      const std::string path = "identifications[" + std::to_string(t) + "]";
      const json& entry = (*ids)[t];
      const json& pair = field(entry, "pair", path);
      if (!pair.is_array() || pair.size() != 2) fail(path + ".pair", "expected two labels");
      std::size_t i = label_index(spec.labels, pair[0], path + ".pair[0]");
      std::size_t j = label_index(spec.labels, pair[1], path + ".pair[1]");
      if (i == j) fail(path + ".pair", "labels must differ");
      const bool swapped = i > j;
      if (swapped) std::swap(i, j);
      if (spec.identifications.count({i, j})) fail(path, "duplicate identification for this pair");
      auto& out = spec.identifications[{i, j}];
      const json& pts = array_at(entry, "points", path);
      for (std::size_t x = 0; x < pts.size(); ++x) {
        const std::string ppath = path + ".points[" + std::to_string(x) + "]";
        if (!pts[x].is_array() || pts[x].size() != 2) fail(ppath, "expected a pair of point labels");
        std::size_t a = point_of(swapped ? j : i, pts[x][0], ppath + "[0]");
        std::size_t b = point_of(swapped ? i : j, pts[x][1], ppath + "[1]");
        if (swapped) std::swap(a, b);
        out.emplace_back(a, b);
      }
    }
  }
  try {
    validate_spec(spec);
  } catch (const InvalidSpec& e) {
    fail("identifications", e.what());
  }
  return spec;
}

json gluing_to_json(const FiniteGluingSpec& spec, const SpecOptions& options) {
  json spaces = json::array();
  for (std::size_t i = 0; i < spec.size(); ++i) spaces.push_back({{"label", spec.labels[i]}, {"points", spec.spaces[i]}});
  json ids = json::array();
  for (const auto& [key, pairs] : spec.identifications) {
    json pts = json::array();
    for (const auto& [x, y] : pairs) pts.push_back({spec.spaces[key.first][x], spec.spaces[key.second][y]});
    ids.push_back({{"pair", {spec.labels[key.first], spec.labels[key.second]}}, {"points", pts}});
  }
  json doc = {{"kind", "finite-gluing"}, {"spaces", spaces}, {"identifications", ids}};
  if (const json o = options_to_json(options); !o.empty()) doc["options"] = o;
  return doc;
}

SpecFile parse_spec(const std::string& text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(name + ": " + e.what());
  }
  SpecFile out;
  out.name = name;
  out.kind = string_of(field(doc, "kind", "$"), "kind");
  out.options = options_of(doc);
  if (out.kind == "algebra-family") {
    out.family = family_from_json(doc);
  } else if (out.kind == "finite-gluing") {
    out.gluing = gluing_from_json(doc);
  } else {
    fail("kind", "expected \"algebra-family\" or \"finite-gluing\", got \"" + out.kind + "\"");
  }
  return out;
}

SpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), path);
}

bool same_family(const GluingFamily& a, const GluingFamily& b) {
  if (a.labels != b.labels || a.pieces.size() != b.pieces.size()) return false;
  auto same = [](const AlgebraPtr& x, const AlgebraPtr& y) {
    return x && y && x->label() == y->label() && x->same_presentation(*y);
  };
  for (std::size_t i = 0; i < a.pieces.size(); ++i)
    if (!same(a.pieces[i], b.pieces[i])) return false;
  if (a.overlaps.size() != b.overlaps.size() || a.maps.size() != b.maps.size()) return false;
  for (const auto& [key, alg] : a.overlaps) {
    const auto it = b.overlaps.find(key);
    if (it == b.overlaps.end() || !same(alg, it->second)) return false;
  }
  for (const auto& [key, f] : a.maps) {
    const auto it = b.maps.find(key);
    if (it == b.maps.end() || !(f.matrix == it->second.matrix)) return false;
    // Sharing pattern: a map targets its pair's overlap object in both.
    if ((f.target == a.overlap(key.first, key.second)) != (it->second.target == b.overlap(key.first, key.second))) return false;
  }
  return true;
}

}  // namespace mpb
