#include "mpb/cli.hpp"

#include "mpb/repair.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <tuple>

namespace mpb::cli {

using nlohmann::json;

namespace {

const char* pass_fail(bool ok) { return ok ? "pass" : "FAIL"; }

std::string vector_text(const VectorQ& v) {
  std::string out = "(";
  for (std::size_t t = 0; t < v.size(); ++t) out += (t ? ", " : "") + to_string(v[t]);
  return out + ")";
}

/// "{0}", the name of the ambient algebra when full, else a span.
std::string subspace_text(const SubspaceBasis& s, const std::string& ambient_name) {
  if (s.is_zero()) return "{0}";
  if (s.is_full()) return ambient_name;
  std::string out = "span{";
  for (std::size_t r = 0; r < s.dim(); ++r) out += (r ? ", " : "") + vector_text(s.vector(r));
  return out + "}";
}

std::vector<std::string> labels_of(const GluingFamily& fam, const IndexSet& k) {
  std::vector<std::string> out;
  for (auto i : k) out.push_back(fam.labels[i]);
  return out;
}

std::string triple_text(const GluingFamily& fam, std::size_t i, std::size_t j, std::size_t k) {
  return "(" + fam.labels[i] + "," + fam.labels[j] + "," + fam.labels[k] + ")";
}

// Splits a direct-sum vector over `base` into its components.
std::vector<std::pair<std::string, VectorQ>> components(const GluingFamily& fam, const IndexSet& base, const VectorQ& v) {
  std::vector<std::pair<std::string, VectorQ>> out;
  std::size_t off = 0;
  for (auto i : base) {
    const std::size_t d = fam.pieces[i]->dim();
    out.emplace_back(fam.labels[i], VectorQ(v.begin() + static_cast<std::ptrdiff_t>(off),
                                            v.begin() + static_cast<std::ptrdiff_t>(off + d)));
    off += d;
  }
  return out;
}

// Reports list entries in lexicographic label order regardless of the order
// of the index set in the input.
template <typename T, typename KeyFn>
void sort_by_labels(std::vector<T>& items, KeyFn key) {
  std::stable_sort(items.begin(), items.end(), [&](const T& a, const T& b) { return key(a) < key(b); });
}

json extension_json(const GluingFamily& fam, const ExtensionCheck& c) {
  json j = {{"base", labels_of(fam, c.base)}, {"extension", fam.labels[c.extension]}, {"extends", c.extends},
            {"compatible_dim", c.compatible.dim()}, {"extendable_dim", c.extendable.dim()}};
  if (c.witness) {
    json w = json::object();
    for (const auto& [label, part] : components(fam, c.base, *c.witness)) w[label] = rational_vector_to_json(part);
    j["witness"] = w;
  }
  return j;
}

struct ExtensionSummary {
  json data;
  bool holds = true;
};

ExtensionSummary summarize_extensions(const GluingFamily& fam, std::vector<ExtensionCheck> checks, const char* title,
                                      std::ostringstream& text) {
  sort_by_labels(checks, [&](const ExtensionCheck& c) {
    return std::make_tuple(c.base.size(), labels_of(fam, c.base), fam.labels[c.extension]);
  });
  ExtensionSummary s;
  s.holds = all_extend(checks);
  json list = json::array();
  std::size_t failures = 0;
  for (const auto& c : checks) {
    list.push_back(extension_json(fam, c));
    if (c.extends) continue;
    ++failures;
    text << "  fails at K=" << describe(fam, c.base) << ", k=" << fam.labels[c.extension] << "; witness";
    for (const auto& [label, part] : components(fam, c.base, *c.witness)) text << " b_" << label << " = " << vector_text(part);
    text << '\n';
  }
  text << title << ": " << (s.holds ? "true" : "false") << " (" << checks.size() - failures << "/" << checks.size()
       << " cases extend)\n";
  s.data = {{"holds", s.holds}, {"checks", list}};
  return s;
}

json cocycle_json(const GluingFamily& fam, CocycleReport report, std::ostringstream& text) {
  auto key3 = [&](std::size_t i, std::size_t j, std::size_t k) {
    return std::vector<std::string>{fam.labels[i], fam.labels[j], fam.labels[k]};
  };
  sort_by_labels(report.condition1, [&](const KernelCondition& c) { return key3(c.i, c.j, c.k); });
  sort_by_labels(report.condition2, [&](const CompatibilityCondition& c) { return key3(c.i, c.j, c.k); });

  json c1 = json::array();
  for (const auto& c : report.condition1) {
    c1.push_back({{"triple", key3(c.i, c.j, c.k)}, {"holds", c.holds}, {"lhs", subspace_to_json(c.lhs)}, {"rhs", subspace_to_json(c.rhs)}});
    if (c.holds) continue;
    const std::string ov = overlap_name(fam, c.i, c.j);
    text << "  (1) fails at " << triple_text(fam, c.i, c.j, c.k) << ": " << map_name(fam, c.i, c.j) << "(ker "
         << map_name(fam, c.i, c.k) << ")=" << subspace_text(c.lhs, ov) << " vs " << map_name(fam, c.j, c.i) << "(ker "
         << map_name(fam, c.j, c.k) << ")=" << subspace_text(c.rhs, ov) << '\n';
  }
  json c2 = json::array();
  std::size_t not_evaluable = 0;
  for (const auto& c : report.condition2) {
    json entry = {{"triple", key3(c.i, c.j, c.k)}};
    if (c.holds) {
      entry["holds"] = *c.holds;
      if (!*c.holds) {
        entry["lhs"] = matrix_to_json(c.lhs);
        entry["rhs"] = matrix_to_json(c.rhs);
        text << "  (2) fails at " << triple_text(fam, c.i, c.j, c.k) << ": φ^" << fam.labels[c.i] << fam.labels[c.k]
             << "_" << fam.labels[c.j] << " != φ^" << fam.labels[c.i] << fam.labels[c.j] << "_" << fam.labels[c.k]
             << " ∘ φ^" << fam.labels[c.j] << fam.labels[c.k] << "_" << fam.labels[c.i] << '\n';
      }
    } else {
      entry["holds"] = nullptr;
      ++not_evaluable;
    }
    c2.push_back(std::move(entry));
  }
  if (not_evaluable > 0) text << "  (2) not evaluable on " << not_evaluable << " triple(s) where (1) fails\n";
  text << "cocycle condition: " << (report.overall ? "true" : "false") << " (" << report.condition1.size()
       << " ordered triples)\n";
  return {{"overall", report.overall}, {"condition1", c1}, {"condition2", c2}};
}

json distributive_json(const GluingFamily& fam, const DistributiveFamilyReport& d, std::ostringstream& text) {
  json non_surj = json::array();
  for (const auto& [i, j] : d.non_surjective) {
    non_surj.push_back({fam.labels[i], fam.labels[j]});
    text << "  " << map_name(fam, i, j) << " is not surjective\n";
  }
  json pieces = json::array();
  for (const auto& p : d.pieces) {
    json entry = {{"piece", fam.labels[p.piece]},
                  {"elements", p.closure.elements.size()},
                  {"complete", p.closure.complete},
                  {"all_ideals", p.all_ideals},
                  {"verdict", to_string(p.distributivity.verdict)}};
    if (p.distributivity.witness) {
      json w = json::array();
      for (auto idx : *p.distributivity.witness) w.push_back(subspace_to_json(p.closure.elements[idx]));
      entry["witness"] = w;
      text << "  B_" << fam.labels[p.piece] << ": kernel lattice not distributive\n";
    } else if (p.distributivity.verdict == Verdict::indeterminate) {
      text << "  B_" << fam.labels[p.piece] << ": closure cap reached after " << p.closure.elements.size() << " elements\n";
    }
    if (!p.all_ideals) text << "  B_" << fam.labels[p.piece] << ": lattice contains a non-ideal\n";
    pieces.push_back(std::move(entry));
  }
  text << "distributive: " << to_string(d.verdict) << '\n';
  return {{"verdict", to_string(d.verdict)}, {"non_surjective", non_surj}, {"pieces", pieces}};
}

// Position of every index once the labels are sorted.
std::vector<std::size_t> label_positions(const std::vector<std::string>& labels) {
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return labels[a] < labels[b]; });
  std::vector<std::size_t> pos(labels.size());
  for (std::size_t t = 0; t < order.size(); ++t) pos[order[t]] = t;
  return pos;
}

// Reports list pieces, pairs and triples in label order whatever the order
// of the input, so inputs are renumbered before any check runs.
GluingFamily in_label_order(const GluingFamily& fam) {
  const auto pos = label_positions(fam.labels);
  GluingFamily out;
  out.labels.resize(fam.size());
  out.pieces.resize(fam.size());
  for (std::size_t i = 0; i < fam.size(); ++i) {
    out.labels[pos[i]] = fam.labels[i];
    out.pieces[pos[i]] = fam.pieces[i];
  }
  for (const auto& [key, alg] : fam.overlaps) {
    const std::size_t a = pos[key.first], b = pos[key.second];
    out.overlaps.emplace(IndexPair{std::min(a, b), std::max(a, b)}, alg);
  }
  for (const auto& [key, hom] : fam.maps) out.maps.emplace(IndexPair{pos[key.first], pos[key.second]}, hom);
  return out;
}

FiniteGluingSpec in_label_order(const FiniteGluingSpec& spec) {
  const auto pos = label_positions(spec.labels);
  FiniteGluingSpec out;
  out.labels.resize(spec.size());
  out.spaces.resize(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    out.labels[pos[i]] = spec.labels[i];
    out.spaces[pos[i]] = spec.spaces[i];
  }
  for (const auto& [key, pairs] : spec.identifications) {
    const std::size_t a = pos[key.first], b = pos[key.second];
    auto& target = out.identifications[{std::min(a, b), std::max(a, b)}];
    for (const auto& [x, y] : pairs) target.emplace_back(a < b ? x : y, a < b ? y : x);
    std::sort(target.begin(), target.end());
  }
  return out;
}

GluingFamily family_of(const SpecFile& input) {
  if (input.family) return in_label_order(*input.family);
  return dualize(in_label_order(*input.gluing));
}

}  // namespace

Options merge_options(const SpecOptions& from_file, const Options& defaults, const SpecOptions& from_flags) {
  Options o = defaults;
  auto pick = [](std::size_t& slot, const std::optional<std::size_t>& file, const std::optional<std::size_t>& flag) {
    if (flag) slot = *flag;
    else if (file) slot = *file;
  };
  pick(o.cap, from_file.cap, from_flags.cap);
  pick(o.max_j, from_file.max_j, from_flags.max_j);
  pick(o.chain_length, from_file.chain_length, from_flags.chain_length);
  return o;
}

SpecFile fixture_input(const std::string& name, std::size_t chain_length) {
  SpecFile f;
  f.name = name;
  try {
    if (name.rfind("example", 0) == 0) {
      f.kind = "algebra-family";
      f.family = family_fixture(name, chain_length);
    } else {
      f.kind = "finite-gluing";
      f.gluing = gluing_fixture(name, chain_length);
    }
  } catch (const std::out_of_range&) {
    throw SpecError("unknown fixture '" + name + "' (known: example1, example2, example3, tstar, tcirc-a, tcirc-c)");
  } catch (const std::invalid_argument& e) {
    throw SpecError(std::string("fixture '") + name + "': " + e.what());
  }
  return f;
}

Report cmd_check(const SpecFile& input, const Options& options) {
  Report r;
  std::ostringstream text;
  json& d = r.data;
  d["command"] = "check";
  d["input"] = input.name;

  GluingFamily fam;
  try {
    fam = family_of(input);
  } catch (const std::invalid_argument& e) {
    text << "invalid input: " << e.what() << '\n';
    d["error"] = e.what();
    r.exit_status = kInvalidInput;
    d["exit_status"] = r.exit_status;
    r.text = text.str();
    return r;
  }
  const std::size_t n = fam.size();
  d["indices"] = fam.labels;
  text << "family " << input.name << " over " << describe(fam, all_indices(fam)) << '\n';

  json issues = json::array();
  bool structural = false;
  for (const auto& issue : validate_family(fam)) {
    issues.push_back(issue.message);
    if (issue.kind != FamilyIssue::Kind::surjectivity) {
      structural = true;
      text << "  " << issue.message << '\n';
    }
  }
  d["validation"] = {{"ok", issues.empty()}, {"issues", issues}};
  if (structural) {
    text << "validation: FAIL\n";
    r.exit_status = kInvalidInput;
    d["exit_status"] = r.exit_status;
    r.text = text.str();
    return r;
  }
  text << "validation: " << (issues.empty() ? "ok" : "maps not all surjective") << '\n';

  const DistributiveFamilyReport dist = check_distributive_family(fam, options.cap);
  d["distributive"] = distributive_json(fam, dist, text);
  if (!dist.non_surjective.empty()) {
    text << "cocycle and extension checks need surjective maps; skipped\n";
    r.exit_status = kHypothesisFailed;
    d["exit_status"] = r.exit_status;
    r.text = text.str();
    return r;
  }

  bool all_pass = true;
  const MultiPullback bp = build_pullback(fam, all_indices(fam));
  json projections = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const ProjectionImage img = projection_surjective(bp, i);
    all_pass = all_pass && img.surjective;
    projections.push_back({{"piece", fam.labels[i]}, {"surjective", img.surjective}, {"image", subspace_to_json(img.image)}});
    if (!img.surjective) {
      text << "  B^π -> B_" << fam.labels[i] << " has image of dim " << img.image.dim() << " < " << fam.pieces[i]->dim() << '\n';
    }
  }
  d["pullback_dim"] = bp.space.subspace.dim();
  d["projections"] = projections;
  text << "dim B^π = " << bp.space.subspace.dim() << "; projections surjective: "
       << (std::all_of(projections.begin(), projections.end(), [](const json& p) { return p["surjective"].get<bool>(); }) ? "true" : "false")
       << '\n';

  const bool condition2_runs = n <= options.max_j;
  std::optional<TheoremReport> theorem;
  CocycleReport cocycle;
  std::vector<ExtensionCheck> cond2;
  std::vector<ExtensionCheck> cond3;
  if (dist.verdict == Verdict::yes && condition2_runs) {
    theorem = check_theorem_equivalence(fam, options.cap, options.max_j);
    cocycle = theorem->cocycle;
    cond2 = theorem->condition2;
    cond3 = theorem->condition3;
  } else {
    cocycle = check_cocycle(fam);
    cond3 = check_condition3(fam);
    if (condition2_runs) cond2 = check_condition2(fam, options.max_j);
  }

  d["cocycle"] = cocycle_json(fam, cocycle, text);
  all_pass = all_pass && cocycle.overall;

  if (condition2_runs) {
    auto s = summarize_extensions(fam, cond2, "condition (2), every K and k", text);
    d["condition2"] = s.data;
    all_pass = all_pass && s.holds;
  } else {
    d["condition2"] = {{"holds", nullptr}, {"skipped", "index set larger than --max-j"}};
    text << "condition (2): skipped, " << n << " indices exceed --max-j " << options.max_j << '\n';
  }
  {
    auto s = summarize_extensions(fam, cond3, "condition (3), every pair and third index", text);
    d["condition3"] = s.data;
    all_pass = all_pass && s.holds;
  }

  if (theorem) {
    d["theorem"] = {{"applicable", true},
                    {"cocycle", theorem->cocycle_holds},
                    {"condition2", theorem->condition2_holds},
                    {"condition3", theorem->condition3_holds},
                    {"consistent", theorem->consistent}};
    text << "equivalence of cocycle, (2), (3): " << (theorem->consistent ? "consistent" : "INCONSISTENT (tool bug)")
         << '\n';
    all_pass = all_pass && theorem->consistent;
  } else {
    d["theorem"] = {{"applicable", false},
                    {"reason", dist.verdict != Verdict::yes ? "family is not distributive" : "condition (2) skipped"}};
    text << "equivalence of cocycle, (2), (3): not applicable ("
         << (dist.verdict != Verdict::yes ? "family is not distributive" : "condition (2) skipped") << ")\n";
  }

  if (!theorem) r.exit_status = kHypothesisFailed;
  else if (!all_pass) r.exit_status = kCheckFailed;
  else r.exit_status = kPass;
  d["exit_status"] = r.exit_status;
  text << "result: " << pass_fail(r.exit_status == kPass) << '\n';
  r.text = text.str();
  return r;
}

Report cmd_glue(const SpecFile& input, const Options& options) {
  Report r;
  std::ostringstream text;
  json& d = r.data;
  d["command"] = "glue";
  d["input"] = input.name;
  if (!input.gluing) {
    text << "glue expects a finite-gluing spec, got " << input.kind << '\n';
    d["error"] = "wrong kind: " + input.kind;
    r.exit_status = kInvalidInput;
    d["exit_status"] = r.exit_status;
    r.text = text.str();
    return r;
  }
  const FiniteGluingSpec spec = in_label_order(*input.gluing);
  IndexSet everything(spec.size());
  for (std::size_t i = 0; i < everything.size(); ++i) everything[i] = i;

  auto point_name = [&](const PointRef& p) { return spec.spaces[p.first][p.second] + "_" + spec.labels[p.first]; };
  const GluedSpace g = glue(spec, everything);
  json classes = json::array();
  text << "glued space: " << g.classes.size() << " classes\n";
  for (const auto& cls : g.classes) {
    json members = json::array();
    std::string line;
    for (const auto& p : cls) {
      members.push_back(point_name(p));
      line += (line.empty() ? "" : ", ") + point_name(p);
    }
    classes.push_back(members);
    if (cls.size() > 1) text << "  {" << line << "}\n";
  }
  d["class_count"] = g.classes.size();
  d["classes"] = classes;

  bool all_pass = true;
  auto embedding_json = [&](const IndexSet& k) {
    const EmbeddingCheck e = check_embedding(spec, k, everything);
    const GluedSpace small = glue(spec, k);
    json merged = json::array();
    for (const auto& [a, b] : e.merged) {
      merged.push_back({point_name(small.classes[a].front()), point_name(small.classes[b].front())});
    }
    all_pass = all_pass && e.injective;
    std::vector<std::string> names;
    for (auto i : k) names.push_back(spec.labels[i]);
    text << "  " << (k.size() == 1 ? "piece " : "partial gluing ") << "{";
    for (std::size_t t = 0; t < names.size(); ++t) text << (t ? "," : "") << names[t];
    text << "}: " << (e.injective ? "embedded" : "NOT embedded");
    if (!e.injective) {
      text << " (";
      for (std::size_t t = 0; t < merged.size(); ++t) {
        text << (t ? "; " : "") << merged[t][0].get<std::string>() << " and " << merged[t][1].get<std::string>() << " merge";
      }
      text << ")";
    }
    text << '\n';
    return json{{"over", names}, {"embedded", e.injective}, {"merged", merged}};
  };

  json pieces = json::array();
  text << "pieces:\n";
  for (std::size_t i = 0; i < spec.size(); ++i) pieces.push_back(embedding_json({i}));
  json pairs = json::array();
  text << "partial gluings:\n";
  for (std::size_t i = 0; i < spec.size(); ++i)
    for (std::size_t j = i + 1; j < spec.size(); ++j) pairs.push_back(embedding_json({i, j}));
  d["pieces"] = pieces;
  d["partial_gluings"] = pairs;

  if (options.duality) {
    const DualityReport dr = duality_check(spec);
    d["duality"] = {{"consistent", dr.consistent}, {"pullback_dim", dr.pullback_dim},
                    {"class_count", dr.class_count}, {"mismatches", dr.mismatches}};
    text << "duality check: " << (dr.consistent ? "consistent" : "MISMATCH (tool bug)") << " (dim B^π = "
         << dr.pullback_dim << ", classes = " << dr.class_count << ")\n";
    for (const auto& m : dr.mismatches) text << "  " << m << '\n';
    all_pass = all_pass && dr.consistent;
  }
  r.exit_status = all_pass ? kPass : kCheckFailed;
  d["exit_status"] = r.exit_status;
  text << "result: " << pass_fail(all_pass) << '\n';
  r.text = text.str();
  return r;
}

RepairResult cmd_repair(const SpecFile& input, const Options& options) {
  RepairResult out;
  Report& r = out.report;
  std::ostringstream text;
  json& d = r.data;
  d["command"] = "repair";
  d["input"] = input.name;
  auto finish = [&](int status) {
    r.exit_status = status;
    d["exit_status"] = status;
    r.text = text.str();
    return out;
  };
  if (!input.family) {
    text << "repair expects an algebra-family spec, got " << input.kind << '\n';
    d["error"] = "wrong kind: " + input.kind;
    return finish(kInvalidInput);
  }
  const GluingFamily fam = in_label_order(*input.family);
  RepairedFamily repaired;
  try {
    repaired = repair(fam, options.cap);
  } catch (const RepairRefused& e) {
    text << e.what() << '\n';
    json refusal = {{"reason", e.what()}};
    if (e.non_surjective_piece) refusal["non_surjective_piece"] = fam.labels[*e.non_surjective_piece];
    if (e.distributivity_witness) {
      json w = json::array();
      for (const auto& s : *e.distributivity_witness) w.push_back(subspace_to_json(s));
      refusal["distributivity_witness"] = w;
    }
    d["refused"] = refusal;
    return finish(kHypothesisFailed);
  } catch (const InvalidFamily& e) {
    text << e.what() << '\n';
    d["error"] = e.what();
    return finish(kInvalidInput);
  } catch (const HypothesisError& e) {
    text << e.what() << '\n';
    d["refused"] = {{"reason", e.what()}};
    return finish(kHypothesisFailed);
  }

  const GluingFamily& rf = repaired.family;
  text << "repaired family over " << describe(rf, all_indices(rf)) << "; dim B^π = " << repaired.original.space.subspace.dim()
       << '\n';
  json overlaps = json::array();
  for (const auto& [key, alg] : rf.overlaps) {
    const std::size_t before = fam.overlap(key.first, key.second)->dim();
    overlaps.push_back({{"pair", {rf.labels[key.first], rf.labels[key.second]}}, {"original_dim", before}, {"repaired_dim", alg->dim()}});
    text << "  " << overlap_name(rf, key.first, key.second) << ": dim " << before << " -> " << alg->dim() << '\n';
  }
  d["overlaps"] = overlaps;
  d["comparison_bijective"] = repaired.comparison_bijective;
  text << "canonical map B^π -> repaired multi-pullback bijective: " << (repaired.comparison_bijective ? "true" : "false") << '\n';

  SpecOptions carried;
  carried.cap = options.cap;
  carried.max_j = options.max_j;
  const json emitted = family_to_json(rf, carried);
  const SpecFile reparsed = parse_spec(emitted.dump(), input.name + " (repaired)");
  const bool round_trip = same_family(*reparsed.family, rf);
  d["round_trip"] = round_trip;
  text << "emitted spec re-parses to the same family: " << (round_trip ? "true" : "false") << '\n';

  const Report recheck = cmd_check(reparsed, options);
  const bool cocycle_ok = recheck.data.at("cocycle").at("overall").get<bool>();
  d["recheck"] = recheck.data;
  text << "re-check of repaired family: cocycle " << (cocycle_ok ? "true" : "false") << ", exit " << recheck.exit_status << '\n';

  out.repaired_spec = emitted;
  const bool ok = round_trip && cocycle_ok && recheck.exit_status == kPass && repaired.comparison_bijective;
  text << "result: " << pass_fail(ok) << '\n';
  return finish(ok ? kPass : kCheckFailed);
}

int run(int argc, char** argv) {
  CLI::App app{"mpb: multi-pullbacks, the cocycle condition and finite gluings"};
  app.require_subcommand(1);

  struct Common {
    std::string path;
    std::string fixture;
    SpecOptions flags;
    bool json = false;
  };
  Common common;
  bool duality = false;
  std::string output;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", common.path, "JSON spec file");
    sub->add_option("--fixture", common.fixture, "built-in input: example1..3, tstar, tcirc-a, tcirc-c");
    sub->add_option("--cap", common.flags.cap, "lattice closure cap (default 10000)");
    sub->add_option("--max-j", common.flags.max_j, "largest index set for condition (2) (default 8)");
    sub->add_option("--chain-length", common.flags.chain_length, "points per interval in fixtures (default 3)");
    sub->add_flag("--json", common.json, "emit the report as JSON");
  };
  CLI::App* check = app.add_subcommand("check", "run validation, distributivity, cocycle and extension checks");
  CLI::App* glue_cmd = app.add_subcommand("glue", "glue a finite spec and report embeddings");
  CLI::App* repair_cmd = app.add_subcommand("repair", "re-present a family so that it satisfies the cocycle condition");
  add_common(check);
  add_common(glue_cmd);
  add_common(repair_cmd);
  glue_cmd->add_flag("--duality", duality, "also compare against the dual multi-pullback");
  repair_cmd->add_option("-o,--output", output, "write the repaired spec here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalidInput;
  }

  SpecFile input;
  Options options;
  try {
    if (common.fixture.empty() == common.path.empty()) throw SpecError("give exactly one of a spec file or --fixture");
    if (!common.fixture.empty()) {
      input = fixture_input(common.fixture, common.flags.chain_length.value_or(kDefaultChainLength));
    } else {
      input = load_spec_file(common.path);
    }
    options = merge_options(input.options, Options{}, common.flags);
    options.duality = duality;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  Report report;
  std::optional<json> repaired_spec;
  try {
    if (check->parsed()) {
      report = cmd_check(input, options);
    } else if (glue_cmd->parsed()) {
      report = cmd_glue(input, options);
    } else {
      RepairResult rr = cmd_repair(input, options);
      report = std::move(rr.report);
      repaired_spec = std::move(rr.repaired_spec);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const HypothesisError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kHypothesisFailed;
  }

  if (repaired_spec && !output.empty()) {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "error: cannot write '" << output << "'\n";
      return kInvalidInput;
    }
    out << repaired_spec->dump(2) << '\n';
    report.text += "repaired spec written to " + output + "\n";
    report.data["repaired_spec_path"] = output;
  } else if (repaired_spec) {
    report.data["repaired_spec"] = *repaired_spec;
  }

  if (common.json) {
    std::cout << report.data.dump(2) << '\n';
  } else {
    std::cout << report.text;
    if (repaired_spec && output.empty()) std::cout << repaired_spec->dump(2) << '\n';
  }
  return report.exit_status;
}

}  // namespace mpb::cli
