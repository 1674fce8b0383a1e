#pragma once

// JSON spec files. Two kinds:
//   "algebra-family": algebras by structure constants, homs by matrices;
//   "finite-gluing":  point sets and identification pairs.
// Rationals are JSON strings "p" or "p/q", never numbers.

#include "mpb/family.hpp"
#include "mpb/finset.hpp"
#include "mpb/lattice.hpp"
#include "mpb/multipullback.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace mpb {

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SpecOptions {
  std::optional<std::size_t> cap;
  std::optional<std::size_t> max_j;
  std::optional<std::size_t> chain_length;
};

struct SpecFile {
  std::string kind;  // "algebra-family" or "finite-gluing"
  std::string name;
  SpecOptions options;
  std::optional<GluingFamily> family;
  std::optional<FiniteGluingSpec> gluing;
};

/// Throws SpecError; parse errors carry the line and column, schema errors
/// the JSON path of the offending field.
SpecFile parse_spec(const std::string& text, const std::string& name = "<input>");
SpecFile load_spec_file(const std::string& path);

nlohmann::json family_to_json(const GluingFamily& fam, const SpecOptions& options = {});
nlohmann::json gluing_to_json(const FiniteGluingSpec& spec, const SpecOptions& options = {});

GluingFamily family_from_json(const nlohmann::json& doc);
FiniteGluingSpec gluing_from_json(const nlohmann::json& doc);

/// Exact structural equality: labels, presentations, overlap sharing, maps.
bool same_family(const GluingFamily& a, const GluingFamily& b);

nlohmann::json rational_vector_to_json(const VectorQ& v);
nlohmann::json subspace_to_json(const SubspaceBasis& s);
nlohmann::json matrix_to_json(const MatrixQ& m);

}  // namespace mpb
