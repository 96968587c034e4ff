#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cplp/classical.hpp"
#include "cplp/models.hpp"
#include "cplp/scan.hpp"
#include "cplp/sdp.hpp"

namespace cplp {

using Json = nlohmann::json;

/// Malformed or inconsistent input document.
class InputError : public Error {
 public:
  using Error::Error;
};

struct StateSpec {
  enum class Kind { thermal, eigenmixture, rotated_thermal };
  Kind kind = Kind::thermal;
  /// Canonical inverse temperature; +inf for the ground-state limit.
  double beta = 1.0;
  std::vector<double> populations;
  std::optional<HermitianOperator> generator;
};

std::string to_string(StateSpec::Kind kind);

/// A parsed model document:
///   {"family": "chain" | "two_qubit", "params": {...}, "state": {...}}
///   {"explicit": {"d_a", "d_b", "h_real", "h_imag"}, "state": {...}}
struct ModelFile {
  std::optional<ModelFamily> family;
  /// Coupling of the family document (unused for explicit models).
  double kappa = 0.0;
  Model model{HermitianOperator::zero(1), BipartiteSpace(1, 1)};
  /// H = H_A + H_B + V split, available for the built-in families.
  std::optional<LocalDecomposition> decomposition;
  std::optional<StateSpec> state;
  std::string description;
};

/// Reads and parses a JSON file; empty, unreadable or malformed files throw InputError.
Json load_json_file(const std::string& path);

ModelFile parse_model(const Json& doc, const Tolerances& tol = {});

/// Throws InputError when the document has no state.
DensityMatrix build_state(const ModelFile& mf, const Tolerances& tol = {});

/// {"energies": [[...]], "populations": [[...]]}.
ClassicalInstance parse_classical(const Json& doc);

/// A model document plus
///   "scan": {"param": "kappa", "grid": [lo, hi, n] | "values": [...],
///            "t_window": [lo, hi], "grid_points", "bisection_steps", "with_bound"}
/// and optionally "chain_lengths": [n, ...] for chain families.
struct ScanRecipe {
  ModelFamily family;
  std::string parameter = "kappa";
  std::vector<double> grid;
  ThresholdOptions options;
  bool with_bound = false;
  std::vector<int> chain_lengths;
};

ScanRecipe parse_recipe(const Json& doc, const Tolerances& tol = {});

/// "lo:hi:n".
std::vector<double> parse_grid(const std::string& spec);

Json matrix_to_json(const Matrix& m);
/// {"real": [[...]], "imag": [[...]]}, imag optional.
Matrix matrix_from_json(const Json& j);

/// {"d_a", "choi": {...}, "dual_y": {...}}.
Json certificate_to_json(const ChoiMatrix& choi, const Matrix& dual_y);
struct Certificate {
  ChoiMatrix choi;
  Matrix dual_y;
};
Certificate certificate_from_json(const Json& j);

}  // namespace cplp
