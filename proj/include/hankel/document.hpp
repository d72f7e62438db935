#pragma once

// Tensor spec documents and machine-readable result documents.
//
// A tensor spec is a JSON object (comments allowed):
//   { "m": 4, "n": 4, "r": 2, "seed": [1, 0.5] }      circulant form
//   { "m": 2, "n": 2, "genvec": [1, 0, 1] }           explicit generating vector
// with an optional "tolerance" (relative, default 1e-12). Array entries are
// JSON numbers or decimal strings such as "-0.25" or "(−1)". seed[i] is v_i,
// genvec[s] is v_s; both are 0-based.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hankel/classifier.hpp"
#include "hankel/combinatorics.hpp"
#include "hankel/oracle.hpp"
#include "hankel/tensor_core.hpp"

namespace hankel {

struct DocumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TensorDocument {
  int order = 0;
  int dim = 0;
  std::optional<int> index;
  std::vector<double> seed;
  std::vector<double> genvec;
  std::optional<double> tolerance;

  bool circulant() const { return index.has_value(); }
  CirculantSpec<double> spec() const;
  GeneratingVector<double> generator() const;
};

/// Errors carry a byte offset for syntax problems and a JSON pointer otherwise.
TensorDocument parse_tensor_document(std::string_view text);
TensorDocument parse_tensor_object(const nlohmann::json& doc, const std::string& where = "");
TensorDocument load_tensor_document(const std::string& path);

std::string read_file(const std::string& path);

/// One real: decimal, optionally wrapped in parentheses, ASCII '-' or U+2212 minus.
double parse_real(std::string_view token);
std::vector<double> parse_real_list(std::string_view text);
std::vector<long long> parse_integer_list(std::string_view text);
/// Exact rationals: "3", "-1/2", "0.125", "1e-3".
Rational parse_rational(std::string_view token);
std::vector<Rational> parse_rational_list(std::string_view text);

nlohmann::json to_json(const TensorDocument& doc);
nlohmann::json to_json(const SphereMinResult& result);
nlohmann::json to_json(const Verdict& verdict, const TensorDocument& input);
nlohmann::json to_json(const ResidueSumTable& table);
nlohmann::json to_json(const SignFactRow& row);

struct VerdictDocument {
  TensorDocument input;
  Status status = Status::Uncovered;
  CaseTag tag = CaseTag::NecessaryOnly;
  double tolerance = 1e-12;
  std::optional<PowerSumCertificate> power_sum;
  std::optional<VectorXd> witness;
  std::optional<double> witness_value;
};

VerdictDocument parse_verdict_document(std::string_view text);

}  // namespace hankel
