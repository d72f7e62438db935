#include "hankel/document.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hankel {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

/// Strips one pair of enclosing parentheses and maps U+2212 to '-'.
std::string normalize_number(std::string_view token) {
  std::string s = trim(token);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.compare(i, 3, "\xE2\x88\x92") == 0) {
      out += '-';
      i += 2;
    } else {
      out += s[i];
    }
  }
  if (!out.empty() && out.front() == '+') out.erase(0, 1);
  return out;
}

std::vector<std::string> split(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(std::string(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

BigInt parse_digits(const std::string& digits, std::string_view context) {
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw DocumentError("malformed number '" + std::string(context) + "'");
  }
  // cpp_int reads a leading 0 as an octal prefix
  const auto first = digits.find_first_not_of('0');
  return first == std::string::npos ? BigInt(0) : BigInt(digits.substr(first));
}

double number_at(const json& value, const std::string& pointer) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    try {
      return parse_real(value.get<std::string>());
    } catch (const DocumentError& e) {
      throw DocumentError(pointer + ": " + e.what());
    }
  }
  throw DocumentError(pointer + ": expected a number or decimal string");
}

int integer_at(const json& doc, const std::string& key, const std::string& where) {
  const std::string pointer = where + "/" + key;
  if (!doc.contains(key)) throw DocumentError(pointer + ": required field missing");
  const json& value = doc.at(key);
  double x = 0.0;
  if (value.is_number_integer()) return value.get<int>();
  x = number_at(value, pointer);
  if (x != std::floor(x) || std::abs(x) > 1e9) {
    throw DocumentError(pointer + ": expected an integer");
  }
  return static_cast<int>(x);
}

std::vector<double> array_at(const json& doc, const std::string& key, const std::string& where) {
  const std::string pointer = where + "/" + key;
  const json& value = doc.at(key);
  if (!value.is_array()) throw DocumentError(pointer + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(number_at(value[i], pointer + "/" + std::to_string(i)));
  }
  return out;
}

json vector_json(const VectorXd& x) { return json(std::vector<double>(x.begin(), x.end())); }

VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string big_string(const BigInt& x) { return x.str(); }

}  // namespace

double parse_real(std::string_view token) {
  const std::string s = normalize_number(token);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw DocumentError("malformed number '" + std::string(token) + "'");
  }
  return value;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& part : split(text)) out.push_back(parse_real(part));
  return out;
}

std::vector<long long> parse_integer_list(std::string_view text) {
  std::vector<long long> out;
  for (const auto& part : split(text)) {
    const std::string s = normalize_number(part);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw DocumentError("malformed integer '" + part + "'");
    }
    out.push_back(value);
  }
  return out;
}

Rational parse_rational(std::string_view token) {
  std::string s = normalize_number(token);
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.erase(0, 1);
  }
  Rational value;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const BigInt num = parse_digits(s.substr(0, slash), token);
    const BigInt den = parse_digits(s.substr(slash + 1), token);
    if (den == 0) throw DocumentError("zero denominator in '" + std::string(token) + "'");
    value = Rational(num, den);
  } else {
    long long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
      const std::string exp = s.substr(e + 1);
      const auto [ptr, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), exponent);
      if (exp.empty() || ec != std::errc() || ptr != exp.data() + exp.size()) {
        throw DocumentError("malformed number '" + std::string(token) + "'");
      }
      s.resize(e);
    }
    std::string digits = s;
    if (const auto dot = s.find('.'); dot != std::string::npos) {
      digits = s.substr(0, dot) + s.substr(dot + 1);
      exponent -= static_cast<long long>(s.size() - dot - 1);
    }
    value = Rational(parse_digits(digits, token));
    const BigInt ten_power = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::llabs(exponent)));
    value = exponent >= 0 ? value * Rational(ten_power) : value / Rational(ten_power);
  }
  return negative ? Rational(-value) : value;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (const auto& part : split(text)) out.push_back(parse_rational(part));
  return out;
}

CirculantSpec<double> TensorDocument::spec() const {
  if (!index) throw DocumentError("document has no circulant index r");
  return CirculantSpec<double>(order, dim, *index, to_vector(seed));
}

GeneratingVector<double> TensorDocument::generator() const {
  if (index) return spec().expand();
  return GeneratingVector<double>(order, dim, to_vector(genvec));
}

TensorDocument parse_tensor_object(const json& doc, const std::string& where) {
  if (!doc.is_object()) throw DocumentError((where.empty() ? "/" : where) + ": expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "m" && key != "n" && key != "r" && key != "seed" && key != "genvec" &&
        key != "tolerance") {
      throw DocumentError(where + "/" + key + ": unknown field");
    }
  }

  TensorDocument out;
  out.order = integer_at(doc, "m", where);
  out.dim = integer_at(doc, "n", where);
  const bool has_r = doc.contains("r");
  const bool has_seed = doc.contains("seed");
  const bool has_genvec = doc.contains("genvec");
  if (has_r != has_seed) throw DocumentError(where + "/seed: \"r\" and \"seed\" must appear together");
  if (has_r == has_genvec) {
    throw DocumentError(where + "/genvec: exactly one of {r + seed, genvec} is required");
  }
  if (has_r) {
    out.index = integer_at(doc, "r", where);
    out.seed = array_at(doc, "seed", where);
  } else {
    out.genvec = array_at(doc, "genvec", where);
  }
  if (doc.contains("tolerance")) {
    out.tolerance = number_at(doc.at("tolerance"), where + "/tolerance");
    if (*out.tolerance < 0.0) throw DocumentError(where + "/tolerance: must be >= 0");
  }

  // Surface structural violations here, annotated with the document location.
  try {
    (void)out.generator();
  } catch (const std::invalid_argument& e) {
    throw DocumentError((where.empty() ? "/" : where) + ": " + e.what());
  }
  return out;
}

TensorDocument parse_tensor_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw DocumentError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return parse_tensor_object(doc, "");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TensorDocument load_tensor_document(const std::string& path) {
  try {
    return parse_tensor_document(read_file(path));
  } catch (const DocumentError& e) {
    throw DocumentError(path + ": " + e.what());
  }
}

json to_json(const TensorDocument& doc) {
  json j;
  j["m"] = doc.order;
  j["n"] = doc.dim;
  if (doc.index) {
    j["r"] = *doc.index;
    j["seed"] = doc.seed;
  } else {
    j["genvec"] = doc.genvec;
  }
  if (doc.tolerance) j["tolerance"] = *doc.tolerance;
  return j;
}

json to_json(const SphereMinResult& result) {
  return json{{"min_value", result.min_value},
              {"argmin", vector_json(result.argmin)},
              {"starts", result.starts},
              {"converged_starts", result.converged_starts},
              {"seed", result.seed},
              {"source", result.source}};
}

json to_json(const Verdict& verdict, const TensorDocument& input) {
  json j;
  j["input"] = to_json(input);
  j["status"] = to_string(verdict.status);
  j["case"] = to_string(verdict.tag);
  j["tolerance"] = verdict.tolerance;
  json cert = json::object();
  if (verdict.power_sum) {
    cert["power_sum"] = {{"v0", verdict.power_sum->v0}, {"t", verdict.power_sum->t}};
  }
  if (verdict.strong_hankel) {
    const auto& s = *verdict.strong_hankel;
    cert["strong_hankel"] = {{"pass", s.pass},
                             {"eigen_floor", s.eigen_floor},
                             {"max_abs", s.max_abs},
                             {"period", s.period},
                             {"structure_checked", s.structure_checked},
                             {"structure_ok", s.structure_ok}};
  }
  if (!cert.empty()) j["certificate"] = cert;
  if (verdict.witness) {
    const auto& w = *verdict.witness;
    j["witness"] = {{"x", vector_json(w.point.x)},
                    {"label", w.point.label},
                    {"value", w.value},
                    {"normalized", w.normalized},
                    {"confirmed", w.confirmed}};
  }
  if (verdict.evidence) {
    j["evidence"] = to_json(*verdict.evidence);
    j["evidence"]["certified"] = false;
  }
  j["notes"] = verdict.notes;
  return j;
}

json to_json(const ResidueSumTable& table) {
  json sums = json::array();
  for (const auto& s : table.sums) sums.push_back(big_string(s));
  return json{{"m", table.order}, {"r", table.modulus}, {"pattern", table.pattern},
              {"sums", sums}, {"total", big_string(table.total())}};
}

json to_json(const SignFactRow& row) {
  json sums = json::array();
  for (const auto& s : row.sums) sums.push_back(big_string(s));
  return json{{"fact", row.fact},         {"m", row.order},
              {"r", row.modulus},         {"pattern", row.pattern},
              {"sums", sums},             {"expected", row.expected},
              {"result", row.pass ? "PASS" : "FAIL"}};
}

VerdictDocument parse_verdict_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw DocumentError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("input") || !doc.contains("status")) {
    throw DocumentError("/: verdict document needs \"input\" and \"status\"");
  }
  VerdictDocument out;
  out.input = parse_tensor_object(doc.at("input"), "/input");
  try {
    out.status = parse_status(doc.at("status").get<std::string>());
    if (doc.contains("case")) out.tag = parse_case_tag(doc.at("case").get<std::string>());
  } catch (const std::exception& e) {
    throw DocumentError(std::string("/status: ") + e.what());
  }
  if (doc.contains("tolerance")) out.tolerance = number_at(doc.at("tolerance"), "/tolerance");
  if (doc.contains("certificate") && doc.at("certificate").contains("power_sum")) {
    const json& p = doc.at("certificate").at("power_sum");
    out.power_sum = PowerSumCertificate{number_at(p.at("v0"), "/certificate/power_sum/v0"),
                                        number_at(p.at("t"), "/certificate/power_sum/t")};
  }
  if (doc.contains("witness")) {
    const json& w = doc.at("witness");
    out.witness = to_vector(array_at(w, "x", "/witness"));
    out.witness_value = number_at(w.at("value"), "/witness/value");
  }
  return out;
}

}  // namespace hankel
