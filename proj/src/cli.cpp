#include "hankel/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hankel/classifier.hpp"
#include "hankel/combinatorics.hpp"
#include "hankel/document.hpp"
#include "hankel/oracle.hpp"
#include "hankel/polyeval.hpp"

namespace hankel::cli {

namespace {

using nlohmann::json;

std::string num(double x) {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());
  ss << std::setprecision(12) << x;
  return ss.str();
}

std::string vec(const VectorXd& x) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) s += (i ? ", " : "") + num(x[i]);
  return s + ")";
}

std::string rational(const Rational& q) { return q.str(); }

struct Settings {
  bool json = false;
  bool naive = false;
  bool verify = false;
  bool with_gradient = false;
  int starts = 64;
  std::uint64_t seed = 0;
  int points = 1000;
  std::optional<double> tolerance;
  std::string file;
  std::string point;
  int order = 0;
  int modulus = 0;
  std::string pattern;
  std::string sequence;
};

ClassifyOptions classify_options(const Settings& s, const TensorDocument& doc) {
  ClassifyOptions o;
  if (doc.tolerance) o.tolerance = *doc.tolerance;
  if (s.tolerance) o.tolerance = *s.tolerance;
  o.oracle_starts = s.starts;
  o.seed = s.seed;
  return o;
}

Verdict classify_document(const TensorDocument& doc, const ClassifyOptions& o) {
  return doc.circulant() ? classify(doc.spec(), o) : classify(doc.generator(), o);
}

void print_verdict(std::ostream& out, const Verdict& v) {
  out << "status: " << to_string(v.status) << "\n";
  out << "case: " << to_string(v.tag) << "\n";
  out << "tolerance: " << num(v.tolerance) << "\n";
  if (v.power_sum) {
    out << "certificate power_sum: v0 = " << num(v.power_sum->v0) << ", t = " << num(v.power_sum->t)
        << "\n";
  }
  if (v.strong_hankel) {
    const auto& s = *v.strong_hankel;
    out << "certificate strong_hankel: " << (s.pass ? "PSD" : "not PSD")
        << ", eigen floor = " << num(s.eigen_floor);
    if (s.structure_checked) out << ", rank structure " << (s.structure_ok ? "ok" : "MISMATCH");
    out << "\n";
  }
  if (v.witness) {
    const auto& w = *v.witness;
    out << "witness: " << vec(w.point.x) << " [" << w.point.label << "]\n";
    out << "witness value: " << num(w.value) << " (normalized " << num(w.normalized) << ", "
        << (w.confirmed ? "confirmed" : "NOT confirmed") << ")\n";
  }
  if (v.evidence) {
    out << "oracle evidence (not a certificate): min " << num(v.evidence->min_value) << " at "
        << vec(v.evidence->argmin) << " [" << v.evidence->source << "], seed "
        << v.evidence->seed << "\n";
  }
  for (const auto& note : v.notes) out << "note: " << note << "\n";
}

int cmd_classify(const Settings& s, std::ostream& out) {
  if (s.verify) {
    const VerdictDocument recorded = parse_verdict_document(read_file(s.file));
    ClassifyOptions o = classify_options(s, recorded.input);
    if (!s.tolerance) o.tolerance = recorded.tolerance;
    const Verdict v = classify_document(recorded.input, o);
    const GeneratingVector<double> gen = recorded.input.generator();

    std::vector<std::string> failures;
    if (v.status != recorded.status) {
      failures.push_back("status " + to_string(v.status) + " != recorded " +
                         to_string(recorded.status));
    }
    if (v.tag != recorded.tag) {
      failures.push_back("case " + to_string(v.tag) + " != recorded " + to_string(recorded.tag));
    }
    if (recorded.witness) {
      if (recorded.witness->size() != gen.dim()) {
        failures.push_back("witness dimension mismatch");
      } else {
        const double f = eval_fast(gen, *recorded.witness);
        const double scale = std::max(1.0, std::abs(*recorded.witness_value));
        if (!(f < 0.0)) failures.push_back("recorded witness does not evaluate negative");
        if (std::abs(f - *recorded.witness_value) > 1e-9 * scale) {
          failures.push_back("recorded witness value " + num(*recorded.witness_value) +
                             " != recomputed " + num(f));
        }
      }
    }
    if (recorded.power_sum) {
      const auto id = verify_power_sum(gen, *recorded.power_sum, s.points, s.seed);
      if (!id.pass) failures.push_back("recorded power-sum certificate fails the identity check");
    }
    if (s.json) {
      out << json{{"verified", failures.empty()}, {"status", to_string(v.status)},
                  {"failures", failures}}
                 .dump(2)
          << "\n";
    } else {
      out << "status: " << to_string(v.status) << "\n";
      for (const auto& f : failures) out << "mismatch: " << f << "\n";
      out << "verify: " << (failures.empty() ? "PASS" : "FAIL") << "\n";
    }
    return failures.empty() ? kOk : kVerifyFailed;
  }

  const TensorDocument doc = load_tensor_document(s.file);
  const Verdict v = classify_document(doc, classify_options(s, doc));
  if (s.json) {
    out << to_json(v, doc).dump(2) << "\n";
  } else {
    print_verdict(out, v);
  }
  return exit_code(v.status);
}

int cmd_eval(const Settings& s, std::ostream& out, std::ostream& err) {
  const TensorDocument doc = load_tensor_document(s.file);
  const GeneratingVector<double> gen = doc.generator();
  const std::vector<double> raw = parse_real_list(s.point);
  if (static_cast<int>(raw.size()) != gen.dim()) {
    err << "error: point has " << raw.size() << " entries, tensor dimension is " << gen.dim()
        << "\n";
    return kInputError;
  }
  const VectorXd x = Eigen::Map<const VectorXd>(raw.data(), static_cast<Eigen::Index>(raw.size()));
  const double f = eval_fast(gen, x);

  json j{{"f", f}};
  int code = kOk;
  std::optional<double> naive;
  if (s.naive) {
    if (dense_size(gen.order(), gen.dim()) > kDenseCap) {
      err << "note: n^m exceeds the enumeration cap; naive cross-check skipped\n";
    } else {
      naive = eval_naive(gen, x);
      const double scale = std::max({std::abs(f), std::abs(*naive), 1e-300});
      if (std::abs(*naive - f) > 1e-10 * scale) code = kVerifyFailed;
      j["naive"] = *naive;
      j["agree"] = code == kOk;
    }
  }
  VectorXd g;
  if (s.with_gradient) {
    g = gradient(gen, x);
    j["gradient"] = std::vector<double>(g.begin(), g.end());
  }

  if (s.json) {
    out << j.dump(2) << "\n";
  } else {
    out << "f: " << num(f) << "\n";
    if (naive) out << "naive: " << num(*naive) << (code == kOk ? " (agrees)" : " (MISMATCH)") << "\n";
    if (s.with_gradient) out << "gradient: " << vec(g) << "\n";
  }
  return code;
}

int cmd_sums(const Settings& s, std::ostream& out, std::ostream& err) {
  if (s.order < 2 || s.modulus < 2) {
    err << "error: sums needs m >= 2 and r >= 2\n";
    return kInputError;
  }
  const std::vector<long long> pattern = parse_integer_list(s.pattern);
  const ResidueSumTable t = residue_sum_table(s.order, s.modulus, pattern);
  if (s.json) {
    out << to_json(t).dump(2) << "\n";
  } else {
    out << "m = " << t.order << ", r = " << t.modulus << ", pattern " << format_pattern(t.pattern)
        << "\n";
    for (std::size_t j = 0; j < t.sums.size(); ++j) out << "S_" << j << " = " << t.sums[j] << "\n";
    out << "total = " << t.total() << "\n";
  }
  return kOk;
}

int cmd_signfacts(const Settings& s, std::ostream& out) {
  const auto rows = sign_fact_report();
  const bool all = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
  if (s.json) {
    json j = json::array();
    for (const auto& r : rows) j.push_back(to_json(r));
    out << json{{"rows", j}, {"all_pass", all}}.dump(2) << "\n";
  } else {
    for (const auto& r : rows) {
      out << (r.pass ? "PASS" : "FAIL") << "  m=" << r.order << " r=" << r.modulus << " pattern "
          << format_pattern(r.pattern);
      for (std::size_t j = 0; j < r.sums.size(); ++j) out << " S_" << j << "=" << r.sums[j];
      out << "  expect " << r.expected << "  [" << r.fact << "]\n";
    }
    out << (all ? "all sign facts hold" : "SIGN FACT FAILURE") << "\n";
  }
  return all ? kOk : kVerifyFailed;
}

int cmd_certify(const Settings& s, std::ostream& out) {
  const TensorDocument doc = load_tensor_document(s.file);
  const Verdict v = classify_document(doc, classify_options(s, doc));
  const GeneratingVector<double> gen = doc.generator();

  json j{{"status", to_string(v.status)}, {"case", to_string(v.tag)}};
  bool ok = v.status == Status::PSD && v.power_sum && v.strong_hankel;
  std::ostringstream text;
  text << "status: " << to_string(v.status) << "\ncase: " << to_string(v.tag) << "\n";
  if (!ok) {
    text << "no certificate: only PSD verdicts carry certificates\n";
    j["verified"] = false;
  } else {
    const IdentityCheck id = verify_power_sum(gen, *v.power_sum, s.points, s.seed);
    const StrongHankelCheck& sh = *v.strong_hankel;
    const bool strong_ok = sh.pass && (!sh.structure_checked || sh.structure_ok);
    ok = id.pass && strong_ok;
    text << "power_sum: v0 = " << num(v.power_sum->v0) << ", t = " << num(v.power_sum->t) << ", "
         << id.points << " points (seed " << s.seed << "), max relative error "
         << num(id.max_relative_error) << " -> " << (id.pass ? "verified" : "FAILED") << "\n";
    text << "strong_hankel: eigen floor " << num(sh.eigen_floor) << ", max |a_ij| "
         << num(sh.max_abs);
    if (sh.structure_checked) text << ", rank structure " << (sh.structure_ok ? "ok" : "MISMATCH");
    text << " -> " << (strong_ok ? "verified" : "FAILED") << "\n";
    j["power_sum"] = {{"v0", v.power_sum->v0}, {"t", v.power_sum->t}, {"points", id.points},
                      {"seed", s.seed}, {"max_relative_error", id.max_relative_error},
                      {"verified", id.pass}};
    j["strong_hankel"] = {{"eigen_floor", sh.eigen_floor}, {"max_abs", sh.max_abs},
                          {"structure_checked", sh.structure_checked},
                          {"structure_ok", sh.structure_ok}, {"verified", strong_ok}};
    j["verified"] = ok;
  }
  if (s.json) {
    out << j.dump(2) << "\n";
  } else {
    out << text.str();
  }
  return ok ? kOk : kVerifyFailed;
}

int cmd_oracle(const Settings& s, std::ostream& out) {
  const TensorDocument doc = load_tensor_document(s.file);
  SphereMinOptions o;
  o.starts = s.starts;
  o.seed = s.seed;
  const SphereMinResult r = sphere_min(doc.generator(), o);
  if (s.json) {
    out << to_json(r).dump(2) << "\n";
  } else {
    out << "min: " << num(r.min_value) << "\n";
    out << "argmin: " << vec(r.argmin) << "\n";
    out << "source: " << r.source << "\n";
    out << "starts: " << r.starts << " (" << r.converged_starts << " converged)\n";
    out << "seed: " << r.seed << "\n";
  }
  return kOk;
}

int cmd_theorem1(const Settings& s, std::ostream& out) {
  const PeriodicSequence seq(parse_rational_list(s.sequence));
  const auto d = alternating_binomial_sums(seq, s.order);
  const CirculantVerdict verdict = circulant_verdict(seq, s.order);
  const std::string name =
      verdict == CirculantVerdict::ForcedConstant ? "ForcedConstant" : "MixedSigns";
  if (s.json) {
    json sums = json::array();
    for (const auto& x : d) sums.push_back(rational(x));
    out << json{{"M", s.order}, {"period", seq.period()}, {"sums", sums}, {"verdict", name}}.dump(2)
        << "\n";
  } else {
    out << "M = " << s.order << ", p = " << seq.period() << "\n";
    for (std::size_t i = 0; i < d.size(); ++i) out << "D_" << i << " = " << rational(d[i]) << "\n";
    out << "verdict: " << name << "\n";
  }
  return kOk;
}

int cmd_hankelmatrix(const Settings& s, std::ostream& out) {
  const TensorDocument doc = load_tensor_document(s.file);
  const MatrixXd a = hankel_matrix(doc.generator());
  const MatrixPsdResult psd = matrix_psd(a);
  if (s.json) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      rows.push_back(std::vector<double>(a.row(i).begin(), a.row(i).end()));
    }
    const VectorXd& ev = psd.eigen.eigenvalues;
    out << json{{"size", a.rows()},
                {"matrix", rows},
                {"eigenvalues", std::vector<double>(ev.begin(), ev.end())},
                {"min_eigenvalue", psd.min_eigenvalue},
                {"psd", psd.psd}}
               .dump(2)
        << "\n";
  } else {
    out << "size: " << a.rows() << "\n";
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = 0; j < a.cols(); ++j) out << (j ? " " : "") << num(a(i, j));
      out << "\n";
    }
    out << "eigenvalues: " << vec(psd.eigen.eigenvalues) << "\n";
    out << "psd: " << (psd.psd ? "yes" : "no") << " (min eigenvalue " << num(psd.min_eigenvalue)
        << ")\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positive semi-definiteness of generalized anti-circulant Hankel tensors",
               "hankel-psd"};
  app.require_subcommand(1);
  Settings s;

  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", s.json, "Machine-readable output"); };
  auto add_oracle = [&](CLI::App* sub) {
    sub->add_option("--starts", s.starts, "Oracle random starts")->check(CLI::PositiveNumber);
    sub->add_option("--seed", s.seed, "RNG seed");
  };

  auto* classify_cmd = app.add_subcommand("classify", "Decide PSD from the closed-form criteria");
  classify_cmd->add_option("file", s.file, "Tensor spec document (verdict document with --verify)")
      ->required();
  classify_cmd->add_option("--tolerance", s.tolerance, "Relative tolerance; 0 = exact")
      ->check(CLI::NonNegativeNumber);
  classify_cmd->add_flag("--verify", s.verify, "Re-verify a verdict document");
  add_oracle(classify_cmd);
  add_json(classify_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate f(x) = A x^m");
  eval_cmd->add_option("file", s.file, "Tensor spec document")->required();
  eval_cmd->add_option("x", s.point, "Comma-separated point, e.g. 1,-1,0")->required();
  eval_cmd->add_flag("--naive", s.naive, "Cross-check by direct enumeration");
  eval_cmd->add_flag("--gradient", s.with_gradient, "Also print the gradient");
  add_json(eval_cmd);

  auto* sums_cmd = app.add_subcommand("sums", "Exact residue-class sums S_j for a pattern");
  sums_cmd->add_option("m", s.order, "Order m")->required();
  sums_cmd->add_option("r", s.modulus, "Modulus r")->required();
  sums_cmd->add_option("pattern", s.pattern, "Integer pattern, e.g. 1,-1")->required();
  add_json(sums_cmd);

  auto* facts_cmd = app.add_subcommand("signfacts", "Recompute the index-3 sign facts");
  add_json(facts_cmd);

  auto* certify_cmd = app.add_subcommand("certify", "Classify and re-verify certificates");
  certify_cmd->add_option("file", s.file, "Tensor spec document")->required();
  certify_cmd->add_option("--points", s.points, "Identity check points")->check(CLI::PositiveNumber);
  certify_cmd->add_option("--tolerance", s.tolerance, "Relative tolerance; 0 = exact")
      ->check(CLI::NonNegativeNumber);
  add_oracle(certify_cmd);
  add_json(certify_cmd);

  auto* oracle_cmd = app.add_subcommand("oracle", "Multistart minimum of f on the unit sphere");
  oracle_cmd->add_option("file", s.file, "Tensor spec document")->required();
  add_oracle(oracle_cmd);
  add_json(oracle_cmd);

  auto* t1_cmd = app.add_subcommand("theorem1", "Alternating binomial sums of a periodic sequence");
  t1_cmd->add_option("M", s.order, "Binomial order M >= 1")->required()->check(CLI::PositiveNumber);
  t1_cmd->add_option("u", s.sequence, "One period, e.g. 1,2,3 or 1/2,-1")->required();
  add_json(t1_cmd);

  auto* hm_cmd = app.add_subcommand("hankelmatrix", "Associated Hankel matrix and its spectrum");
  hm_cmd->add_option("file", s.file, "Tensor spec document")->required();
  add_json(hm_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(s, out);
    if (eval_cmd->parsed()) return cmd_eval(s, out, err);
    if (sums_cmd->parsed()) return cmd_sums(s, out, err);
    if (facts_cmd->parsed()) return cmd_signfacts(s, out);
    if (certify_cmd->parsed()) return cmd_certify(s, out);
    if (oracle_cmd->parsed()) return cmd_oracle(s, out);
    if (t1_cmd->parsed()) return cmd_theorem1(s, out);
    if (hm_cmd->parsed()) return cmd_hankelmatrix(s, out);
  } catch (const TheoremViolation& e) {
    err << "verification failure: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const DocumentError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace hankel::cli
