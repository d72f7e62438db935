#include "hankel/classifier.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hankel/polyeval.hpp"

namespace hankel {

namespace {

constexpr double kConfirmTolerance = 1e-9;
constexpr double kStrongWitness = 1e-8;

double max_abs(const VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

bool same(double a, double b, double tol) { return std::abs(a - b) <= tol; }

VectorXd alternating_ones(Eigen::Index size) {
  VectorXd a(size);
  for (Eigen::Index i = 0; i < size; ++i) a[i] = (i % 2 == 0) ? 1.0 : -1.0;
  return a;
}

Witness make_witness(const GeneratingVector<double>& gen, WitnessVector point) {
  Witness w;
  w.value = eval_fast(gen, point.x);
  w.normalized = normalized_value(gen, point.x);
  w.confirmed = w.normalized < -kConfirmTolerance * max_abs(gen.values());
  w.point = std::move(point);
  return w;
}

std::vector<WitnessVector> canonical_candidates(const GeneratingVector<double>& gen) {
  const int n = gen.dim();
  std::vector<WitnessVector> out;
  auto append = [&](const WitnessFamily& family) {
    if (n < family.min_dim()) return;
    for (auto& w : witnesses(n, family)) out.push_back(std::move(w));
  };

  if (auto nec = necessary_psd(gen); !nec.pass) out.push_back(*nec.witness);
  append(WitnessFamily::unit_difference());
  append(WitnessFamily::step_two_difference());
  for (const auto& p : named_patterns()) append(WitnessFamily::fixed(p));
  for (double alpha = 1.0; alpha <= 1024.0; alpha *= 2.0) {
    append(WitnessFamily::alpha_family(alpha));
    append(WitnessFamily::alpha_family(-alpha));
  }
  if (gen.order() == 2) {
    // f(x) = x^T H x with H the n x n associated Hankel matrix.
    const auto psd = matrix_psd(hankel_matrix(gen));
    out.push_back({psd.eigen.eigenvectors.col(0), "hankel-matrix min eigenvector"});
  }
  return out;
}

}  // namespace

std::string to_string(Status status) {
  switch (status) {
    case Status::PSD: return "PSD";
    case Status::NotPSD: return "NotPSD";
    case Status::Uncovered: return "Uncovered";
  }
  return "?";
}

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::ConstantSeed: return "constant-seed";
    case CaseTag::CoprimeIndex: return "coprime-index";
    case CaseTag::IndexThree: return "index-three";
    case CaseTag::IndexTwo: return "index-two";
    case CaseTag::GcdTwo: return "gcd-two";
    case CaseTag::QuarticIndexFour: return "quartic-index-four";
    case CaseTag::NecessaryOnly: return "necessary-only";
  }
  return "?";
}

Status parse_status(const std::string& text) {
  for (Status s : {Status::PSD, Status::NotPSD, Status::Uncovered})
    if (to_string(s) == text) return s;
  throw std::invalid_argument("unknown status '" + text + "'");
}

CaseTag parse_case_tag(const std::string& text) {
  for (CaseTag t : {CaseTag::ConstantSeed, CaseTag::CoprimeIndex, CaseTag::IndexThree,
                    CaseTag::IndexTwo, CaseTag::GcdTwo, CaseTag::QuarticIndexFour,
                    CaseTag::NecessaryOnly})
    if (to_string(t) == text) return t;
  throw std::invalid_argument("unknown case tag '" + text + "'");
}

int exit_code(Status status) {
  switch (status) {
    case Status::PSD: return 0;
    case Status::NotPSD: return 1;
    case Status::Uncovered: return 4;
  }
  return 2;
}

double power_sum_value(const PowerSumCertificate& cert, int order, const VectorXd& x) {
  const double plain = x.sum();
  const double alternating = alternating_ones(x.size()).dot(x);
  return cert.t * cert.v0 * std::pow(plain, order) +
         (1.0 - cert.t) * cert.v0 * std::pow(alternating, order);
}

NecessaryCheck necessary_psd(const GeneratingVector<double>& gen, double rel_tol) {
  if (!gen.even()) throw std::invalid_argument("PSD conditions need even order m");
  const double tol = rel_tol * max_abs(gen.values());
  NecessaryCheck check;
  for (int j = 0; j < gen.dim(); ++j) {
    if (gen[static_cast<Eigen::Index>(j) * gen.order()] < -tol) {
      check.pass = false;
      check.failing_index = j;
      VectorXd e = VectorXd::Zero(gen.dim());
      e[j] = 1.0;
      check.witness = WitnessVector{e, "unit q=" + std::to_string(j + 1)};
      break;
    }
  }
  return check;
}

NecessaryCheck necessary_strong(const GeneratingVector<double>& gen, double rel_tol) {
  if (!gen.even()) throw std::invalid_argument("strong Hankel conditions need even order m");
  const double tol = rel_tol * max_abs(gen.values());
  NecessaryCheck check;
  const int last = (gen.dim() - 1) * gen.half_order();
  for (int j = 0; j <= last; ++j) {
    if (gen[2 * j] < -tol) {
      check.pass = false;
      check.failing_index = j;
      break;
    }
  }
  return check;
}

StrongHankelCheck strong_hankel_check(const GeneratingVector<double>& gen) {
  const MatrixXd a = hankel_matrix(gen);
  const MatrixPsdResult psd = matrix_psd(a);

  StrongHankelCheck check;
  check.pass = psd.psd;
  check.eigen_floor = psd.min_eigenvalue;
  check.max_abs = psd.max_abs;
  check.period = minimal_period(gen);

  if (check.period == 1) {
    check.structure_checked = true;
    check.structure_ok = (a.array() == gen[0]).all();
  } else if (check.period == 2) {
    // y^T A y = (v0+v1)/2 (sum y)^2 + (v0-v1)/2 (alternating sum y)^2
    const VectorXd ones = VectorXd::Ones(a.rows());
    const VectorXd alt = alternating_ones(a.rows());
    const MatrixXd expected = 0.5 * (gen[0] + gen[1]) * ones * ones.transpose() +
                              0.5 * (gen[0] - gen[1]) * alt * alt.transpose();
    check.structure_checked = true;
    check.structure_ok = (a - expected).cwiseAbs().maxCoeff() <= 1e-12 * psd.max_abs;
  }
  return check;
}

std::optional<CaseTag> covered_case(int order, int dim, int index) {
  const int m = order;
  const int n = dim;
  const int r = index;
  const int g = std::gcd(m, r);
  if (r == 1 && n >= 2) return CaseTag::ConstantSeed;
  if (r % 2 == 1 && g == 1 && r <= n) return CaseTag::CoprimeIndex;
  if (r == 3 && n >= 3 && (m == 6 || m == 12 || m == 18 || m == 30 || m == 42))
    return CaseTag::IndexThree;
  if (r == 2 && n >= 2) return CaseTag::IndexTwo;
  if (r % 2 == 0 && r >= 4 && r <= 2 * n - 4 && g == 2) return CaseTag::GcdTwo;
  if (m == 4 && r == 4 && n >= 4) return CaseTag::QuarticIndexFour;
  return std::nullopt;
}

Witness find_witness(const GeneratingVector<double>& gen, const ClassifyOptions& options) {
  const double scale = max_abs(gen.values());
  const auto candidates = canonical_candidates(gen);

  const WitnessVector* most_negative = nullptr;
  double most_negative_value = 0.0;
  for (const auto& c : candidates) {
    const double value = normalized_value(gen, c.x);
    if (value < -kStrongWitness * scale) return make_witness(gen, c);
    if (value < most_negative_value) {
      most_negative_value = value;
      most_negative = &c;
    }
  }

  SphereMinOptions sm;
  sm.starts = options.oracle_starts;
  sm.seed = options.seed;
  if (most_negative != nullptr) {
    const DescentResult d = descend(gen, most_negative->x, sm);
    Witness w = make_witness(gen, {d.x, "descent from " + most_negative->label});
    if (w.normalized < -kStrongWitness * scale) return w;
  }

  const SphereMinResult oracle = sphere_min(gen, sm);
  Witness w = make_witness(gen, {oracle.argmin, "oracle " + oracle.source});
  if (most_negative != nullptr && most_negative_value < w.normalized) {
    return make_witness(gen, *most_negative);
  }
  return w;
}

Verdict classify(const CirculantSpec<double>& spec, const ClassifyOptions& options) {
  if (spec.order() % 2 != 0) {
    throw std::invalid_argument("odd order m: the only PSD Hankel tensor is the zero tensor");
  }
  const GeneratingVector<double> gen = spec.expand();
  const VectorXd& seed = spec.seed();
  const double tol = options.tolerance * max_abs(seed);
  const int r = spec.index();

  Verdict verdict;
  verdict.tolerance = options.tolerance;

  const auto tag = covered_case(spec.order(), spec.dim(), r);
  if (!tag) {
    verdict.tag = CaseTag::NecessaryOnly;
    const NecessaryCheck nec = necessary_psd(gen, options.tolerance);
    if (!nec.pass) {
      verdict.status = Status::NotPSD;
      verdict.witness = make_witness(gen, *nec.witness);
      verdict.notes.push_back("necessary condition v_{jm} >= 0 fails at j = " +
                              std::to_string(nec.failing_index));
      return verdict;
    }
    verdict.status = Status::Uncovered;
    SphereMinOptions sm;
    sm.starts = options.oracle_starts;
    sm.seed = options.seed;
    verdict.evidence = sphere_min(gen, sm);
    verdict.notes.push_back("no closed-form criterion covers (m, n, r) = (" +
                            std::to_string(spec.order()) + ", " + std::to_string(spec.dim()) +
                            ", " + std::to_string(r) + ")");
    verdict.notes.push_back("oracle minimum is numerical evidence only, not a certificate");
    if (verdict.evidence->min_value < -kConfirmTolerance * max_abs(gen.values())) {
      verdict.notes.push_back("oracle found a negative value, so the tensor is not PSD");
    }
    return verdict;
  }

  verdict.tag = *tag;
  auto all_equal = [&](int start, int step) {
    for (int i = start; i < r; i += step)
      if (!same(seed[i], seed[start], tol)) return false;
    return true;
  };
  const double v0 = seed[0];
  const double v1 = spec.value(1);

  bool psd = false;
  switch (*tag) {
    case CaseTag::ConstantSeed:
      psd = v0 >= -tol;
      break;
    case CaseTag::CoprimeIndex:
    case CaseTag::IndexThree:
      psd = all_equal(0, 1) && v0 >= -tol;
      break;
    case CaseTag::IndexTwo:
      psd = std::abs(v1) <= v0 + tol;
      break;
    case CaseTag::GcdTwo:
    case CaseTag::QuarticIndexFour:
      psd = all_equal(0, 2) && all_equal(1, 2) && std::abs(v1) <= v0 + tol;
      break;
    case CaseTag::NecessaryOnly:
      break;
  }

  if (*tag == CaseTag::GcdTwo && r > spec.dim()) {
    verdict.notes.push_back("r > n: this regime extends the generalized anti-circulant "
                            "definition to r <= 2n-4");
  }

  if (!psd) {
    verdict.status = Status::NotPSD;
    verdict.witness = find_witness(gen, options);
    if (!verdict.witness->confirmed) {
      verdict.notes.push_back("criterion violated but no evaluation below the confirmation "
                              "tolerance was found");
    }
    return verdict;
  }

  verdict.status = Status::PSD;
  PowerSumCertificate cert;
  cert.v0 = v0;
  if (v0 > 0.0) {
    const double t = (v1 / v0 + 1.0) / 2.0;
    cert.t = std::clamp(t, 0.0, 1.0);
  }
  verdict.power_sum = cert;
  verdict.strong_hankel = strong_hankel_check(gen);
  if (!verdict.strong_hankel->pass) {
    verdict.notes.push_back("associated Hankel matrix failed the PSD test");
  }
  return verdict;
}

Verdict classify(const GeneratingVector<double>& gen, const ClassifyOptions& options) {
  if (!gen.even()) {
    throw std::invalid_argument("odd order m: the only PSD Hankel tensor is the zero tensor");
  }
  const int period = minimal_period(gen);
  const int m = gen.order();
  const int n = gen.dim();
  if (period <= (n - 1) * m && period <= CirculantSpec<double>::max_index(n)) {
    CirculantSpec<double> spec(m, n, period, gen.values().head(period));
    Verdict v = classify(spec, options);
    v.notes.insert(v.notes.begin(), "detected circulant index r = " + std::to_string(period));
    return v;
  }

  Verdict verdict;
  verdict.tolerance = options.tolerance;
  verdict.tag = CaseTag::NecessaryOnly;
  const NecessaryCheck nec = necessary_psd(gen, options.tolerance);
  if (!nec.pass) {
    verdict.status = Status::NotPSD;
    verdict.witness = make_witness(gen, *nec.witness);
    verdict.notes.push_back("necessary condition v_{jm} >= 0 fails at j = " +
                            std::to_string(nec.failing_index));
    return verdict;
  }
  verdict.status = Status::Uncovered;
  SphereMinOptions sm;
  sm.starts = options.oracle_starts;
  sm.seed = options.seed;
  verdict.evidence = sphere_min(gen, sm);
  verdict.notes.push_back("generating vector is not generalized anti-circulant with an "
                          "admissible index");
  verdict.notes.push_back("oracle minimum is numerical evidence only, not a certificate");
  return verdict;
}

IdentityCheck verify_power_sum(const GeneratingVector<double>& gen,
                               const PowerSumCertificate& cert, int points, std::uint64_t seed,
                               double rel_tol) {
  IdentityCheck check;
  check.points = points;
  const double scale = max_abs(gen.values());
  SplitMix64 rng(seed);
  VectorXd x(gen.dim());
  for (int p = 0; p < points; ++p) {
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(-1.0, 1.0);
    const double f = eval_fast(gen, x);
    const double g = power_sum_value(cert, gen.order(), x);
    const double magnitude = std::max(std::abs(f), scale * std::pow(x.cwiseAbs().sum(), gen.order()));
    const double err = magnitude > 0.0 ? std::abs(f - g) / magnitude : std::abs(f - g);
    check.max_relative_error = std::max(check.max_relative_error, err);
  }
  check.pass = check.max_relative_error <= rel_tol;
  return check;
}

}  // namespace hankel
