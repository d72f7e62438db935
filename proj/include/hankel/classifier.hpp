#pragma once

// Closed-form PSD decisions for even-order generalized anti-circulant tensors.
//
// Covered regimes, tried in this order:
//   constant-seed       r = 1                              v_0 >= 0
//   coprime-index       r odd, gcd(m,r) = 1, r <= n         all seeds equal and >= 0
//   index-three         r = 3, m in {6,12,18,30,42}, n >= 3 all seeds equal and >= 0
//   index-two           r = 2                              |v_1| <= v_0
//   gcd-two             r even, 4 <= r <= 2n-4, gcd(m,r)=2  even seeds equal, odd seeds
//                                                          equal, |v_1| <= v_0
//   quartic-index-four  m = 4, r = 4, n >= 4                v_0 = v_2, v_1 = v_3, |v_1| <= v_0
// Every PSD outcome in these regimes has
//   f(x) = t v_0 (x_1 + ... + x_n)^m + (1 - t) v_0 (x_1 - x_2 + ... )^m,  v_1 = v_0 (2t - 1),
// and a PSD associated Hankel matrix. Anything else is Uncovered.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hankel/oracle.hpp"
#include "hankel/tensor_core.hpp"

namespace hankel {

enum class Status { PSD, NotPSD, Uncovered };

enum class CaseTag {
  ConstantSeed,
  CoprimeIndex,
  IndexThree,
  IndexTwo,
  GcdTwo,
  QuarticIndexFour,
  NecessaryOnly,
};

std::string to_string(Status status);
std::string to_string(CaseTag tag);
Status parse_status(const std::string& text);
CaseTag parse_case_tag(const std::string& text);

/// Exit code contract shared with the CLI: 0 PSD, 1 NotPSD, 4 Uncovered.
int exit_code(Status status);

struct PowerSumCertificate {
  double v0 = 0.0;
  double t = 1.0;
};

/// t v0 (sum x)^m + (1 - t) v0 (alternating sum x)^m.
double power_sum_value(const PowerSumCertificate& cert, int order, const VectorXd& x);

struct StrongHankelCheck {
  bool pass = false;
  double eigen_floor = 0.0;  // smallest eigenvalue of the associated Hankel matrix
  double max_abs = 0.0;
  int period = 0;            // minimal period of the generating vector
  bool structure_checked = false;
  bool structure_ok = false;
};

struct Witness {
  WitnessVector point;
  double value = 0.0;       // f(point)
  double normalized = 0.0;  // f(point / |point|)
  bool confirmed = false;   // normalized < -1e-9 max|v|
};

struct Verdict {
  Status status = Status::Uncovered;
  CaseTag tag = CaseTag::NecessaryOnly;
  std::optional<PowerSumCertificate> power_sum;
  std::optional<StrongHankelCheck> strong_hankel;
  std::optional<Witness> witness;
  std::optional<SphereMinResult> evidence;  // non-certified, Uncovered only
  std::vector<std::string> notes;
  double tolerance = 1e-12;
};

struct ClassifyOptions {
  /// Relative tolerance for seed equalities and inequalities; 0 means exact.
  double tolerance = 1e-12;
  int oracle_starts = 64;
  std::uint64_t seed = 0;
};

struct NecessaryCheck {
  bool pass = true;
  int failing_index = -1;  // j with v_{jm} < 0 (or v_{2j} < 0)
  std::optional<WitnessVector> witness;
};

/// v_{jm} >= -tol for j = 0..n-1; a failure yields witness e_{j+1} with f = v_{jm}.
NecessaryCheck necessary_psd(const GeneratingVector<double>& gen, double rel_tol = 1e-12);

/// v_{2j} >= -tol for j = 0..(n-1)k.
NecessaryCheck necessary_strong(const GeneratingVector<double>& gen, double rel_tol = 1e-12);

/// Associated Hankel matrix PSD test, plus the exact rank structure for
/// generating vectors of period 1 (v_0 times all-ones) or 2 (two rank-one terms).
StrongHankelCheck strong_hankel_check(const GeneratingVector<double>& gen);

/// The covered regime for (m, n, r), if any.
std::optional<CaseTag> covered_case(int order, int dim, int index);

Verdict classify(const CirculantSpec<double>& spec, const ClassifyOptions& options = {});

/// Detects the minimal period of v and classifies it as a circulant spec when
/// the period is an admissible index; otherwise only necessary conditions apply.
Verdict classify(const GeneratingVector<double>& gen, const ClassifyOptions& options = {});

/// First point in the canonical candidate order with f(x/|x|) < -1e-8 max|v|,
/// falling back to local descent and then the multistart oracle.
Witness find_witness(const GeneratingVector<double>& gen, const ClassifyOptions& options = {});

struct IdentityCheck {
  int points = 0;
  double max_relative_error = 0.0;
  bool pass = false;
};

/// Compares the power-sum expression with f at `points` random points in
/// [-1,1]^n. Errors are relative to max(|f|, max|v| (sum |x_i|)^m).
IdentityCheck verify_power_sum(const GeneratingVector<double>& gen,
                               const PowerSumCertificate& cert, int points = 1000,
                               std::uint64_t seed = 0, double rel_tol = 1e-9);

}  // namespace hankel
