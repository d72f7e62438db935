#pragma once

// Exact integer and rational sums behind the circulant-number theorem and the
// residue-class sign facts for circulant index 3.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hankel/types.hpp"

namespace hankel {

BigInt binomial(int n, int k);

/// u_0..u_{p-1}, extended by u_{j+p} = u_j.
class PeriodicSequence {
 public:
  explicit PeriodicSequence(std::vector<Rational> values);

  int period() const { return static_cast<int>(values_.size()); }
  const Rational& operator[](long long j) const { return values_[j % period()]; }
  const std::vector<Rational>& values() const { return values_; }
  bool constant() const;

 private:
  std::vector<Rational> values_;
};

/// D_i = sum_{j=0}^{M} C(M,j) (-1)^j u_{i+j}, for i = 0..p-1.
std::vector<Rational> alternating_binomial_sums(const PeriodicSequence& seq, int order);

enum class CirculantVerdict { ForcedConstant, MixedSigns };

/// ForcedConstant when every D_i has the same (weak) sign. That outcome is
/// only possible for a constant sequence; a non-constant one raises
/// TheoremViolation instead of being returned.
CirculantVerdict circulant_verdict(const PeriodicSequence& seq, int order);

struct TheoremViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// S_j = f_j(pattern, 0, ..., 0): monomials of (pattern . x)^m grouped by
/// 1-based index sum mod r, computed by exact multinomial expansion.
struct ResidueSumTable {
  int order = 0;
  int modulus = 0;
  std::vector<long long> pattern;
  std::vector<BigInt> sums;

  BigInt total() const;
};

ResidueSumTable residue_sum_table(int order, int modulus, std::span<const long long> pattern);

struct SignFactRow {
  std::string fact;
  int order = 0;
  int modulus = 3;
  std::vector<long long> pattern;
  std::vector<BigInt> sums;
  std::string expected;
  bool pass = false;
};

/// Recomputes every residue-sum sign and identity used by the index-3
/// necessity argument for m in {6, 12, 18, 30, 42}.
std::vector<SignFactRow> sign_fact_report();

std::string format_pattern(std::span<const long long> pattern);

}  // namespace hankel
