#include "hankel/combinatorics.hpp"

#include <algorithm>
#include <functional>

namespace hankel {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return BigInt(0);
  k = std::min(k, n - k);
  BigInt c(1);
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

PeriodicSequence::PeriodicSequence(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw std::invalid_argument("period p must be >= 2");
}

bool PeriodicSequence::constant() const {
  return std::all_of(values_.begin(), values_.end(),
                     [&](const Rational& u) { return u == values_.front(); });
}

std::vector<Rational> alternating_binomial_sums(const PeriodicSequence& seq, int order) {
  if (order < 1) throw std::invalid_argument("order M must be >= 1");
  std::vector<Rational> d(seq.period(), Rational(0));
  for (int i = 0; i < seq.period(); ++i) {
    for (int j = 0; j <= order; ++j) {
      const Rational term = Rational(binomial(order, j)) * seq[i + j];
      d[i] += (j % 2 == 0) ? term : -term;
    }
  }
  return d;
}

CirculantVerdict circulant_verdict(const PeriodicSequence& seq, int order) {
  const auto d = alternating_binomial_sums(seq, order);
  const bool nonneg = std::all_of(d.begin(), d.end(), [](const Rational& x) { return x >= 0; });
  const bool nonpos = std::all_of(d.begin(), d.end(), [](const Rational& x) { return x <= 0; });
  if (!(nonneg || nonpos)) return CirculantVerdict::MixedSigns;
  if (!seq.constant()) {
    throw TheoremViolation("uniform-sign alternating binomial sums on a non-constant sequence");
  }
  return CirculantVerdict::ForcedConstant;
}

BigInt ResidueSumTable::total() const {
  BigInt t(0);
  for (const auto& s : sums) t += s;
  return t;
}

ResidueSumTable residue_sum_table(int order, int modulus, std::span<const long long> pattern) {
  if (order < 2) throw std::invalid_argument("order m must be >= 2");
  if (modulus < 2) throw std::invalid_argument("modulus r must be >= 2");
  if (pattern.empty() || pattern.size() > 4) {
    throw std::invalid_argument("pattern must have between 1 and 4 entries");
  }

  ResidueSumTable table;
  table.order = order;
  table.modulus = modulus;
  table.pattern.assign(pattern.begin(), pattern.end());
  table.sums.assign(modulus, BigInt(0));

  // Enumerate multiplicities (k_1, ..., k_L) summing to m. Position i (1-based)
  // used k_i times contributes i*k_i to the index sum and pattern_i^{k_i} to the
  // monomial; the number of such ordered tuples is the multinomial coefficient.
  const int len = static_cast<int>(pattern.size());
  std::vector<int> counts(len, 0);
  std::function<void(int, int, BigInt, BigInt, long long)> recurse =
      [&](int pos, int left, BigInt coeff, BigInt value, long long index_sum) {
        if (pos == len - 1) {
          BigInt v = value;
          for (int e = 0; e < left; ++e) v *= pattern[pos];
          const long long s = index_sum + static_cast<long long>(pos + 1) * left;
          table.sums[static_cast<std::size_t>(s % modulus)] += coeff * v;
          return;
        }
        BigInt power(1);
        for (int k = 0; k <= left; ++k) {
          recurse(pos + 1, left - k, coeff * binomial(left, k), value * power,
                  index_sum + static_cast<long long>(pos + 1) * k);
          power *= pattern[pos];
        }
      };
  recurse(0, order, BigInt(1), BigInt(1), 0);
  return table;
}

std::string format_pattern(std::span<const long long> pattern) {
  std::string s = "(";
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(pattern[i]);
  }
  return s + ")";
}

namespace {

SignFactRow row(std::string fact, const ResidueSumTable& t, std::string expected, bool pass) {
  return {std::move(fact), t.order, t.modulus, t.pattern, t.sums, std::move(expected), pass};
}

}  // namespace

std::vector<SignFactRow> sign_fact_report() {
  using P = std::vector<long long>;
  const P minus{1, -1};
  const P twos{1, 1, -2};
  const P three_two{1, -3, 2};
  const P two_three{1, 2, -3};

  std::vector<SignFactRow> rows;
  for (int m : {6, 18, 30, 42}) {
    const auto a = residue_sum_table(m, 3, minus);
    rows.push_back(row("f0(1,-1) negative", a, "S_0 < 0", a.sums[0] < 0));
    const auto b = residue_sum_table(m, 3, twos);
    rows.push_back(row("f0(1,1,-2) positive", b, "S_0 > 0", b.sums[0] > 0));
  }
  {
    const auto a = residue_sum_table(12, 3, minus);
    rows.push_back(row("f0(1,-1) positive at m=12", a, "S_0 > 0", a.sums[0] > 0));
    const auto c = residue_sum_table(12, 3, three_two);
    rows.push_back(row("f0(1,-3,2) negative at m=12", c, "S_0 < 0", c.sums[0] < 0));
    const auto d = residue_sum_table(12, 3, two_three);
    rows.push_back(row("f0(1,2,-3) equals f0(1,-3,2)", d, "S_0 = S_0(1,-3,2)",
                       d.sums[0] == c.sums[0]));
  }
  for (int m : {6, 12, 18, 30, 42}) {
    const auto a = residue_sum_table(m, 3, minus);
    rows.push_back(row("f1(1,-1) = f2(1,-1)", a, "S_1 = S_2", a.sums[1] == a.sums[2]));
    rows.push_back(row("components of (1,-1) cancel", a, "S_0+S_1+S_2 = 0", a.total() == 0));
  }
  for (int m : {6, 12, 18, 30, 42}) {
    const auto b = residue_sum_table(m, 3, twos);
    rows.push_back(row("f1(1,1,-2) = f2(1,1,-2)", b, "S_1 = S_2", b.sums[1] == b.sums[2]));
  }
  for (int m : {6, 12, 18, 30, 42}) {
    const auto c = residue_sum_table(m, 3, three_two);
    const auto d = residue_sum_table(m, 3, two_three);
    const BigInt lhs = d.sums[1] - d.sums[2];
    const BigInt rhs = c.sums[2] - c.sums[1];
    rows.push_back(row("f1-f2 antisymmetric between (1,2,-3) and (1,-3,2)", d,
                       "S_1-S_2 = S_2(1,-3,2)-S_1(1,-3,2)", lhs == rhs));
    rows.push_back(row("f1(1,2,-3)-f2(1,2,-3) nonzero", d, "S_1-S_2 != 0", lhs != 0));
  }
  return rows;
}

}  // namespace hankel
