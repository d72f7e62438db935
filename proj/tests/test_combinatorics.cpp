#include <gtest/gtest.h>

#include <random>

#include "hankel/combinatorics.hpp"
#include "hankel/polyeval.hpp"

using namespace hankel;

namespace {

std::vector<Rational> rationals(std::initializer_list<long long> xs) {
  return {xs.begin(), xs.end()};
}

// Residue sums by repeated exact polynomial multiplication over z.
std::vector<BigInt> residue_by_power(int m, int r, const std::vector<long long>& pattern) {
  std::vector<BigInt> poly{1};
  for (int k = 0; k < m; ++k) {
    std::vector<BigInt> next(poly.size() + pattern.size() - 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::size_t j = 0; j < pattern.size(); ++j) next[i + j] += poly[i] * pattern[j];
    poly = std::move(next);
  }
  std::vector<BigInt> sums(r, 0);
  for (std::size_t s = 0; s < poly.size(); ++s) sums[(s + m) % r] += poly[s];
  return sums;
}

std::vector<BigInt> big(std::initializer_list<const char*> xs) {
  std::vector<BigInt> out;
  for (const char* x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(6, 3), 20);
  EXPECT_EQ(binomial(12, 6), 924);
  EXPECT_EQ(binomial(42, 21), BigInt("538257874440"));
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(5, 6), 0);
  EXPECT_EQ(binomial(100, 50), BigInt("100891344545564193334812497256"));
}

TEST(PeriodicSequenceTest, WrapsAndDetectsConstant) {
  const PeriodicSequence seq(rationals({1, 2, 3}));
  EXPECT_EQ(seq[4], Rational(2));
  EXPECT_FALSE(seq.constant());
  EXPECT_TRUE(PeriodicSequence(rationals({5, 5})).constant());
  EXPECT_THROW(PeriodicSequence(rationals({5})), std::invalid_argument);
}

TEST(AlternatingSums, Examples) {
  EXPECT_EQ(alternating_binomial_sums(PeriodicSequence(rationals({5, 5, 5})), 2),
            rationals({0, 0, 0}));
  EXPECT_EQ(alternating_binomial_sums(PeriodicSequence(rationals({1, 2, 3})), 2),
            rationals({0, -3, 3}));
  EXPECT_EQ(alternating_binomial_sums(PeriodicSequence(rationals({1, 0})), 3),
            rationals({4, -4}));
}

TEST(CirculantVerdictTest, Examples) {
  EXPECT_EQ(circulant_verdict(PeriodicSequence(rationals({5, 5, 5})), 2),
            CirculantVerdict::ForcedConstant);
  EXPECT_EQ(circulant_verdict(PeriodicSequence(rationals({7, 7})), 5),
            CirculantVerdict::ForcedConstant);
  EXPECT_EQ(circulant_verdict(PeriodicSequence(rationals({1, 2, 3})), 2),
            CirculantVerdict::MixedSigns);
}

TEST(CirculantVerdictTest, RandomSequencesProperty) {
  std::mt19937 rng(30);
  int constant_cases = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int p = 2 + static_cast<int>(rng() % 5);
    const int order = 1 + static_cast<int>(rng() % 8);
    std::vector<Rational> u(p);
    const bool constant = trial % 10 == 0;
    for (int i = 0; i < p; ++i) {
      const Rational value(static_cast<long long>(rng() % 21) - 10,
                           1 + static_cast<long long>(rng() % 7));
      u[i] = constant && i > 0 ? u[0] : value;
    }
    const PeriodicSequence seq(u);
    const auto d = alternating_binomial_sums(seq, order);
    bool positive = false, negative = false;
    for (const auto& x : d) {
      positive |= x > 0;
      negative |= x < 0;
    }
    if (seq.constant()) {
      ++constant_cases;
      for (const auto& x : d) ASSERT_EQ(x, 0);
      ASSERT_EQ(circulant_verdict(seq, order), CirculantVerdict::ForcedConstant);
    } else {
      ASSERT_TRUE(positive && negative);
      ASSERT_EQ(circulant_verdict(seq, order), CirculantVerdict::MixedSigns);
    }
  }
  EXPECT_GE(constant_cases, 100);
}

TEST(ResidueSums, Examples) {
  const std::vector<long long> one_minus{1, -1};
  EXPECT_EQ(residue_sum_table(6, 3, one_minus).sums, big({"-18", "9", "9"}));
  EXPECT_EQ(residue_sum_table(12, 3, one_minus).sums[0], 486);
  const std::vector<long long> ones{1, 1};
  EXPECT_EQ(residue_sum_table(4, 2, ones).sums, big({"8", "8"}));
  EXPECT_EQ(residue_sum_table(4, 2, one_minus).sums, big({"8", "-8"}));
  const std::vector<long long> step{1, 0, -1};
  EXPECT_EQ(residue_sum_table(4, 4, step).sums, big({"8", "0", "-8", "0"}));
  const std::vector<long long> quad{1, -1, -1, 1};
  EXPECT_EQ(residue_sum_table(4, 4, quad).sums, big({"-32", "0", "32", "0"}));
}

TEST(ResidueSums, FrozenSignFactValues) {
  const std::vector<long long> a{1, -1}, b{1, 1, -2}, c{1, -3, 2}, d{1, 2, -3};
  EXPECT_EQ(residue_sum_table(6, 3, b).sums, big({"486", "-243", "-243"}));
  EXPECT_EQ(residue_sum_table(6, 3, c).sums, big({"2574", "-6147", "3573"}));
  EXPECT_EQ(residue_sum_table(6, 3, d).sums, big({"2574", "3573", "-6147"}));
  EXPECT_EQ(residue_sum_table(12, 3, a).sums, big({"486", "-243", "-243"}));
  EXPECT_EQ(residue_sum_table(12, 3, b).sums, big({"354294", "-177147", "-177147"}));
  EXPECT_EQ(residue_sum_table(12, 3, c).sums, big({"-37300986", "-18878427", "56179413"}));
  const auto d12 = residue_sum_table(12, 3, d);
  EXPECT_EQ(d12.sums[0], BigInt("-37300986"));
  EXPECT_EQ(d12.sums[1] - d12.sums[2], BigInt("75057840"));
  EXPECT_EQ(residue_sum_table(18, 3, a).sums[0], BigInt("-13122"));
  EXPECT_EQ(residue_sum_table(18, 3, b).sums[0], BigInt("258280326"));
  EXPECT_EQ(residue_sum_table(30, 3, a).sums[0], BigInt("-9565938"));
  EXPECT_EQ(residue_sum_table(42, 3, a).sums[0], BigInt("-6973568802"));
  EXPECT_EQ(residue_sum_table(42, 3, b).sums[0], BigInt("72945992754341572806"));
}

TEST(ResidueSums, MatchesExactPolynomialPower) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 11);
    const int r = 2 + static_cast<int>(rng() % 4);
    std::vector<long long> pattern(1 + rng() % 4);
    for (auto& x : pattern) x = static_cast<long long>(rng() % 9) - 4;
    const auto table = residue_sum_table(m, r, pattern);
    ASSERT_EQ(table.sums, residue_by_power(m, r, pattern));
    BigInt total = 0;
    for (auto x : pattern) total += x;
    ASSERT_EQ(table.total(), boost::multiprecision::pow(total, m));
  }
}

TEST(ResidueSums, AgreesWithFloatingComponents) {
  std::mt19937 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 11);
    const int r = 2 + static_cast<int>(rng() % 4);
    std::vector<long long> pattern(1 + rng() % 4);
    for (auto& x : pattern) x = static_cast<long long>(rng() % 7) - 3;
    VectorXd x(pattern.size());
    for (std::size_t i = 0; i < pattern.size(); ++i) x[i] = static_cast<double>(pattern[i]);
    const VectorXd f = residue_components(x, m, r);
    const auto table = residue_sum_table(m, r, pattern);
    for (int j = 0; j < r; ++j) {
      const double exact = table.sums[j].convert_to<double>();
      ASSERT_NEAR(f[j], exact, 1e-9 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST(ResidueSums, RejectsBadArguments) {
  const std::vector<long long> longer{1, 2, 3, 4, 5};
  EXPECT_THROW(residue_sum_table(6, 3, longer), std::invalid_argument);
  const std::vector<long long> empty;
  EXPECT_THROW(residue_sum_table(6, 3, empty), std::invalid_argument);
  const std::vector<long long> ok{1, -1};
  EXPECT_THROW(residue_sum_table(1, 3, ok), std::invalid_argument);
  EXPECT_THROW(residue_sum_table(6, 1, ok), std::invalid_argument);
}

TEST(SignFacts, AllRowsPass) {
  const auto rows = sign_fact_report();
  ASSERT_FALSE(rows.empty());
  for (const auto& row : rows) EXPECT_TRUE(row.pass) << row.fact << " at m=" << row.order;
}

TEST(SignFacts, CoversEveryOrder) {
  const auto rows = sign_fact_report();
  for (int m : {6, 12, 18, 30, 42}) {
    int count = 0;
    for (const auto& row : rows) count += row.order == m;
    EXPECT_GE(count, 4) << "m=" << m;
  }
  bool m6_negative = false;
  for (const auto& row : rows) {
    if (row.order == 6 && row.pattern == std::vector<long long>{1, -1} &&
        row.expected == "S_0 < 0") {
      m6_negative = true;
      EXPECT_EQ(row.sums[0], -18);
    }
  }
  EXPECT_TRUE(m6_negative);
}

TEST(FormatPattern, Text) {
  const std::vector<long long> p{1, -3, 2};
  EXPECT_EQ(format_pattern(p), "(1,-3,2)");
}
