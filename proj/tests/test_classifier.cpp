#include <gtest/gtest.h>

#include <random>

#include "hankel/classifier.hpp"
#include "hankel/polyeval.hpp"

using namespace hankel;

namespace {

VectorXd vec(std::initializer_list<double> xs) {
  VectorXd v(static_cast<Eigen::Index>(xs.size()));
  std::copy(xs.begin(), xs.end(), v.begin());
  return v;
}

Verdict run(int m, int n, int r, std::initializer_list<double> seed) {
  return classify(CirculantSpec<>(m, n, r, vec(seed)));
}

bool mentions(const Verdict& v, const std::string& text) {
  for (const auto& note : v.notes)
    if (note.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Necessary, Psd) {
  EXPECT_TRUE(necessary_psd(GeneratingVector<>(4, 3, VectorXd::Ones(9))).pass);
  EXPECT_TRUE(necessary_psd(GeneratingVector<>(4, 3, VectorXd::Zero(9))).pass);

  VectorXd v = VectorXd::Ones(9);
  v[4] = -1;
  const auto check = necessary_psd(GeneratingVector<>(4, 3, v));
  EXPECT_FALSE(check.pass);
  EXPECT_EQ(check.failing_index, 1);
  ASSERT_TRUE(check.witness.has_value());
  EXPECT_EQ(check.witness->x, vec({0, 1, 0}));
  EXPECT_EQ(eval_fast(GeneratingVector<>(4, 3, v), check.witness->x), -1.0);
}

TEST(Necessary, Strong) {
  EXPECT_TRUE(necessary_strong(GeneratingVector<>(4, 3, VectorXd::Ones(9))).pass);
  EXPECT_TRUE(necessary_strong(GeneratingVector<>(4, 3, VectorXd::Zero(9))).pass);
  VectorXd v = VectorXd::Ones(9);
  v[2] = -1;
  const auto check = necessary_strong(GeneratingVector<>(4, 3, v));
  EXPECT_FALSE(check.pass);
  EXPECT_EQ(check.failing_index, 1);
}

TEST(Necessary, OddOrderRejected) {
  EXPECT_THROW(necessary_psd(GeneratingVector<>(3, 2, VectorXd::Ones(4))), std::invalid_argument);
}

TEST(Classify, ConstantSeed) {
  const auto v = run(4, 3, 1, {2});
  EXPECT_EQ(v.status, Status::PSD);
  EXPECT_EQ(v.tag, CaseTag::ConstantSeed);
  ASSERT_TRUE(v.power_sum.has_value());
  EXPECT_EQ(v.power_sum->t, 1.0);
  EXPECT_EQ(v.power_sum->v0, 2.0);
  const VectorXd x = vec({0.3, -1.2, 0.5});
  EXPECT_NEAR(power_sum_value(*v.power_sum, 4, x), 2 * std::pow(x.sum(), 4), 1e-15);
}

TEST(Classify, CoprimeIndex) {
  const auto psd = run(4, 3, 3, {1, 1, 1});
  EXPECT_EQ(psd.status, Status::PSD);
  EXPECT_EQ(psd.tag, CaseTag::CoprimeIndex);

  const auto bad = run(4, 3, 3, {1, 2, 1});
  EXPECT_EQ(bad.status, Status::NotPSD);
  EXPECT_EQ(bad.tag, CaseTag::CoprimeIndex);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_TRUE(bad.witness->confirmed);
  EXPECT_LT(bad.witness->value, 0.0);
  EXPECT_NE(bad.witness->point.label.find("unit-difference"), std::string::npos)
      << bad.witness->point.label;
}

TEST(Classify, IndexThree) {
  const auto v = run(6, 3, 3, {1, 1, 1});
  EXPECT_EQ(v.status, Status::PSD);
  EXPECT_EQ(v.tag, CaseTag::IndexThree);
  const auto bad = run(6, 4, 3, {1, 1, 0.9});
  EXPECT_EQ(bad.status, Status::NotPSD);
  EXPECT_TRUE(bad.witness->confirmed);
}

TEST(Classify, IndexTwo) {
  const auto psd = run(4, 4, 2, {1, 0.5});
  EXPECT_EQ(psd.status, Status::PSD);
  EXPECT_EQ(psd.tag, CaseTag::IndexTwo);
  EXPECT_DOUBLE_EQ(psd.power_sum->t, 0.75);
  ASSERT_TRUE(psd.strong_hankel.has_value());
  EXPECT_TRUE(psd.strong_hankel->pass);
  EXPECT_TRUE(psd.strong_hankel->structure_ok);

  const auto bad = run(4, 4, 2, {1, 1.2});
  EXPECT_EQ(bad.status, Status::NotPSD);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_EQ(bad.witness->point.x, vec({1, -1, 0, 0}));
  EXPECT_NEAR(bad.witness->value, -1.6, 1e-12);
  EXPECT_TRUE(bad.witness->confirmed);
}

TEST(Classify, QuarticIndexFour) {
  const auto v = run(4, 4, 4, {1, 0, 1, 0});
  EXPECT_EQ(v.status, Status::PSD);
  EXPECT_EQ(v.tag, CaseTag::QuarticIndexFour);
  EXPECT_DOUBLE_EQ(v.power_sum->t, 0.5);
  const auto bad = run(4, 5, 4, {1, 0, 0.5, 0});
  EXPECT_EQ(bad.status, Status::NotPSD);
  EXPECT_TRUE(bad.witness->confirmed);
}

TEST(Classify, GcdTwo) {
  const auto psd = run(6, 5, 4, {1, 0, 1, 0});
  EXPECT_EQ(psd.status, Status::PSD);
  EXPECT_EQ(psd.tag, CaseTag::GcdTwo);

  const auto bad = run(6, 5, 4, {1, 0, 2, 0});
  EXPECT_EQ(bad.status, Status::NotPSD);
  EXPECT_EQ(bad.tag, CaseTag::GcdTwo);
  EXPECT_TRUE(bad.witness->confirmed);

  const auto odd_differ = run(6, 5, 4, {1, 0.2, 1, -0.2});
  EXPECT_EQ(odd_differ.status, Status::NotPSD);
  EXPECT_TRUE(odd_differ.witness->confirmed);
}

TEST(Classify, GcdTwoAboveDimensionCarriesNote) {
  const auto v = run(2, 5, 6, {1, 0.5, 1, 0.5, 1, 0.5});
  EXPECT_EQ(v.tag, CaseTag::GcdTwo);
  EXPECT_EQ(v.status, Status::PSD);
  EXPECT_TRUE(mentions(v, "r > n"));
  EXPECT_FALSE(mentions(run(6, 5, 4, {1, 0, 1, 0}), "r > n"));
}

TEST(Classify, CoprimeOverridesOpenLookingInput) {
  const auto v = run(8, 5, 5, {1, 1, 1, 1, 1});
  EXPECT_EQ(v.status, Status::PSD);
  EXPECT_EQ(v.tag, CaseTag::CoprimeIndex);
}

TEST(Classify, UncoveredAttachesEvidence) {
  const auto v = run(10, 5, 5, {1, 1, 1, 1, 1});
  EXPECT_EQ(v.status, Status::Uncovered);
  EXPECT_EQ(v.tag, CaseTag::NecessaryOnly);
  ASSERT_TRUE(v.evidence.has_value());
  EXPECT_GE(v.evidence->min_value, -1e-9);
  EXPECT_FALSE(v.power_sum.has_value());
  EXPECT_TRUE(mentions(v, "not a certificate"));
}

TEST(Classify, UncoveredNecessaryFailureIsNotPsd) {
  const auto v = run(10, 5, 5, {1, 1, 1, 1, 1});
  ASSERT_EQ(v.status, Status::Uncovered);
  // v_{10} = seed[0]; a negative seed[0] breaks v_{jm} >= 0 at j = 1.
  const auto bad = run(10, 5, 5, {-1, 1, 1, 1, 1});
  EXPECT_EQ(bad.status, Status::NotPSD);
  EXPECT_EQ(bad.tag, CaseTag::NecessaryOnly);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_EQ(bad.witness->value, -1.0);
}

TEST(Classify, RejectsOddOrder) {
  EXPECT_THROW(run(3, 3, 1, {1}), std::invalid_argument);
  EXPECT_THROW(classify(GeneratingVector<>(3, 2, VectorXd::Ones(4))), std::invalid_argument);
}

TEST(Classify, NegativeConstantSeed) {
  const auto v = run(2, 3, 1, {-1});
  EXPECT_EQ(v.status, Status::NotPSD);
  EXPECT_TRUE(v.witness->confirmed);
}

TEST(Classify, ZeroTensorIsPsd) {
  const auto v = run(4, 4, 2, {0, 0});
  EXPECT_EQ(v.status, Status::PSD);
  EXPECT_EQ(v.power_sum->t, 1.0);
}

TEST(Classify, GeneratingVectorDetectsPeriod) {
  const auto gen = expand(CirculantSpec<>(4, 4, 2, vec({1, 0.5})));
  const auto v = classify(gen);
  EXPECT_EQ(v.status, Status::PSD);
  EXPECT_EQ(v.tag, CaseTag::IndexTwo);
  ASSERT_FALSE(v.notes.empty());
  EXPECT_EQ(v.notes.front(), "detected circulant index r = 2");

  const auto ones = classify(GeneratingVector<>(2, 2, vec({1, 1, 1})));
  EXPECT_EQ(ones.tag, CaseTag::ConstantSeed);
}

TEST(Classify, AperiodicGeneratingVector) {
  const auto v = classify(GeneratingVector<>(2, 2, vec({2, 1, 3})));
  EXPECT_EQ(v.status, Status::Uncovered);
  EXPECT_TRUE(v.evidence.has_value());
  const auto bad = classify(GeneratingVector<>(2, 2, vec({2, 1, -3})));
  EXPECT_EQ(bad.status, Status::NotPSD);
}

TEST(Classify, BoundarySeedsArePsdWithZeroMinimum) {
  for (double sign : {1.0, -1.0}) {
    for (int m : {2, 4, 6}) {
      const CirculantSpec<> spec(m, 4, 2, vec({1.5, sign * 1.5}));
      const auto v = classify(spec);
      ASSERT_EQ(v.status, Status::PSD) << "m=" << m;
      const auto oracle = sphere_min(spec.expand());
      EXPECT_GE(oracle.min_value, -1e-6);
      EXPECT_LE(oracle.min_value, 1e-6);
    }
  }
}

TEST(Classify, ScalingInvariance) {
  std::mt19937 rng(50);
  std::uniform_real_distribution<double> u(-2, 2);
  const std::vector<std::tuple<int, int, int>> cases = {
      {4, 3, 1}, {4, 3, 3}, {6, 3, 3}, {4, 4, 2}, {6, 5, 4}, {4, 4, 4}, {10, 5, 5}};
  for (const auto& [m, n, r] : cases) {
    for (int trial = 0; trial < 5; ++trial) {
      VectorXd seed(r);
      for (auto& s : seed) s = u(rng);
      if (trial % 2 == 0) seed = seed.cwiseAbs();
      const auto base = classify(CirculantSpec<>(m, n, r, seed), {.oracle_starts = 4});
      for (double lambda : {0.001, 3.0, 1e6}) {
        const auto scaled =
            classify(CirculantSpec<>(m, n, r, VectorXd(lambda * seed)), {.oracle_starts = 4});
        ASSERT_EQ(base.status, scaled.status) << m << "," << n << "," << r;
      }
    }
  }
}

TEST(Classify, ToleranceControlsEquality) {
  const CirculantSpec<> spec(4, 3, 3, vec({1, 1 + 1e-15, 1}));
  EXPECT_EQ(classify(spec).status, Status::PSD);
  const auto exact = classify(spec, {.tolerance = 0.0});
  EXPECT_EQ(exact.status, Status::NotPSD);
  EXPECT_FALSE(exact.witness->confirmed);
}

TEST(Classify, SoundnessAgainstOracle) {
  std::mt19937 rng(51);
  std::uniform_real_distribution<double> u(-2, 2);
  const std::vector<std::tuple<int, int, int>> cases = {
      {4, 3, 1}, {2, 3, 3}, {6, 5, 5}, {6, 3, 3}, {2, 4, 2}, {4, 4, 2}, {2, 4, 4}, {4, 5, 4}};
  for (const auto& [m, n, r] : cases) {
    for (int trial = 0; trial < 6; ++trial) {
      VectorXd seed(r);
      for (auto& s : seed) s = u(rng);
      if (trial % 2 == 0) {
        // land in the PSD set: v0 > 0, even seeds equal, odd seeds equal, |v1| <= v0
        const double v0 = std::abs(seed[0]) + 0.1;
        const double v1 = std::uniform_real_distribution<double>(-v0, v0)(rng);
        for (int i = 0; i < r; ++i) seed[i] = (r <= 2 || r % 2 == 0) && i % 2 == 1 ? v1 : v0;
      }
      const CirculantSpec<> spec(m, n, r, seed);
      const auto v = classify(spec);
      const double scale = seed.cwiseAbs().maxCoeff();
      if (v.status == Status::PSD) {
        EXPECT_GE(sphere_min(spec.expand(), {.starts = 16}).min_value, -1e-6);
      } else {
        ASSERT_EQ(v.status, Status::NotPSD);
        ASSERT_TRUE(v.witness.has_value());
        EXPECT_LT(v.witness->normalized, -1e-8 * scale);
      }
    }
  }
}

TEST(StrongHankel, Examples) {
  const auto ones = strong_hankel_check(expand(CirculantSpec<>(4, 3, 1, vec({1}))));
  EXPECT_TRUE(ones.pass);
  EXPECT_EQ(ones.period, 1);
  EXPECT_TRUE(ones.structure_checked);
  EXPECT_TRUE(ones.structure_ok);

  const auto alternating = strong_hankel_check(expand(CirculantSpec<>(4, 4, 2, vec({1, -1}))));
  EXPECT_TRUE(alternating.pass);
  EXPECT_EQ(alternating.period, 2);
  EXPECT_TRUE(alternating.structure_ok);

  const auto bad = strong_hankel_check(expand(CirculantSpec<>(4, 4, 2, vec({1, 1.2}))));
  EXPECT_FALSE(bad.pass);
  EXPECT_LT(bad.eigen_floor, 0.0);

  EXPECT_THROW(strong_hankel_check(GeneratingVector<>(3, 2, VectorXd::Ones(4))),
               std::invalid_argument);
}

TEST(PowerSum, IdentityHoldsForPsdVerdicts) {
  for (const auto& [m, n, r, seed] : std::vector<std::tuple<int, int, int, VectorXd>>{
           {4, 3, 1, vec({2})},
           {4, 4, 2, vec({1, 0.5})},
           {6, 5, 4, vec({1, -0.3, 1, -0.3})},
           {4, 4, 4, vec({1, 0, 1, 0})},
           {6, 3, 3, vec({0.7, 0.7, 0.7})}}) {
    const CirculantSpec<> spec(m, n, r, seed);
    const auto v = classify(spec);
    ASSERT_EQ(v.status, Status::PSD);
    const auto check = verify_power_sum(spec.expand(), *v.power_sum);
    EXPECT_TRUE(check.pass) << check.max_relative_error;
    EXPECT_EQ(check.points, 1000);
  }
}

TEST(PowerSum, DetectsWrongCertificate) {
  const auto gen = expand(CirculantSpec<>(4, 4, 2, vec({1, 0.5})));
  EXPECT_FALSE(verify_power_sum(gen, {1.0, 0.5}).pass);
}

TEST(Names, RoundTrip) {
  for (auto s : {Status::PSD, Status::NotPSD, Status::Uncovered})
    EXPECT_EQ(parse_status(to_string(s)), s);
  for (auto t : {CaseTag::ConstantSeed, CaseTag::CoprimeIndex, CaseTag::IndexThree,
                 CaseTag::IndexTwo, CaseTag::GcdTwo, CaseTag::QuarticIndexFour,
                 CaseTag::NecessaryOnly})
    EXPECT_EQ(parse_case_tag(to_string(t)), t);
  EXPECT_THROW(parse_status("psd?"), std::invalid_argument);
  EXPECT_EQ(exit_code(Status::PSD), 0);
  EXPECT_EQ(exit_code(Status::NotPSD), 1);
  EXPECT_EQ(exit_code(Status::Uncovered), 4);
}

TEST(CoveredCase, Dispatch) {
  EXPECT_EQ(covered_case(4, 3, 1), CaseTag::ConstantSeed);
  EXPECT_EQ(covered_case(2, 3, 3), CaseTag::CoprimeIndex);
  EXPECT_EQ(covered_case(6, 3, 3), CaseTag::IndexThree);
  EXPECT_EQ(covered_case(12, 3, 3), CaseTag::IndexThree);
  EXPECT_EQ(covered_case(24, 3, 3), std::nullopt);
  EXPECT_EQ(covered_case(6, 2, 2), CaseTag::IndexTwo);
  EXPECT_EQ(covered_case(6, 5, 4), CaseTag::GcdTwo);
  EXPECT_EQ(covered_case(4, 4, 4), CaseTag::QuarticIndexFour);
  EXPECT_EQ(covered_case(8, 4, 4), std::nullopt);
  EXPECT_EQ(covered_case(10, 5, 5), std::nullopt);
}
