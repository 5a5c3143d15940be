#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "parabola/series.hpp"

using namespace parabola;

namespace {

constexpr double kZeta32 = 2.612375348685488;  // zeta(3/2), mpmath

PsiFunction empty_psi() { return PsiFunction::table({}); }

void expect_monotone(const SeriesReport& rep) {
  for (std::size_t i = 1; i < rep.checkpoints.size(); ++i) {
    const auto& a = rep.checkpoints[i - 1];
    const auto& b = rep.checkpoints[i];
    EXPECT_LE(a.s1, b.s1);
    EXPECT_LE(a.s2, b.s2);
    EXPECT_LE(a.s3, b.s3);
    if (a.s_full) {
      EXPECT_LE(*a.s_full, *b.s_full);
    }
  }
}

}  // namespace

TEST(EtaRange, Examples) {
  const auto r1 = eta_range(1.0);
  EXPECT_EQ(r1.lo, 0.0);
  EXPECT_NEAR(r1.hi, 0.125, 1e-15);
  EXPECT_NEAR(eta_range(0.95).hi, 5.0 / 8 - 1.05 / 1.95, 1e-15);
  EXPECT_NEAR(eta_range(0.95).hi, 0.0865, 5e-5);
  EXPECT_THROW(eta_range(11.0 / 13.0), std::invalid_argument);
  EXPECT_THROW(eta_range(1.01), std::invalid_argument);
  EXPECT_THROW(eta_range(0.5), std::invalid_argument);
  for (double s = 0.8462; s <= 1.0; s += 0.01) EXPECT_GT(eta_range(s).hi, 0.0) << s;
}

TEST(Psi, ParseGrammar) {
  const auto p = PsiFunction::parse("power:c=2,tau=0.5");
  EXPECT_NEAR(p(4), 1.0, 1e-15);
  EXPECT_NEAR(PsiFunction::parse("power:tau=0.75")(16), 0.125, 1e-15);
  const auto c = PsiFunction::parse("clamped:c=1,tau=2,eta=0.05");
  EXPECT_NEAR(c(100), std::pow(100.0, -5.0 / 8 + 0.05), 1e-15);
  EXPECT_EQ(c(1), 1.0);
  EXPECT_THROW(PsiFunction::parse("power:c=1"), std::invalid_argument);
  EXPECT_THROW(PsiFunction::parse("power:c=-1,tau=1"), std::invalid_argument);
  EXPECT_THROW(PsiFunction::parse("power:c=1,tau=1,zeta=2"), std::invalid_argument);
  EXPECT_THROW(PsiFunction::parse("clamped:c=1,tau=1,eta=0"), std::invalid_argument);
  EXPECT_THROW(PsiFunction::parse("cubic:c=1"), std::invalid_argument);
  EXPECT_THROW(PsiFunction::parse("power"), std::invalid_argument);
  EXPECT_THROW(PsiFunction::parse("table:/nonexistent/psi.txt"), std::invalid_argument);
}

TEST(Psi, TableFile) {
  const auto path = std::filesystem::path(testing::TempDir()) / "psi_table.txt";
  {
    std::ofstream out(path);
    out << "# q psi\n4 0.01\n\n9, 1/300  # fraction value\n";
  }
  const auto t = PsiFunction::parse("table:" + path.string());
  EXPECT_EQ(t(4), 0.01);
  EXPECT_NEAR(t(9), 1.0 / 300, 1e-18);
  EXPECT_EQ(t(5), 0.0);
  {
    std::ofstream out(path);
    out << "4\n";
  }
  EXPECT_THROW(PsiFunction::parse("table:" + path.string()), std::invalid_argument);
  std::filesystem::remove(path);
}

TEST(ThreeSeries, FirstSeriesApproachesZetaThreeHalves) {
  const auto rep = three_series(PsiFunction::power(1, 0.75), 1.0, 1'000'000);
  const double s1 = rep.checkpoints.back().s1;
  EXPECT_EQ(rep.checkpoints.back().q, 1'000'000u);
  // Tail sum_{q > Q} q^{-3/2} lies in (2/sqrt(Q+1), 2/sqrt(Q)).
  EXPECT_LT(std::fabs(kZeta32 - s1), 0.002);
  EXPECT_GT(kZeta32 - s1, 2 / std::sqrt(1'000'001.0) - 1e-9);
  EXPECT_LT(kZeta32 - s1, 2 / std::sqrt(1'000'000.0) + 1e-9);
  EXPECT_FALSE(rep.divergent);
  expect_monotone(rep);
}

TEST(ThreeSeries, ZeroPsiGivesZeroSums) {
  const auto rep = three_series(empty_psi(), 1.0, 5000);
  for (const auto& c : rep.checkpoints) {
    EXPECT_EQ(c.s1, 0.0);
    EXPECT_EQ(c.s2, 0.0);
    EXPECT_EQ(c.s3, 0.0);
  }
  EXPECT_FALSE(rep.divergent);
}

TEST(ThreeSeries, HarmonicFirstSeriesFlaggedDivergent) {
  const auto rep = three_series(PsiFunction::power(1, 0.5), 1.0, 1 << 16);
  EXPECT_TRUE(rep.divergent);
  EXPECT_NEAR(rep.tail_slope, 0.0, 0.01);
}

TEST(ThreeSeries, MatchesDirectSummation) {
  const auto psi = PsiFunction::power(1.5, 0.8);
  const double s = 0.9;
  const auto rep = three_series(psi, s, 3000);
  long double a = 0, b = 0, c = 0;
  for (u64 q = 1; q <= 3000; ++q) {
    const long double p = psi(q), qd = q;
    const long double r = square_part(factorize(q));
    const long double scaled = std::pow(p / qd, (long double)s);
    a += std::pow(p, 1 + s) * std::pow(qd, 1 - s);
    b += std::pow(r, 1.05L) * scaled;
    c += std::sqrt(p) * std::pow(qd, 11.0L / 16 + 0.05L) * scaled;
  }
  EXPECT_NEAR(rep.checkpoints.back().s1, (double)a, 1e-12 * (double)a);
  EXPECT_NEAR(rep.checkpoints.back().s2, (double)b, 1e-12 * (double)b);
  EXPECT_NEAR(rep.checkpoints.back().s3, (double)c, 1e-12 * (double)c);
  EXPECT_THROW(three_series(psi, 1.5, 10), std::invalid_argument);
  EXPECT_THROW(three_series(psi, 1.0, 0), std::invalid_argument);
  EXPECT_THROW(three_series(psi, 1.0, 10'000'001), std::invalid_argument);
}

TEST(FullSeries, Examples) {
  const auto zero = full_series(empty_psi(), 1.0, 1000);
  EXPECT_EQ(*zero.checkpoints.back().s_full, 0.0);

  const auto single = full_series(PsiFunction::table({{4, 0.01}}), 1.0, 10);
  EXPECT_NEAR(*single.checkpoints.back().s_full, 2.0 / 400, 1e-15);

  // Frozen by tests/oracles/freeze_constants.py (numpy enumeration, Fraction thresholds).
  const auto rep = full_series(PsiFunction::power(1, 0.75), 1.0, 10000);
  EXPECT_NEAR(*rep.checkpoints.back().s_full, 7.375325446674262, 1e-9);
  expect_monotone(rep);
}

TEST(FullSeries, CapsLargeThresholds) {
  const auto rep = full_series(PsiFunction::power(1, 0.75), 1.0, 100);
  // 3 q^{-3/4} >= 1/2 exactly for q <= 10.
  EXPECT_EQ(rep.capped_terms, 10u);
  const auto choice = detail::rationalized_threshold(0.7);
  ASSERT_TRUE(choice.delta);
  EXPECT_TRUE(choice.capped);
  EXPECT_EQ(choice.delta->to_string(), "999999/2000000");
  EXPECT_FALSE(detail::rationalized_threshold(0).delta);
  EXPECT_EQ(detail::rationalized_threshold(0.03).delta->to_string(), "3/100");
}

TEST(FullSeries, DominatedByScanConstantPerBlock) {
  const double s = 1.0;
  std::vector<PsiFunction> models;
  models.push_back(PsiFunction::power(1, 0.75));
  models.push_back(PsiFunction::clamped(0.5, 1.0, 0.05));
  for (const auto& psi : models) {
    const u64 Q = 100000;
    auto rule = [&psi](u64 q) { return *detail::rationalized_threshold(3 * psi(q)).delta; };
    Theorem2Options opt;
    opt.threads = 4;
    const auto scan = scan_theorem2(1, Q, rule, opt);
    ASSERT_TRUE(scan.sup);
    const double C = scan.sup->ratio;
    // Bound terms at delta(q) against the split series taken at psi(q).
    double K = 1;
    for (u64 q = 1; q <= Q; ++q) K = std::max(K, rule(q).to_double() / psi(q));
    const auto rep = full_series(psi, s, Q, {kDefaultEpsilon, kBurgessCountExponent, 4});
    ASSERT_EQ(rep.block_ratios.size(), rep.checkpoints.size());
    for (std::size_t i = 0; i < rep.block_ratios.size(); ++i) {
      EXPECT_LE(rep.block_ratios[i], C * K * (1 + 1e-9)) << "checkpoint " << rep.checkpoints[i].q;
    }
  }
}

TEST(Holder, ExponentChecks) {
  SeriesOptions opt;
  opt.epsilon = 0.01;
  const auto rep = holder_split(PsiFunction::power(1, 0.75), 1.0, 1000, opt);
  EXPECT_NEAR(rep.r_exponent, -1.98, 1e-12);
  EXPECT_TRUE(rep.r_exponent_ok);
  EXPECT_TRUE(rep.t_exponent_ok);
  EXPECT_THROW(holder_split(PsiFunction::power(1, 0.75), 0.8, 1000), std::invalid_argument);
}

TEST(Holder, ZeroPsi) {
  const auto rep = holder_split(empty_psi(), 1.0, 1000);
  for (const auto& c : rep.checkpoints) {
    EXPECT_EQ(c.factor2, 0.0);
    EXPECT_EQ(c.product, 0.0);
    EXPECT_GE(c.product, c.direct);
  }
}

TEST(Holder, ProductDominatesDirectSum) {
  for (double s : {1.0, 0.9}) {
    const auto rep = holder_split(PsiFunction::power(1, 0.75), s, 100000);
    for (const auto& c : rep.checkpoints) EXPECT_GE(c.product, c.direct) << "Q=" << c.q << " s=" << s;
    EXPECT_NEAR(rep.squarefree_regrouped, rep.square_sum, 1e-10 * rep.square_sum);
    EXPECT_LE(rep.square_sum, rep.comparison * (1 + 1e-12));
  }
}

TEST(Absorption, ClampedPsiPointwise) {
  for (double eta : {0.01, 0.05, 0.12}) {
    ASSERT_LT(eta, eta_range(1.0).hi);
    const auto psi = PsiFunction::clamped(1, 0.75, eta);
    for (u64 q = 1; q <= 200000; ++q) ASSERT_TRUE(absorption_holds(psi(q), q, eta)) << "q=" << q << " eta=" << eta;
  }
  // Below the clamp the inequality genuinely fails.
  EXPECT_FALSE(absorption_holds(std::pow(1e6, -0.7), 1'000'000, 0.05));
}

TEST(Dual, Examples) {
  const auto rep = dual_series(PsiFunction::power(1, 3), 1.0, 1'000'000);
  const double pi2_6 = std::numbers::pi * std::numbers::pi / 6;
  // Tail sum_{q > Q} q^{-2} < 1/Q.
  EXPECT_GT(pi2_6 - rep.checkpoints.back().s1, 0.0);
  EXPECT_LT(pi2_6 - rep.checkpoints.back().s1, 1e-6 + 1e-12);
  EXPECT_FALSE(rep.divergent);

  EXPECT_EQ(dual_series(empty_psi(), 1.0, 100).checkpoints.back().s1, 0.0);
  EXPECT_TRUE(dual_series(PsiFunction::power(1, 2), 1.0, 1 << 16).divergent);
  EXPECT_THROW(dual_series(empty_psi(), 0.0, 100), std::invalid_argument);
}

TEST(Series, CheckpointsAreDyadicPlusCutoff) {
  EXPECT_EQ(detail::checkpoints_for(1), (std::vector<u64>{1}));
  EXPECT_EQ(detail::checkpoints_for(8), (std::vector<u64>{1, 2, 4, 8}));
  EXPECT_EQ(detail::checkpoints_for(10), (std::vector<u64>{1, 2, 4, 8, 10}));
}

TEST(Series, DeterministicAcrossThreadCounts) {
  const auto psi = PsiFunction::power(1, 0.75);
  SeriesOptions one, many;
  many.threads = 7;
  const auto a = full_series(psi, 0.95, 200000, one);
  const auto b = full_series(psi, 0.95, 200000, many);
  ASSERT_EQ(a.checkpoints.size(), b.checkpoints.size());
  for (std::size_t i = 0; i < a.checkpoints.size(); ++i) {
    EXPECT_EQ(a.checkpoints[i].s1, b.checkpoints[i].s1);
    EXPECT_EQ(a.checkpoints[i].s2, b.checkpoints[i].s2);
    EXPECT_EQ(a.checkpoints[i].s3, b.checkpoints[i].s3);
    EXPECT_EQ(*a.checkpoints[i].s_full, *b.checkpoints[i].s_full);
  }
  const auto h1 = holder_split(psi, 1.0, 50000, one);
  const auto h2 = holder_split(psi, 1.0, 50000, many);
  EXPECT_EQ(h1.checkpoints.back().product, h2.checkpoints.back().product);
}
