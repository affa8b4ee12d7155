#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cnoma/channel.hpp"
#include "cnoma/params.hpp"
#include "cnoma/rng.hpp"

namespace cnoma {
namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
  double m4 = 0.0;  // central fourth moment
};

Moments sample_moments(const RicianLink& link, std::uint64_t seed, std::size_t n) {
  Xoshiro256 rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = sample_rician_power(link, rng);
  Moments m;
  for (double v : x) m.mean += v;
  m.mean /= static_cast<double>(n);
  for (double v : x) {
    const double d = v - m.mean;
    m.var += d * d;
    m.m4 += d * d * d * d;
  }
  m.var /= static_cast<double>(n - 1);
  m.m4 /= static_cast<double>(n);
  return m;
}

double analytic_variance(const RicianLink& l) {
  const double w = l.effective_mean_power();
  const double k = l.k_factor;
  return w * w * (2.0 * k + 1.0) / ((k + 1.0) * (k + 1.0));
}

TEST(RicianSampler, RayleighSpecialCaseIsExponential) {
  const RicianLink link{0.0, 1.0, 1.0, 2.0};
  const std::size_t n = 400'000;
  const Moments m = sample_moments(link, 7, n);
  EXPECT_NEAR(m.mean, 1.0, 4.0 / std::sqrt(static_cast<double>(n)));
  EXPECT_NEAR(m.var, 1.0, 0.02);

  Xoshiro256 rng(11);
  std::size_t above = 0;
  for (std::size_t i = 0; i < n; ++i) above += sample_rician_power(link, rng) > 1.0;
  const double p = std::exp(-1.0);
  EXPECT_NEAR(static_cast<double>(above) / n, p, 4.0 * std::sqrt(p * (1 - p) / n));
}

TEST(RicianSampler, HugeKFactorIsDeterministic) {
  const RicianLink link{1e9, 36.0, 1.0, 2.0};
  Xoshiro256 rng(3);
  for (int i = 0; i < 10'000; ++i) EXPECT_NEAR(sample_rician_power(link, rng), 36.0, 36.0 * 1e-3);
}

TEST(RicianSampler, NearUserLinkMeanOverMillionDraws) {
  const RicianLink link{5.0, 36.0, 1.0, 2.0};
  const Moments m = sample_moments(link, 42, 1'000'000);
  EXPECT_NEAR(m.mean, 36.0, 0.2);
}

TEST(RicianSampler, VarianceMatchesLosScatterSplit) {
  for (const RicianLink link : {RicianLink{5.0, 36.0, 1.0, 2.0}, RicianLink{2.0, 9.0, 1.0, 2.0},
                                RicianLink{0.5, 2.0, 0.7, 3.0}}) {
    const std::size_t n = 500'000;
    const Moments m = sample_moments(link, 99, n);
    const double se_var = std::sqrt((m.m4 - m.var * m.var) / static_cast<double>(n));
    EXPECT_NEAR(m.var, analytic_variance(link), 4.0 * se_var) << "K=" << link.k_factor;
  }
}

TEST(RicianSampler, MeanConvergesForRandomParameters) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> k_dist(0.0, 20.0), omega_dist(0.1, 50.0), d_dist(0.2, 2.0),
      eps_dist(0.0, 4.0);
  for (int rep = 0; rep < 6; ++rep) {
    const RicianLink link{k_dist(gen), omega_dist(gen), d_dist(gen), eps_dist(gen)};
    const std::size_t n = 200'000;
    const Moments m = sample_moments(link, 1000 + rep, n);
    const double se = std::sqrt(analytic_variance(link) / static_cast<double>(n));
    EXPECT_NEAR(m.mean, link.effective_mean_power(), 4.0 * se);
  }
}

TEST(RicianSampler, PathLossScalesMean) {
  const RicianLink link{5.0, 36.0, 0.5, 2.0};
  EXPECT_DOUBLE_EQ(link.effective_mean_power(), 144.0);
  EXPECT_DOUBLE_EQ(link.los_power(), 120.0);
}

TEST(RicianSampler, RejectsInvalidParameters) {
  Xoshiro256 rng(1);
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(sample_rician_power(RicianLink{inf, 1.0, 1.0, 2.0}, rng), ValidationError);
  EXPECT_THROW(sample_rician_power(RicianLink{1.0, nan, 1.0, 2.0}, rng), ValidationError);
  EXPECT_THROW(sample_rician_power(RicianLink{-1.0, 1.0, 1.0, 2.0}, rng), ValidationError);
  EXPECT_THROW(sample_rician_power(RicianLink{1.0, 0.0, 1.0, 2.0}, rng), ValidationError);
  EXPECT_THROW(sample_rician_power(RicianLink{1.0, 1.0, 0.0, 2.0}, rng), ValidationError);
}

TEST(OamSingularValue, Models) {
  OamChannel fixed;
  fixed.model = OamModel::fixed;
  fixed.fixed_value = 1.0;
  EXPECT_EQ(oam_singular_value(fixed), 1.0);

  OamChannel los;
  los.model = OamModel::los_scaled;
  los.base_gain = 1.0;
  los.distance = 1.0;
  los.pathloss_exponent = 2.0;
  EXPECT_EQ(oam_singular_value(los), 1.0);
  los.distance = 0.5;
  EXPECT_NEAR(oam_singular_value(los), 4.0, 4.0 * 1e-9);
  EXPECT_EQ(oam_singular_value(los), oam_singular_value(los));
}

TEST(OamSingularValue, RejectsBadInputs) {
  OamChannel ch;
  ch.mode = 0;
  EXPECT_THROW(oam_singular_value(ch), ValidationError);
  ch.mode = 2;
  ch.model = OamModel::fixed;
  ch.fixed_value = 0.0;
  EXPECT_THROW(oam_singular_value(ch), ValidationError);
  ch.fixed_value = -1.0;
  EXPECT_THROW(oam_singular_value(ch), ValidationError);
}

TEST(DrawRealization, SameSeedSameStream) {
  const SystemParams p;
  Xoshiro256 a(123), b(123);
  for (int i = 0; i < 1000; ++i) {
    const auto ra = draw_realization(p, a);
    const auto rb = draw_realization(p, b);
    ASSERT_EQ(ra, rb);
    EXPECT_GE(ra.g_s1, 0.0);
    EXPECT_GE(ra.g_s2, 0.0);
    EXPECT_GE(ra.g_12, 0.0);
    EXPECT_GT(ra.mu1, 0.0);
    EXPECT_GT(ra.mu2, 0.0);
  }
}

TEST(DrawRealization, CollinearRelayDistance) {
  SystemParams p;
  p.link_s1.distance = 0.3;
  p.link_12.distance = 0.9;  // ignored while collinear
  EXPECT_DOUBLE_EQ(p.relay_link().distance, 0.7);
  p.collinear = false;
  EXPECT_DOUBLE_EQ(p.relay_link().distance, 0.9);
}

TEST(DrawRealization, FarUserLinkMean) {
  SystemParams p;
  ASSERT_EQ(p.link_s2.k_factor, 2.0);
  ASSERT_EQ(p.link_s2.mean_power, 9.0);
  ASSERT_EQ(p.link_s2.distance, 1.0);
  double sum = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    Xoshiro256 rng = substream(5, static_cast<std::uint64_t>(i));
    sum += draw_realization(p, rng).g_s2;
  }
  EXPECT_NEAR(sum / n, 9.0, 0.05);
}

TEST(DrawRealization, DefaultOamValuesAreLosPower) {
  const SystemParams p;
  Xoshiro256 rng(0);
  const auto r = draw_realization(p, rng);
  EXPECT_DOUBLE_EQ(r.mu1, 5.0 / 6.0 * 36.0 / 0.25);
  EXPECT_DOUBLE_EQ(r.mu2, 2.0 / 3.0 * 9.0);
}

TEST(Substream, DistinctIndicesGiveDistinctStreams) {
  auto a = substream(42, 0);
  auto b = substream(42, 1);
  auto c = substream(43, 0);
  EXPECT_NE(a(), b());
  EXPECT_NE(substream(42, 0)(), c());
  EXPECT_EQ(substream(42, 7)(), substream(42, 7)());
}

}  // namespace
}  // namespace cnoma
