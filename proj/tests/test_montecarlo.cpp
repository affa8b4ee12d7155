#include <cmath>

#include <gtest/gtest.h>

#include "cnoma/montecarlo.hpp"

namespace cnoma {
namespace {

const ErgodicEstimate& pick(const std::vector<ErgodicEstimate>& v, Metric m) {
  for (const auto& e : v)
    if (e.metric == m) return e;
  throw std::runtime_error("metric missing");
}

SystemParams degenerate_params() {
  SystemParams p;
  p.link_s1.k_factor = p.link_s2.k_factor = p.link_12.k_factor = 1e30;
  p.oam1 = {2, OamModel::fixed, 0.8, std::nullopt};
  p.oam2 = {1, OamModel::fixed, 0.3, std::nullopt};
  return p;
}

TEST(Estimate, SingleTrialMatchesRealization) {
  const SystemParams p;
  const auto est = estimate(p, Scheme::cnoma_ps_oam, 1, 42);
  Xoshiro256 rng = substream(42, 0);
  const auto c = evaluate(Scheme::cnoma_ps_oam, p, draw_realization(p, rng));
  EXPECT_EQ(pick(est, Metric::c_ue1).mean, c.c_ue1);
  EXPECT_EQ(pick(est, Metric::c_ue2).mean, c.c_ue2);
  EXPECT_EQ(pick(est, Metric::c_sum).mean, c.c_sum);
  for (const auto& e : est) {
    EXPECT_EQ(e.std_error, 0.0);
    EXPECT_EQ(e.n_trials, 1u);
  }
  EXPECT_EQ(pick(est, Metric::ee).mean, energy_efficiency(Scheme::cnoma_ps_oam, c.c_sum, p));
}

TEST(Estimate, DegenerateChannelsMatchClosedForm) {
  const SystemParams p = degenerate_params();
  const FadingRealization det{p.link_s1.effective_mean_power(), p.link_s2.effective_mean_power(),
                              p.relay_link().effective_mean_power(), 0.8, 0.3};
  for (Scheme s : kAllSchemes) {
    const auto est = estimate(p, s, 5000, 9);
    const auto c = evaluate(s, p, det);
    EXPECT_NEAR(pick(est, Metric::c_sum).mean, c.c_sum, 1e-9);
    EXPECT_NEAR(pick(est, Metric::c_ue1).mean, c.c_ue1, 1e-9);
    EXPECT_LT(pick(est, Metric::c_sum).std_error, 1e-9);
  }
}

TEST(Estimate, DeterministicAndWorkerIndependent) {
  const SystemParams p;
  const auto a = estimate(p, Scheme::oma_ps_oam, 20'000, 42);
  const auto b = estimate(p, Scheme::oma_ps_oam, 20'000, 42);
  const auto c = estimate(p, Scheme::oma_ps_oam, 20'000, 42, {8, 4096});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mean, b[i].mean);
    EXPECT_EQ(a[i].std_error, b[i].std_error);
    EXPECT_EQ(a[i].mean, c[i].mean);
    EXPECT_EQ(a[i].std_error, c[i].std_error);
  }
}

TEST(Estimate, ManyMatchesSingleScheme) {
  const SystemParams p;
  const std::vector<Scheme> all(kAllSchemes.begin(), kAllSchemes.end());
  const auto many = estimate_many(p, all, 3000, 5);
  for (Scheme s : kAllSchemes) {
    const auto one = estimate(p, s, 3000, 5);
    for (const auto& e : one) {
      bool found = false;
      for (const auto& m : many) {
        if (m.scheme == s && m.metric == e.metric) {
          EXPECT_EQ(m.mean, e.mean);
          found = true;
        }
      }
      EXPECT_TRUE(found);
    }
  }
}

TEST(Estimate, StdErrorShrinksWithTrials) {
  const SystemParams p;
  const double se_n = pick(estimate(p, Scheme::cnoma_ps, 40'000, 1), Metric::c_sum).std_error;
  const double se_2n = pick(estimate(p, Scheme::cnoma_ps, 80'000, 1), Metric::c_sum).std_error;
  EXPECT_NEAR(se_2n, se_n / std::sqrt(2.0), 0.2 * se_n / std::sqrt(2.0));
}

TEST(Estimate, OamSchemeDominatesInExpectation) {
  SystemParams p;
  p.rho = 0.5;
  p.oam1 = {2, OamModel::fixed, 1e-3, std::nullopt};
  p.oam2 = {1, OamModel::fixed, 1e-3, std::nullopt};
  const double with = pick(estimate(p, Scheme::cnoma_ps_oam, 10'000, 3), Metric::c_sum).mean;
  const double without = pick(estimate(p, Scheme::cnoma_ps, 10'000, 3), Metric::c_sum).mean;
  EXPECT_GT(with, without);
}

TEST(Estimate, RejectsInvalidInputs) {
  SystemParams p;
  EXPECT_THROW(estimate(p, Scheme::cnoma_ps, 0, 1), ValidationError);
  p.p_n = 0.6;
  p.p_f = 0.4;
  EXPECT_THROW(estimate(p, Scheme::cnoma_ps, 10, 1), ValidationError);
}

TEST(RunningStats, MergeMatchesSequential) {
  RunningStats all, left, right;
  for (int i = 0; i < 1000; ++i) {
    const double x = std::sin(i * 0.37) * 5.0 + i * 1e-3;
    all.push(x);
    (i < 333 ? left : right).push(x);
  }
  left.merge(right);
  EXPECT_NEAR(left.mean, all.mean, 1e-12);
  EXPECT_NEAR(left.std_error(), all.std_error(), 1e-12);
  EXPECT_EQ(left.n, all.n);
}

}  // namespace
}  // namespace cnoma
