#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

#include "cnoma/error.hpp"
#include "cnoma/params.hpp"
#include "cnoma/rng.hpp"
#include "cnoma/schemes.hpp"

namespace cnoma {

enum class Metric { c_sum, c_ue1, c_ue2, ee };

inline constexpr std::array<Metric, 4> kAllMetrics = {Metric::c_sum, Metric::c_ue1, Metric::c_ue2, Metric::ee};

inline std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::c_sum: return "c_sum";
    case Metric::c_ue1: return "c_ue1";
    case Metric::c_ue2: return "c_ue2";
    case Metric::ee: return "ee";
  }
  return "?";
}

inline std::optional<Metric> parse_metric(std::string_view s) {
  for (Metric m : kAllMetrics)
    if (to_string(m) == s) return m;
  return std::nullopt;
}

struct ErgodicEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_trials = 0;
  Metric metric = Metric::c_sum;
  Scheme scheme = Scheme::cnoma_ps_oam;
};

/// Welford accumulator with Chan's pairwise merge.
struct RunningStats {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  void merge(const RunningStats& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(o.n);
    const double nt = na + nb;
    const double d = o.mean - mean;
    mean += d * nb / nt;
    m2 += o.m2 + d * d * na * nb / nt;
    n += o.n;
  }

  double std_error() const {
    if (n < 2) return 0.0;
    const double var = std::max(m2, 0.0) / static_cast<double>(n - 1);
    return std::sqrt(var / static_cast<double>(n));
  }
};

struct EstimateOptions {
  unsigned workers = 1;
  // Trials per aggregation block. Results depend on this, never on `workers`.
  std::uint64_t block_size = 4096;
};

namespace detail {

struct SchemeStats {
  RunningStats c_ue1, c_ue2, c_sum;

  void merge(const SchemeStats& o) {
    c_ue1.merge(o.c_ue1);
    c_ue2.merge(o.c_ue2);
    c_sum.merge(o.c_sum);
  }
};

using BlockStats = std::array<SchemeStats, kAllSchemes.size()>;

// Runs all trials in fixed blocks and merges the blocks in index order, so the
// result is bitwise independent of the worker count.
inline BlockStats accumulate(const SystemParams& params, std::uint64_t n_trials, std::uint64_t seed,
                             const EstimateOptions& opts, std::vector<Scheme> schemes) {
  std::sort(schemes.begin(), schemes.end());
  schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());
  const std::uint64_t bs = std::max<std::uint64_t>(opts.block_size, 1);
  const std::uint64_t n_blocks = (n_trials + bs - 1) / bs;
  std::vector<BlockStats> blocks(n_blocks);

  auto run_block = [&](std::uint64_t b) {
    BlockStats& acc = blocks[b];
    const std::uint64_t end = std::min(n_trials, (b + 1) * bs);
    for (std::uint64_t i = b * bs; i < end; ++i) {
      Xoshiro256 rng = substream(seed, i);
      const FadingRealization r = draw_realization(params, rng);
      for (Scheme s : schemes) {
        const CapacityBreakdown c = evaluate(s, params, r);
        auto& st = acc[static_cast<std::size_t>(s)];
        st.c_ue1.push(c.c_ue1);
        st.c_ue2.push(c.c_ue2);
        st.c_sum.push(c.c_sum);
      }
    }
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(opts.workers, 1u), n_blocks));
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t b = next++; b < n_blocks; b = next++) run_block(b);
      });
    }
  }

  BlockStats total{};
  for (const auto& blk : blocks)
    for (std::size_t k = 0; k < total.size(); ++k) total[k].merge(blk[k]);
  return total;
}

inline std::vector<ErgodicEstimate> to_estimates(Scheme s, const SchemeStats& st, const SystemParams& params) {
  std::vector<ErgodicEstimate> out;
  out.reserve(kAllMetrics.size());
  const double denom_scale = energy_efficiency(s, 1.0, params);  // EE is linear in C
  for (Metric m : kAllMetrics) {
    ErgodicEstimate e;
    e.metric = m;
    e.scheme = s;
    e.n_trials = st.c_sum.n;
    switch (m) {
      case Metric::c_ue1: e.mean = st.c_ue1.mean; e.std_error = st.c_ue1.std_error(); break;
      case Metric::c_ue2: e.mean = st.c_ue2.mean; e.std_error = st.c_ue2.std_error(); break;
      case Metric::c_sum: e.mean = st.c_sum.mean; e.std_error = st.c_sum.std_error(); break;
      case Metric::ee:
        e.mean = energy_efficiency(s, std::max(st.c_sum.mean, 0.0), params);
        e.std_error = st.c_sum.std_error() * denom_scale;
        break;
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace detail

/// Ergodic capacities and EE of one scheme. Trial i draws its channels from
/// substream(seed, i); metrics are returned in Metric order.
inline std::vector<ErgodicEstimate> estimate(const SystemParams& params, Scheme scheme, std::uint64_t n_trials,
                                             std::uint64_t seed, const EstimateOptions& opts = {}) {
  detail::require(n_trials >= 1, "n_trials must be >= 1");
  params.validate();
  const auto stats = detail::accumulate(params, n_trials, seed, opts, {scheme});
  return detail::to_estimates(scheme, stats[static_cast<std::size_t>(scheme)], params);
}

/// Same as `estimate` for several schemes at once, sharing each trial's
/// realization. Output is grouped by scheme in the order given.
inline std::vector<ErgodicEstimate> estimate_many(const SystemParams& params, const std::vector<Scheme>& schemes,
                                                  std::uint64_t n_trials, std::uint64_t seed,
                                                  const EstimateOptions& opts = {}) {
  detail::require(n_trials >= 1, "n_trials must be >= 1");
  params.validate();
  const auto stats = detail::accumulate(params, n_trials, seed, opts, schemes);
  std::vector<ErgodicEstimate> out;
  for (Scheme s : schemes) {
    auto part = detail::to_estimates(s, stats[static_cast<std::size_t>(s)], params);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace cnoma
