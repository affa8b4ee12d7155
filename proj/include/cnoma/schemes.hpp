#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string_view>

#include "cnoma/channel.hpp"
#include "cnoma/error.hpp"
#include "cnoma/params.hpp"

namespace cnoma {

// Declared in lexicographic order of their names so enum order and text order
// agree when tables are sorted.
enum class Scheme { cnoma_ps, cnoma_ps_oam, cnoma_ts, oma_ps_oam };

inline constexpr std::array<Scheme, 4> kAllSchemes = {Scheme::cnoma_ps, Scheme::cnoma_ps_oam, Scheme::cnoma_ts,
                                                      Scheme::oma_ps_oam};

inline std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::cnoma_ps: return "cnoma-ps";
    case Scheme::cnoma_ps_oam: return "cnoma-ps-oam";
    case Scheme::cnoma_ts: return "cnoma-ts";
    case Scheme::oma_ps_oam: return "oma-ps-oam";
  }
  return "?";
}

inline std::optional<Scheme> parse_scheme(std::string_view s) {
  for (Scheme sc : kAllSchemes)
    if (to_string(sc) == s) return sc;
  return std::nullopt;
}

/// Per-realization SINRs of the two-phase cooperative protocol.
struct SinrSet {
  double s_x1 = 0.0;         // UE1 own symbol after SIC, phase 1
  double s_x2_at_ue1 = 0.0;  // UE1 decoding the far-user symbol, phase 1
  double s_x2_at_ue2 = 0.0;  // UE2 direct link, phase 1
  double s_relay = 0.0;      // UE2 via decode-and-forward relay, phase 2
  double s_x3 = 0.0;         // OAM symbol at UE1, phase 2
  double s_x4 = 0.0;         // OAM symbol at UE2, phase 2

  friend bool operator==(const SinrSet&, const SinrSet&) = default;
};

struct CapacityBreakdown {
  double c_ue1 = 0.0;
  double c_ue2 = 0.0;
  double c_sum = 0.0;
  Scheme scheme = Scheme::cnoma_ps_oam;
  double relay_power = 0.0;
};

struct Phase1Sinrs {
  double x1 = 0.0;
  double x2_at_ue1 = 0.0;
  double x2_at_ue2 = 0.0;
};

struct OamSinrs {
  double x3 = 0.0;
  double x4 = 0.0;
};

/// Power harvested at UE1 and spent on relaying.
inline double harvested_power(const SystemParams& p, double g_s1) {
  return p.eta * p.delta * p.total_power() * g_s1;
}

namespace detail {

// NOMA SINRs for an information-decoding SNR `snr` = (fraction) * rho * g.
inline double own_after_sic(double snr, double p_n) { return snr * p_n; }

inline double far_treating_near_as_noise(double snr, double p_n, double p_f) {
  return snr * p_f / (snr * p_n + 1.0);
}

inline double half_log2p1(double x) { return 0.5 * std::log2(1.0 + x); }

inline CapacityBreakdown finish(Scheme s, double c1, double c2, double relay_power) {
  return {c1, c2, c1 + c2, s, relay_power};
}

}  // namespace detail

inline Phase1Sinrs phase1_sinrs(const SystemParams& p, double g_s1, double g_s2) {
  const double id = 1.0 - p.delta;
  const double snr1 = id * p.rho * g_s1;
  const double snr2 = id * p.rho * g_s2;
  return {detail::own_after_sic(snr1, p.p_n), detail::far_treating_near_as_noise(snr1, p.p_n, p.p_f),
          detail::far_treating_near_as_noise(snr2, p.p_n, p.p_f)};
}

inline double relay_sinr(const SystemParams& p, double g_s1, double g_12) {
  return p.rho * p.eta * p.delta * g_s1 * g_12;
}

inline OamSinrs oam_sinrs(const SystemParams& p, double mu1, double mu2) {
  return {p.rho * mu1, p.rho * mu2};
}

inline SinrSet compute_sinrs(const SystemParams& p, const FadingRealization& r) {
  const Phase1Sinrs ph1 = phase1_sinrs(p, r.g_s1, r.g_s2);
  const OamSinrs oam = oam_sinrs(p, r.mu1, r.mu2);
  return {ph1.x1, ph1.x2_at_ue1, ph1.x2_at_ue2, relay_sinr(p, r.g_s1, r.g_12), oam.x3, oam.x4};
}

inline double far_user_bottleneck(const SinrSet& s) {
  return std::min({s.s_x2_at_ue1, s.s_x2_at_ue2, s.s_relay});
}

/// Proposed scheme: half the frame for NOMA, half for DF relaying with the
/// two OAM symbols sent alongside.
inline CapacityBreakdown capacity_cnoma_ps_oam(const SinrSet& s, double relay_power = 0.0) {
  using detail::half_log2p1;
  return detail::finish(Scheme::cnoma_ps_oam, half_log2p1(s.s_x1) + half_log2p1(s.s_x3),
                        half_log2p1(far_user_bottleneck(s)) + half_log2p1(s.s_x4), relay_power);
}

/// Same protocol without the OAM symbols.
inline CapacityBreakdown capacity_cnoma_ps(const SinrSet& s, double relay_power = 0.0) {
  using detail::half_log2p1;
  return detail::finish(Scheme::cnoma_ps, half_log2p1(s.s_x1), half_log2p1(far_user_bottleneck(s)),
                        relay_power);
}

/// Time-switching benchmark: a fraction alpha of the frame harvests, the rest
/// is split evenly between the NOMA broadcast and the relay hop. No power
/// splitting, so delta never enters.
inline CapacityBreakdown capacity_cnoma_ts(const SystemParams& p, double g_s1, double g_s2, double g_12) {
  const double a = p.alpha_ts;
  detail::require(a > 0.0 && a < 1.0, "alpha_ts must lie in (0,1)");
  const double relay_power = 2.0 * p.eta * a * p.total_power() * g_s1 / (1.0 - a);
  const double snr1 = p.rho * g_s1;
  const double snr2 = p.rho * g_s2;
  const double x1 = detail::own_after_sic(snr1, p.p_n);
  const double x2_ue1 = detail::far_treating_near_as_noise(snr1, p.p_n, p.p_f);
  const double x2_ue2 = detail::far_treating_near_as_noise(snr2, p.p_n, p.p_f);
  const double relay = relay_power * g_12 / p.noise_power;
  const double slot = (1.0 - a) / 2.0;
  return detail::finish(Scheme::cnoma_ts, slot * std::log2(1.0 + x1),
                        slot * std::log2(1.0 + std::min({x2_ue1, x2_ue2, relay})), relay_power);
}

/// TDMA benchmark with four equal slots: x1, x2, relayed x2, and both OAM
/// symbols together.
inline CapacityBreakdown capacity_oma_ps_oam(const SystemParams& p, const FadingRealization& r) {
  const double id = 1.0 - p.delta;
  const double q = 0.25;
  const double c1 = q * std::log2(1.0 + p.rho * id * r.g_s1) + q * std::log2(1.0 + p.rho * r.mu1);
  const double direct = p.rho * id * r.g_s2;
  const double relayed = p.eta * p.delta * p.rho * r.g_s1 * r.g_12;
  const double c2 = q * std::log2(1.0 + std::min(direct, relayed)) + q * std::log2(1.0 + p.rho * r.mu2);
  return detail::finish(Scheme::oma_ps_oam, c1, c2, harvested_power(p, r.g_s1));
}

inline CapacityBreakdown evaluate(Scheme scheme, const SystemParams& p, const FadingRealization& r) {
  switch (scheme) {
    case Scheme::cnoma_ps_oam: return capacity_cnoma_ps_oam(compute_sinrs(p, r), harvested_power(p, r.g_s1));
    case Scheme::cnoma_ps: return capacity_cnoma_ps(compute_sinrs(p, r), harvested_power(p, r.g_s1));
    case Scheme::cnoma_ts: return capacity_cnoma_ts(p, r.g_s1, r.g_s2, r.g_12);
    case Scheme::oma_ps_oam: return capacity_oma_ps_oam(p, r);
  }
  throw ValidationError("unknown scheme");
}

/// Mean relay transmit power, using E[g_s1] = effective mean power of the
/// BS-UE1 link.
inline double mean_relay_power(Scheme scheme, const SystemParams& p) {
  const double omega = p.link_s1.effective_mean_power();
  if (scheme == Scheme::cnoma_ts)
    return 2.0 * p.eta * p.alpha_ts * p.total_power() * omega / (1.0 - p.alpha_ts);
  return p.eta * p.delta * p.total_power() * omega;
}

inline double bs_power_multiplier(Scheme scheme) {
  switch (scheme) {
    case Scheme::cnoma_ps_oam: return 2.0;  // NOMA broadcast + OAM symbols
    case Scheme::oma_ps_oam: return 3.0;    // x1 slot, x2 slot, OAM slot
    case Scheme::cnoma_ps:
    case Scheme::cnoma_ts: return 1.0;
  }
  return 1.0;
}

/// EE from explicit powers: C / (m P + E[P1]) with m the number of BS
/// transmissions the scheme pays for.
inline double energy_efficiency(Scheme scheme, double ergodic_c_sum, double total_power, double mean_relay) {
  detail::require(ergodic_c_sum >= 0.0, "ergodic sum capacity must be >= 0");
  const double denom = bs_power_multiplier(scheme) * total_power + mean_relay;
  detail::require(denom > 0.0, "energy-efficiency denominator is zero");
  return ergodic_c_sum / denom;
}

inline double energy_efficiency(Scheme scheme, double ergodic_c_sum, const SystemParams& p) {
  return energy_efficiency(scheme, ergodic_c_sum, p.total_power(), mean_relay_power(scheme, p));
}

}  // namespace cnoma
