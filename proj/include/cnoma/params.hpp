#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "cnoma/channel.hpp"
#include "cnoma/error.hpp"

namespace cnoma {

/// Which identity the NOMA power coefficients must satisfy.
enum class PowerSumRule {
  unit,             // p_n + p_f = 1
  one_minus_delta,  // p_n + p_f = 1 - delta
};

inline std::string_view to_string(PowerSumRule r) {
  return r == PowerSumRule::unit ? "unit" : "one-minus-delta";
}

inline std::optional<PowerSumRule> parse_power_sum_rule(std::string_view s) {
  if (s == "unit") return PowerSumRule::unit;
  if (s == "one-minus-delta") return PowerSumRule::one_minus_delta;
  return std::nullopt;
}

/// OAM side-channel settings. Distance and path-loss exponent come from the
/// matching Rician link; `base_gain` defaults to that link's LOS power.
struct OamConfig {
  int mode = 1;
  OamModel model = OamModel::los_scaled;
  double fixed_value = 1.0;
  std::optional<double> base_gain;

  friend bool operator==(const OamConfig&, const OamConfig&) = default;
};

inline constexpr double kPowerSumTolerance = 1e-9;

struct SystemParams {
  double rho = std::pow(10.0, 1.5);  // transmit SNR P / noise_power, linear (15 dB)
  double p_n = 0.4;
  double p_f = 0.6;
  double delta = 0.3;
  double eta = 0.7;
  double alpha_ts = 0.3;
  double noise_power = 1.0;
  PowerSumRule power_sum_rule = PowerSumRule::unit;
  bool collinear = true;  // forces d_12 = 1 - d_s1

  RicianLink link_s1{5.0, 36.0, 0.5, 2.0};
  RicianLink link_s2{2.0, 9.0, 1.0, 2.0};
  RicianLink link_12{5.0, 36.0, 0.5, 2.0};

  OamConfig oam1{2, OamModel::los_scaled, 1.0, std::nullopt};
  OamConfig oam2{1, OamModel::los_scaled, 1.0, std::nullopt};

  double total_power() const { return rho * noise_power; }

  RicianLink relay_link() const {
    RicianLink l = link_12;
    if (collinear) l.distance = 1.0 - link_s1.distance;
    return l;
  }

  OamChannel oam_channel_1() const { return make_oam(oam1, link_s1); }
  OamChannel oam_channel_2() const { return make_oam(oam2, link_s2); }

  void validate() const {
    using detail::require;
    require(std::isfinite(rho) && rho > 0.0, "rho must be finite and > 0");
    require(std::isfinite(noise_power) && noise_power > 0.0, "noise_power must be finite and > 0");
    require(p_n > 0.0 && p_n < 1.0, "p_n must lie in (0,1)");
    require(p_f > 0.0 && p_f < 1.0, "p_f must lie in (0,1)");
    require(p_n < p_f, "power coefficients must satisfy p_N < p_F (got p_n=" + fmt(p_n) +
                           ", p_f=" + fmt(p_f) + ")");
    require(delta >= 0.0 && delta <= 1.0, "delta must lie in [0,1]");
    require(eta >= 0.0 && eta <= 1.0, "eta must lie in [0,1]");
    require(alpha_ts > 0.0 && alpha_ts < 1.0, "alpha_ts must lie in (0,1)");
    const double target = power_sum_rule == PowerSumRule::unit ? 1.0 : 1.0 - delta;
    require(std::abs(p_n + p_f - target) <= kPowerSumTolerance,
            std::string("power coefficients must satisfy p_n + p_f = ") +
                (power_sum_rule == PowerSumRule::unit ? "1" : "1 - delta") + " (got " + fmt(p_n + p_f) + ")");
    if (collinear) {
      require(link_s1.distance > 0.0 && link_s1.distance < 1.0,
              "collinear geometry requires d_s1 in (0,1)");
    }
    link_s1.validate("link s1");
    link_s2.validate("link s2");
    relay_link().validate("link 12");
    oam_channel_1().validate("oam1");
    oam_channel_2().validate("oam2");
  }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;

 private:
  static OamChannel make_oam(const OamConfig& cfg, const RicianLink& link) {
    OamChannel ch;
    ch.mode = cfg.mode;
    ch.distance = link.distance;
    ch.pathloss_exponent = link.pathloss_exponent;
    ch.model = cfg.model;
    ch.fixed_value = cfg.fixed_value;
    ch.base_gain = cfg.base_gain.value_or(link.k_factor / (link.k_factor + 1.0) * link.mean_power);
    return ch;
  }

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
  }
};

/// Independent draws for the three links plus the deterministic OAM values.
template <class Engine>
FadingRealization draw_realization(const SystemParams& params, Engine& rng) {
  FadingRealization r;
  r.g_s1 = sample_rician_power(params.link_s1, rng);
  r.g_s2 = sample_rician_power(params.link_s2, rng);
  r.g_12 = sample_rician_power(params.relay_link(), rng);
  r.mu1 = oam_singular_value(params.oam_channel_1());
  r.mu2 = oam_singular_value(params.oam_channel_2());
  return r;
}

}  // namespace cnoma
