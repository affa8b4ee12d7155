#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "cnoma/error.hpp"

namespace cnoma {

/// Rician-faded link with distance-scaled mean power.
///
/// The squared envelope |h|^2 has mean `mean_power / distance^pathloss_exponent`
/// and a line-of-sight to scattered power ratio of `k_factor`.
struct RicianLink {
  double k_factor = 0.0;
  double mean_power = 1.0;
  double distance = 1.0;
  double pathloss_exponent = 2.0;

  double effective_mean_power() const { return mean_power / std::pow(distance, pathloss_exponent); }

  /// Mean power carried by the deterministic (LOS) component.
  double los_power() const { return k_factor / (k_factor + 1.0) * effective_mean_power(); }

  void validate(std::string_view name = "link") const {
    const std::string n(name);
    detail::require(std::isfinite(k_factor) && k_factor >= 0.0, n + ": K factor must be finite and >= 0");
    detail::require(std::isfinite(mean_power) && mean_power > 0.0, n + ": mean power must be finite and > 0");
    detail::require(std::isfinite(distance) && distance > 0.0, n + ": distance must be finite and > 0");
    detail::require(std::isfinite(pathloss_exponent) && pathloss_exponent >= 0.0,
                    n + ": path-loss exponent must be finite and >= 0");
    const double eff = effective_mean_power();
    detail::require(std::isfinite(eff) && eff > 0.0, n + ": effective mean power must be finite and > 0");
  }

  friend bool operator==(const RicianLink&, const RicianLink&) = default;
};

enum class OamModel { fixed, los_scaled };

inline std::string_view to_string(OamModel m) {
  return m == OamModel::fixed ? "fixed" : "los-scaled";
}

inline std::optional<OamModel> parse_oam_model(std::string_view s) {
  if (s == "fixed") return OamModel::fixed;
  if (s == "los-scaled") return OamModel::los_scaled;
  return std::nullopt;
}

/// LOS OAM side channel. Produces a deterministic singular value mu.
struct OamChannel {
  int mode = 1;
  double distance = 1.0;
  double pathloss_exponent = 2.0;
  OamModel model = OamModel::los_scaled;
  double fixed_value = 1.0;
  double base_gain = 1.0;  // gain at unit distance for the los-scaled model

  void validate(std::string_view name = "oam") const {
    const std::string n(name);
    detail::require(mode >= 1, n + ": OAM mode must be >= 1");
    detail::require(std::isfinite(distance) && distance > 0.0, n + ": distance must be finite and > 0");
    detail::require(std::isfinite(pathloss_exponent) && pathloss_exponent >= 0.0,
                    n + ": path-loss exponent must be finite and >= 0");
    if (model == OamModel::fixed) {
      detail::require(std::isfinite(fixed_value) && fixed_value > 0.0, n + ": fixed value must be finite and > 0");
    } else {
      detail::require(std::isfinite(base_gain) && base_gain > 0.0, n + ": base gain must be finite and > 0");
    }
  }

  friend bool operator==(const OamChannel&, const OamChannel&) = default;
};

/// One draw of the three squared channel gains and the two OAM singular values.
struct FadingRealization {
  double g_s1 = 0.0;
  double g_s2 = 0.0;
  double g_12 = 0.0;
  double mu1 = 1.0;
  double mu2 = 1.0;

  friend bool operator==(const FadingRealization&, const FadingRealization&) = default;
};

/// Draws |h|^2 for h = sqrt(K W/(K+1)) + sqrt(W/(K+1)) w, w ~ CN(0,1),
/// W the effective mean power. The LOS phase is fixed at zero.
template <class Engine>
double sample_rician_power(const RicianLink& link, Engine& rng) {
  link.validate();
  const double omega = link.effective_mean_power();
  const double los = std::sqrt(link.k_factor * omega / (link.k_factor + 1.0));
  const double scatter = std::sqrt(omega / (link.k_factor + 1.0));
  // CN(0,1): each quadrature has variance 1/2.
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  const double re = los + scatter * gauss(rng);
  const double im = scatter * gauss(rng);
  return re * re + im * im;
}

inline double oam_singular_value(const OamChannel& ch) {
  ch.validate();
  if (ch.model == OamModel::fixed) return ch.fixed_value;
  return ch.base_gain / std::pow(ch.distance, ch.pathloss_exponent);
}

}  // namespace cnoma
