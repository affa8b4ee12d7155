#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cnoma/error.hpp"
#include "cnoma/montecarlo.hpp"
#include "cnoma/params.hpp"
#include "cnoma/schemes.hpp"

namespace cnoma {

enum class Axis { rho_db, d_s1, delta };

inline std::string_view to_string(Axis a) {
  switch (a) {
    case Axis::rho_db: return "rho_db";
    case Axis::d_s1: return "d_s1";
    case Axis::delta: return "delta";
  }
  return "?";
}

inline std::optional<Axis> parse_axis(std::string_view s) {
  for (Axis a : {Axis::rho_db, Axis::d_s1, Axis::delta})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline constexpr std::uint64_t kDefaultSweepTrials = 100'000;
inline constexpr std::uint64_t kDefaultSeed = 42;

struct SweepSpec {
  Axis axis = Axis::rho_db;
  std::vector<double> axis_values;
  SystemParams base_params;
  std::vector<Scheme> schemes{kAllSchemes.begin(), kAllSchemes.end()};
  std::vector<Metric> metrics{Metric::c_sum};
  std::uint64_t n_trials = kDefaultSweepTrials;
  std::uint64_t seed = kDefaultSeed;
  std::string output_path;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// Parameters for one sweep point: the base set with the axis variable
/// overridden. A d_s1 point also moves UE2's relay distance to 1 - d_s1.
inline SystemParams point_params(const SystemParams& base, Axis axis, double value) {
  SystemParams p = base;
  switch (axis) {
    case Axis::rho_db: p.rho = db_to_linear(value); break;
    case Axis::d_s1:
      p.link_s1.distance = value;
      p.link_12.distance = 1.0 - value;
      break;
    case Axis::delta: p.delta = value; break;
  }
  return p;
}

template <class T>
bool has_duplicates(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) != v.end();
}

inline void validate(const SweepSpec& spec) {
  using detail::require;
  require(!spec.axis_values.empty(), "axis_values must not be empty");
  for (std::size_t i = 0; i < spec.axis_values.size(); ++i) {
    require(std::isfinite(spec.axis_values[i]), "axis_values must be finite");
    if (i > 0) require(spec.axis_values[i] > spec.axis_values[i - 1], "axis_values must be strictly increasing");
  }
  if (spec.axis == Axis::d_s1) {
    for (double v : spec.axis_values) require(v > 0.0 && v < 1.0, "d_s1 axis values must lie in (0,1)");
  }
  require(!spec.schemes.empty(), "schemes must not be empty");
  require(!has_duplicates(spec.schemes), "schemes must not repeat");
  require(!spec.metrics.empty(), "metrics must not be empty");
  require(!has_duplicates(spec.metrics), "metrics must not repeat");
  require(spec.n_trials >= 1, "n_trials must be >= 1");
  spec.base_params.validate();
  for (double v : spec.axis_values) {
    try {
      point_params(spec.base_params, spec.axis, v).validate();
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(to_string(spec.axis)) + "=" + std::to_string(v) + ": " + e.what());
    }
  }
}

enum class FigureId { fig3 = 3, fig4, fig5, fig6, fig7, fig8, fig9, fig10 };

inline std::string to_string(FigureId id) { return "fig" + std::to_string(static_cast<int>(id)); }

inline std::optional<FigureId> parse_figure_id(std::string_view s) {
  for (int i = 3; i <= 10; ++i)
    if (s == "fig" + std::to_string(i)) return static_cast<FigureId>(i);
  return std::nullopt;
}

/// Evenly spaced grid lo + i*step; computed per index so the points do not
/// accumulate rounding.
inline std::vector<double> linear_grid(int first, int last, double step) {
  std::vector<double> out;
  for (int i = first; i <= last; ++i) out.push_back(i * step);
  return out;
}

/// Sweep settings for one of the reported figures. `inclusive_delta` extends
/// the delta grid to the degenerate endpoints 0 and 1.
inline SweepSpec figure_preset(FigureId id, bool inclusive_delta = false) {
  SweepSpec spec;
  spec.base_params = SystemParams{};
  spec.base_params.rho = db_to_linear(15.0);

  const auto rho_axis = [&](Metric m) {
    spec.axis = Axis::rho_db;
    spec.axis_values = linear_grid(0, 6, 5.0);
    spec.metrics = {m};
  };
  const auto distance_axis = [&](Metric m) {
    spec.axis = Axis::d_s1;
    spec.axis_values.clear();
    for (int i = 1; i <= 9; ++i) spec.axis_values.push_back(i / 10.0);
    spec.metrics = {m};
    // These two captions swap the OAM modes.
    spec.base_params.oam1.mode = 1;
    spec.base_params.oam2.mode = 2;
  };
  const auto delta_axis = [&](Metric m) {
    spec.axis = Axis::delta;
    spec.axis_values.clear();
    for (int i = inclusive_delta ? 0 : 1; i <= (inclusive_delta ? 20 : 19); ++i) spec.axis_values.push_back(i / 20.0);
    spec.metrics = {m};
  };

  switch (id) {
    case FigureId::fig3: rho_axis(Metric::c_ue1); break;
    case FigureId::fig4: rho_axis(Metric::c_ue2); break;
    case FigureId::fig5: rho_axis(Metric::c_sum); break;
    case FigureId::fig6: distance_axis(Metric::c_sum); break;
    case FigureId::fig7: delta_axis(Metric::c_sum); break;
    case FigureId::fig8: rho_axis(Metric::ee); break;
    case FigureId::fig9: distance_axis(Metric::ee); break;
    case FigureId::fig10: delta_axis(Metric::ee); break;
  }
  return spec;
}

}  // namespace cnoma
