#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "cnoma/montecarlo.hpp"
#include "cnoma/sweep.hpp"

namespace cnoma {

struct ResultRow {
  Axis axis = Axis::rho_db;
  double axis_value = 0.0;
  Scheme scheme = Scheme::cnoma_ps_oam;
  Metric metric = Metric::c_sum;
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_trials = 0;
};

/// Runs every axis point. Each point reuses the sweep seed, so all points see
/// the same per-trial channel draws and curves are compared under common
/// random numbers. Rows are sorted by (axis_value, scheme, metric).
inline std::vector<ResultRow> run_sweep(const SweepSpec& spec, const EstimateOptions& opts = {}) {
  validate(spec);
  std::vector<ResultRow> rows;
  rows.reserve(spec.axis_values.size() * spec.schemes.size() * spec.metrics.size());
  for (double x : spec.axis_values) {
    const SystemParams params = point_params(spec.base_params, spec.axis, x);
    for (const ErgodicEstimate& e : estimate_many(params, spec.schemes, spec.n_trials, spec.seed, opts)) {
      if (std::find(spec.metrics.begin(), spec.metrics.end(), e.metric) == spec.metrics.end()) continue;
      rows.push_back({spec.axis, x, e.scheme, e.metric, e.mean, e.std_error, e.n_trials});
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.axis_value, a.scheme, a.metric) < std::tie(b.axis_value, b.scheme, b.metric);
  });
  return rows;
}

inline constexpr const char* kCsvHeader = "axis,axis_value,scheme,metric,mean,std_error,n_trials";

inline std::string format_sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << to_string(r.axis) << ',' << format_sig9(r.axis_value) << ',' << to_string(r.scheme) << ','
        << to_string(r.metric) << ',' << format_sig9(r.mean) << ',' << format_sig9(r.std_error) << ','
        << r.n_trials << '\n';
  }
}

inline void write_csv_file(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output '" + path + "'");
  write_csv(rows, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing output '" + path + "'");
}

}  // namespace cnoma
