#pragma once

// Flat key=value configuration files.
//
//   # comment
//   axis = delta
//   axis_values = 0.1, 0.5, 0.9
//   rho_db = 15
//
// Every key is optional; missing keys keep the defaults of SweepSpec and
// SystemParams. Unknown or repeated keys are errors. See README.md for the
// key list.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "cnoma/error.hpp"
#include "cnoma/sweep.hpp"

namespace cnoma {
namespace config_detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(',', start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T v{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc{} || ptr != last)
    throw ValidationError(std::string(key) + ": cannot parse '" + std::string(text) + "' as a number");
  return v;
}

inline bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ValidationError(std::string(key) + ": expected true or false, got '" + std::string(text) + "'");
}

template <class T, class Parser>
std::vector<T> parse_enum_list(std::string_view key, std::string_view text, Parser parse) {
  std::vector<T> out;
  for (auto item : split_list(text)) {
    auto v = parse(item);
    if (!v) throw ValidationError(std::string(key) + ": unknown value '" + std::string(item) + "'");
    out.push_back(*v);
  }
  return out;
}

inline std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

using Setter = std::function<void(SweepSpec&, std::string_view key, std::string_view value)>;

inline Setter real(double SystemParams::*field) {
  return [field](SweepSpec& s, std::string_view k, std::string_view v) {
    s.base_params.*field = parse_number<double>(k, v);
  };
}

inline Setter link_field(RicianLink SystemParams::*link, double RicianLink::*field) {
  return [link, field](SweepSpec& s, std::string_view k, std::string_view v) {
    (s.base_params.*link).*field = parse_number<double>(k, v);
  };
}

inline void add_oam_setters(std::map<std::string, Setter, std::less<>>& m, const std::string& prefix,
                            OamConfig SystemParams::*oam) {
  m[prefix + "_mode"] = [oam](SweepSpec& s, std::string_view k, std::string_view v) {
    (s.base_params.*oam).mode = parse_number<int>(k, v);
  };
  m[prefix + "_model"] = [oam](SweepSpec& s, std::string_view k, std::string_view v) {
    auto model = parse_oam_model(v);
    if (!model) throw ValidationError(std::string(k) + ": expected fixed or los-scaled");
    (s.base_params.*oam).model = *model;
  };
  m[prefix + "_fixed_value"] = [oam](SweepSpec& s, std::string_view k, std::string_view v) {
    (s.base_params.*oam).fixed_value = parse_number<double>(k, v);
  };
  m[prefix + "_base_gain"] = [oam](SweepSpec& s, std::string_view k, std::string_view v) {
    if (v == "auto")
      (s.base_params.*oam).base_gain.reset();
    else
      (s.base_params.*oam).base_gain = parse_number<double>(k, v);
  };
}

inline const std::map<std::string, Setter, std::less<>>& setters() {
  static const auto table = [] {
    std::map<std::string, Setter, std::less<>> m;
    m["rho"] = real(&SystemParams::rho);
    m["rho_db"] = [](SweepSpec& s, std::string_view k, std::string_view v) {
      s.base_params.rho = db_to_linear(parse_number<double>(k, v));
    };
    m["p_n"] = real(&SystemParams::p_n);
    m["p_f"] = real(&SystemParams::p_f);
    m["delta"] = real(&SystemParams::delta);
    m["eta"] = real(&SystemParams::eta);
    m["alpha_ts"] = real(&SystemParams::alpha_ts);
    m["noise_power"] = real(&SystemParams::noise_power);
    m["power_sum_rule"] = [](SweepSpec& s, std::string_view k, std::string_view v) {
      auto r = parse_power_sum_rule(v);
      if (!r) throw ValidationError(std::string(k) + ": expected unit or one-minus-delta");
      s.base_params.power_sum_rule = *r;
    };
    m["collinear"] = [](SweepSpec& s, std::string_view k, std::string_view v) {
      s.base_params.collinear = parse_bool(k, v);
    };
    const std::pair<const char*, RicianLink SystemParams::*> links[] = {
        {"s1", &SystemParams::link_s1}, {"s2", &SystemParams::link_s2}, {"12", &SystemParams::link_12}};
    for (const auto& [suffix, link] : links) {
      const std::string sfx = suffix;
      m["k_" + sfx] = link_field(link, &RicianLink::k_factor);
      m["omega_" + sfx] = link_field(link, &RicianLink::mean_power);
      m["d_" + sfx] = link_field(link, &RicianLink::distance);
      m["eps_" + sfx] = link_field(link, &RicianLink::pathloss_exponent);
    }
    add_oam_setters(m, "oam1", &SystemParams::oam1);
    add_oam_setters(m, "oam2", &SystemParams::oam2);

    m["axis"] = [](SweepSpec& s, std::string_view k, std::string_view v) {
      auto a = parse_axis(v);
      if (!a) throw ValidationError(std::string(k) + ": expected rho_db, d_s1 or delta");
      s.axis = *a;
    };
    m["axis_values"] = [](SweepSpec& s, std::string_view k, std::string_view v) {
      s.axis_values.clear();
      for (auto item : split_list(v)) s.axis_values.push_back(parse_number<double>(k, item));
    };
    m["schemes"] = [](SweepSpec& s, std::string_view k, std::string_view v) {
      s.schemes = parse_enum_list<Scheme>(k, v, parse_scheme);
    };
    m["metrics"] = [](SweepSpec& s, std::string_view k, std::string_view v) {
      s.metrics = parse_enum_list<Metric>(k, v, parse_metric);
    };
    m["n_trials"] = [](SweepSpec& s, std::string_view k, std::string_view v) {
      s.n_trials = parse_number<std::uint64_t>(k, v);
    };
    m["seed"] = [](SweepSpec& s, std::string_view k, std::string_view v) {
      s.seed = parse_number<std::uint64_t>(k, v);
    };
    m["output_path"] = [](SweepSpec& s, std::string_view, std::string_view v) { s.output_path = std::string(v); };
    return m;
  }();
  return table;
}

}  // namespace config_detail

/// Sets one key. Throws ValidationError on unknown keys or malformed values.
inline void apply_setting(SweepSpec& spec, std::string_view key, std::string_view value) {
  const auto& table = config_detail::setters();
  const auto it = table.find(config_detail::trim(key));
  if (it == table.end()) throw ValidationError("unknown key '" + std::string(key) + "'");
  it->second(spec, it->first, config_detail::trim(value));
}

/// Applies a "key=value" string, as given on the command line.
inline void apply_override(SweepSpec& spec, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ValidationError("malformed override '" + std::string(assignment) + "', expected key=value");
  apply_setting(spec, assignment.substr(0, eq), assignment.substr(eq + 1));
}

inline SweepSpec parse_config(std::string_view text, SweepSpec spec = {}) {
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = config_detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw ValidationError(where + "expected key = value");
    const auto key = config_detail::trim(line.substr(0, eq));
    if (!seen.insert(std::string(key)).second) throw ValidationError(where + "duplicate key '" + std::string(key) + "'");
    try {
      apply_setting(spec, key, line.substr(eq + 1));
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  if (seen.contains("rho") && seen.contains("rho_db")) throw ValidationError("rho and rho_db are mutually exclusive");
  return spec;
}

inline SweepSpec load_config(const std::string& path, SweepSpec spec = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(spec));
}

/// Writes every key with round-trip exact numbers.
inline std::string serialize_config(const SweepSpec& spec) {
  using config_detail::format_double;
  std::ostringstream out;
  const SystemParams& p = spec.base_params;
  const auto line = [&](std::string_view k, const std::string& v) { out << k << " = " << v << '\n'; };
  const auto join = [](const auto& items) {
    std::string s;
    for (const auto& it : items) {
      if (!s.empty()) s += ", ";
      s += std::string(to_string(it));
    }
    return s;
  };

  out << "# sweep\n";
  line("axis", std::string(to_string(spec.axis)));
  {
    std::string vals;
    for (double v : spec.axis_values) vals += (vals.empty() ? "" : ", ") + format_double(v);
    line("axis_values", vals);
  }
  line("schemes", join(spec.schemes));
  line("metrics", join(spec.metrics));
  line("n_trials", std::to_string(spec.n_trials));
  line("seed", std::to_string(spec.seed));
  line("output_path", spec.output_path);

  out << "# system\n";
  line("rho", format_double(p.rho));
  line("p_n", format_double(p.p_n));
  line("p_f", format_double(p.p_f));
  line("delta", format_double(p.delta));
  line("eta", format_double(p.eta));
  line("alpha_ts", format_double(p.alpha_ts));
  line("noise_power", format_double(p.noise_power));
  line("power_sum_rule", std::string(to_string(p.power_sum_rule)));
  line("collinear", p.collinear ? "true" : "false");
  const std::pair<const char*, const RicianLink*> links[] = {
      {"s1", &p.link_s1}, {"s2", &p.link_s2}, {"12", &p.link_12}};
  for (const auto& [sfx, l] : links) {
    line(std::string("k_") + sfx, format_double(l->k_factor));
    line(std::string("omega_") + sfx, format_double(l->mean_power));
    line(std::string("d_") + sfx, format_double(l->distance));
    line(std::string("eps_") + sfx, format_double(l->pathloss_exponent));
  }
  const std::pair<const char*, const OamConfig*> oams[] = {{"oam1", &p.oam1}, {"oam2", &p.oam2}};
  for (const auto& [pre, o] : oams) {
    const std::string pfx = pre;
    line(pfx + "_mode", std::to_string(o->mode));
    line(pfx + "_model", std::string(to_string(o->model)));
    line(pfx + "_fixed_value", format_double(o->fixed_value));
    line(pfx + "_base_gain", o->base_gain ? format_double(*o->base_gain) : "auto");
  }
  return out.str();
}

}  // namespace cnoma
