// cnoma-sim: command-line front end for the SWIPT cooperative-NOMA/OAM
// capacity simulator.
//
//   cnoma-sim figure fig5 --trials 100000 --seed 42
//   cnoma-sim sweep my.cfg --out result.csv
//   cnoma-sim point --set rho_db=15
//   cnoma-sim validate my.cfg

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cnoma/cnoma.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;
constexpr const char* kOutDirEnv = "CNOMA_OUT_DIR";

struct Common {
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Common& c, bool with_out = true) {
  cmd->add_option("--trials", c.trials, "Monte Carlo trials per point (default 100000)");
  cmd->add_option("--seed", c.seed, "Master seed (default 42)");
  cmd->add_option("--workers", c.workers, "Worker threads; results do not depend on this")->check(CLI::PositiveNumber);
  cmd->add_option("--set,--overrides", c.overrides, "Override a config key, key=value (repeatable)");
  if (with_out) cmd->add_option("--out", c.out, "Output CSV path (default: stdout or $" + std::string(kOutDirEnv) + ")");
}

void apply_common(cnoma::SweepSpec& spec, const Common& c) {
  for (const auto& o : c.overrides) cnoma::apply_override(spec, o);
  if (c.trials) spec.n_trials = *c.trials;
  if (c.seed) spec.seed = *c.seed;
}

// --out, then output_path from the config, then $CNOMA_OUT_DIR/<stem>.csv,
// then stdout.
std::string resolve_output(const Common& c, const cnoma::SweepSpec& spec, const std::string& stem) {
  if (!c.out.empty()) return c.out;
  if (!spec.output_path.empty()) return spec.output_path;
  if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0')
    return (std::filesystem::path(dir) / (stem + ".csv")).string();
  return {};
}

void emit(const std::vector<cnoma::ResultRow>& rows, const std::string& path) {
  if (path.empty() || path == "-")
    cnoma::write_csv(rows, std::cout);
  else
    cnoma::write_csv_file(rows, path);
}

cnoma::FigureId figure_or_throw(const std::string& id) {
  auto fig = cnoma::parse_figure_id(id);
  if (!fig) throw cnoma::ValidationError("unknown figure id '" + id + "' (expected fig3..fig10)");
  return *fig;
}

void print_point(const cnoma::SystemParams& params, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  using namespace cnoma;
  const std::vector<Scheme> schemes(kAllSchemes.begin(), kAllSchemes.end());
  const auto est = estimate_many(params, schemes, trials, seed, {workers});
  std::cout << "scheme,c_ue1,c_ue1_se,c_ue2,c_ue2_se,c_sum,c_sum_se,ee,ee_se,n_trials\n";
  for (Scheme s : schemes) {
    const auto find = [&](Metric m) {
      for (const auto& e : est)
        if (e.scheme == s && e.metric == m) return e;
      return ErgodicEstimate{};
    };
    std::cout << to_string(s);
    for (Metric m : {Metric::c_ue1, Metric::c_ue2, Metric::c_sum, Metric::ee}) {
      const auto e = find(m);
      std::cout << ',' << format_sig9(e.mean) << ',' << format_sig9(e.std_error);
    }
    std::cout << ',' << trials << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SWIPT cooperative-NOMA downlink with OAM side channels: ergodic capacity simulator"};
  app.require_subcommand(1);

  Common fig_opts;
  std::string fig_id;
  bool inclusive = false;
  bool dump_config = false;
  auto* figure = app.add_subcommand("figure", "Run a figure preset (fig3..fig10)");
  figure->add_option("id", fig_id, "Figure id")->required();
  figure->add_flag("--inclusive", inclusive, "Include delta = 0 and 1 in delta sweeps");
  figure->add_flag("--dump-config", dump_config, "Print the preset as a config file instead of running it");
  add_common(figure, fig_opts);

  Common sweep_opts;
  std::string sweep_cfg;
  auto* sweep = app.add_subcommand("sweep", "Run a sweep described by a config file");
  sweep->add_option("config", sweep_cfg, "Config file")->required();
  add_common(sweep, sweep_opts);

  Common point_opts;
  std::string point_cfg;
  auto* point = app.add_subcommand("point", "Ergodic metrics of all four schemes at one parameter set");
  point->add_option("--config", point_cfg, "Config file supplying the system parameters");
  add_common(point, point_opts, false);

  std::string validate_cfg;
  std::string validate_fig;
  auto* validate = app.add_subcommand("validate", "Check a config file (or a preset) and exit 0 if valid");
  auto* vcfg = validate->add_option("config", validate_cfg, "Config file");
  auto* vfig = validate->add_option("--figure", validate_fig, "Validate a figure preset instead");
  vcfg->excludes(vfig);
  vfig->excludes(vcfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*figure) {
      const auto id = figure_or_throw(fig_id);
      auto spec = cnoma::figure_preset(id, inclusive);
      apply_common(spec, fig_opts);
      if (dump_config) {
        std::cout << cnoma::serialize_config(spec);
        return kExitOk;
      }
      const auto rows = cnoma::run_sweep(spec, {fig_opts.workers});
      emit(rows, resolve_output(fig_opts, spec, cnoma::to_string(id)));
    } else if (*sweep) {
      auto spec = cnoma::load_config(sweep_cfg);
      apply_common(spec, sweep_opts);
      const auto rows = cnoma::run_sweep(spec, {sweep_opts.workers});
      emit(rows, resolve_output(sweep_opts, spec, std::filesystem::path(sweep_cfg).stem().string()));
    } else if (*point) {
      cnoma::SweepSpec spec;
      if (!point_cfg.empty()) spec = cnoma::load_config(point_cfg);
      apply_common(spec, point_opts);
      spec.base_params.validate();
      print_point(spec.base_params, spec.n_trials, spec.seed, point_opts.workers);
    } else if (*validate) {
      cnoma::SweepSpec spec;
      if (!validate_fig.empty())
        spec = cnoma::figure_preset(figure_or_throw(validate_fig));
      else if (!validate_cfg.empty())
        spec = cnoma::load_config(validate_cfg);
      else
        throw cnoma::ValidationError("validate needs a config file or --figure");
      cnoma::validate(spec);
      std::cout << "ok\n";
    }
  } catch (const cnoma::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
