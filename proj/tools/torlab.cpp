// Batch driver for the lattice-shell / restriction experiments.
//
//   torlab <experiment> [flags]     run a sweep, write CSV or JSON
//   torlab validate <config-file>   schema-check a config file
//
// Flags override config-file values.  Outputs are deterministic given
// (config, seed) at any --jobs value, and are written atomically.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torlab/config.hpp"
#include "torlab/experiments.hpp"
#include "torlab/records.hpp"

namespace {

void add_experiment_flags(CLI::App* cmd, torlab::ExperimentConfig& cfg,
                          std::string& m_list_str, std::string& beta_list_str) {
  cmd->add_option("--d", cfg.d, "dimension (2..5)");
  cmd->add_option("--m-min", cfg.m_min, "first norm-square of the sweep");
  cmd->add_option("--m-max", cfg.m_max, "last norm-square of the sweep");
  cmd->add_option("--m-list", m_list_str, "comma-separated norm-squares (overrides the range)");
  cmd->add_option("--beta-list", beta_list_str, "comma-separated beta values");
  cmd->add_option("--surface", cfg.surface_spec,
                  "surface spec, e.g. circle:rho=0.25,cx=0.5,cy=0.5 or "
                  "ellipsoid:a=0.3,b=0.25,c=0.2");
  cmd->add_option("--threshold", cfg.threshold,
                  "cluster threshold (default 2*lambda^{1/3})");
  cmd->add_option("--tol", cfg.tol, "quadrature tolerance");
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--out", cfg.out, "output path (default stdout)");
  cmd->add_option("--format", cfg.format, "csv|json");
  cmd->add_option("--jobs", cfg.jobs, "worker threads (output is jobs-invariant)");
  cmd->add_option("--r", cfg.cap_r,
                  "cap size: arc/chordal radius; for cappair, a fraction of lambda "
                  "(default 0.25)");
  cmd->add_option("--r-min", cfg.r_min, "sigma: lowest frequency magnitude");
  cmd->add_option("--r-max", cfg.r_max, "sigma: highest frequency magnitude");
  cmd->add_option("--samples", cfg.samples, "sigma: radii sampled per dyadic block");
  cmd->add_option("--pattern", cfg.pattern,
                  "bilinear: all|maximal_grid|random_greedy|perturbed_grid");
  cmd->add_option("--trials", cfg.trials, "randomized repetitions per parameter");
  cmd->add_option("--cell-side", cfg.cell_side,
                  "meansquare: cell side (default m^{1/4})");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice shells, restriction Gram spectra, and exponential sums"};
  app.require_subcommand(1);

  torlab::ExperimentConfig cfg;
  std::string m_list_str, beta_list_str, config_path;

  // pre-scan: the config file seeds cfg before CLI11 applies flag overrides
  std::string subcommand;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) config_path = argv[i + 1];
    else if (subcommand.empty() && !arg.empty() && arg[0] != '-') subcommand = arg;
  }
  const auto& names = torlab::experiment_names();
  const bool is_experiment =
      std::find(names.begin(), names.end(), subcommand) != names.end();
  if (!config_path.empty() && is_experiment) {
    cfg.experiment = subcommand;
    if (subcommand == "meansquare" || subcommand == "cappair") cfg.d = 3;
    try {
      torlab::load_config_file(cfg, config_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }

  for (const auto& name : names) {
    auto* cmd = app.add_subcommand(name, "run the '" + name + "' sweep");
    cmd->add_option("--config", config_path, "key=value config file with [" + name + "] section");
    add_experiment_flags(cmd, cfg, m_list_str, beta_list_str);
  }
  auto* validate_cmd =
      app.add_subcommand("validate", "schema-check a config file without running");
  std::string validate_path;
  validate_cmd->add_option("path", validate_path, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  const auto* chosen = app.get_subcommands().front();
  if (chosen == validate_cmd) {
    try {
      const auto diags = torlab::validate_config_file(validate_path);
      for (const auto& d : diags) std::cout << d << "\n";
      return diags.empty() ? 0 : 1;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }

  cfg.experiment = chosen->get_name();
  if (cfg.surface_spec.empty() && (cfg.experiment == "meansquare" || cfg.experiment == "cappair"))
    cfg.d = 3;
  try {
    if (!m_list_str.empty()) torlab::apply_key(cfg, "m-list", m_list_str);
    if (!beta_list_str.empty()) torlab::apply_key(cfg, "beta-list", beta_list_str);
    const auto table = torlab::run_experiment(cfg);
    const std::string payload =
        (cfg.format == "json") ? torlab::to_json(table) : torlab::to_csv(table);
    if (cfg.out.empty()) {
      std::cout << payload;
    } else {
      torlab::write_atomic(cfg.out, payload);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
