#pragma once

// Sweep drivers behind the CLI subcommands.  Each experiment maps a
// parameter list (m values, beta values, dyadic blocks) to fixed-schema
// records; rows are computed in parallel but stored at their own index, so
// output is byte-identical at any job count.  Per-parameter failures land in
// the status column instead of aborting the sweep.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torlab/caps.hpp"
#include "torlab/config.hpp"
#include "torlab/expsums.hpp"
#include "torlab/lattice.hpp"
#include "torlab/parallel.hpp"
#include "torlab/records.hpp"
#include "torlab/restriction.hpp"
#include "torlab/surface.hpp"

namespace torlab {

namespace detail {

inline std::vector<std::int64_t> m_values(const ExperimentConfig& cfg) {
  if (!cfg.m_list.empty()) return cfg.m_list;
  std::vector<std::int64_t> out;
  for (std::int64_t m = cfg.m_min; m <= cfg.m_max; ++m) out.push_back(m);
  return out;
}

inline Hypersurface surface_for(const ExperimentConfig& cfg) {
  if (!cfg.surface_spec.empty()) return parse_surface(cfg.surface_spec);
  return cfg.d == 2 ? Hypersurface::circle(0.25) : Hypersurface::sphere(0.25);
}

// derive a per-parameter seed that does not depend on the sweep layout
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t param) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (param + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <typename Body>
void sweep(RecordTable& table, std::size_t count, int jobs, Body&& body) {
  table.rows.resize(count);
  parallel_for(count, jobs, [&](std::size_t i) {
    try {
      body(i, table.rows[i]);
    } catch (const std::exception& e) {
      // salvage what the body filled in, then mark the row failed: pad to
      // width and overwrite the trailing status column
      table.rows[i].fields.resize(table.columns.size(), std::string("-"));
      table.rows[i].fields.back() = std::string("error: ") + e.what();
    }
  });
}

}  // namespace detail

inline RecordTable run_experiment(const ExperimentConfig& cfg) {
  const auto diags = check_config(cfg);
  if (!diags.empty()) {
    std::string msg = "invalid config:";
    for (const auto& d : diags) msg += "\n  " + d;
    throw std::invalid_argument(msg);
  }
  RecordTable table;
  const std::string& exp = cfg.experiment;

  if (exp == "shells") {
    const auto ms = detail::m_values(cfg);
    table.columns = {"experiment", "d", "m", "seed", "count", "status"};
    detail::sweep(table, ms.size(), cfg.jobs, [&](std::size_t i, ExperimentRecord& row) {
      const std::int64_t m = ms[i];
      const auto count = shell_count({cfg.d, m});
      row.fields = {exp, std::int64_t(cfg.d), m, std::int64_t(cfg.seed),
                    std::int64_t(count), std::string("ok")};
    });
    return table;
  }

  if (exp == "caps") {
    const auto ms = detail::m_values(cfg);
    table.columns = {"experiment", "d", "m", "seed", "r", "mode", "count", "status"};
    detail::sweep(table, ms.size(), cfg.jobs, [&](std::size_t i, ExperimentRecord& row) {
      const std::int64_t m = ms[i];
      row.fields = {exp, std::int64_t(cfg.d), m, std::int64_t(cfg.seed),
                    0.0, std::string("-"), std::int64_t(0), std::string("ok")};
      const ShellSpec spec{cfg.d, m};
      if (shell_count(spec) == 0) {
        row.fields[7] = std::string("empty_shell");
        return;
      }
      const auto shell = enumerate_shell(spec);
      const double r = cfg.cap_r > 0 ? cfg.cap_r
                                     : 2.0 * std::pow(spec.lambda(), 1.0 / 3.0);
      const CapMode mode = (cfg.d == 2) ? CapMode::exact2d : CapMode::centered;
      row.fields[4] = r;
      row.fields[5] = std::string(mode == CapMode::exact2d ? "exact2d" : "centered");
      row.fields[6] = std::int64_t(max_cap_count(shell, r, mode));
    });
    return table;
  }

  if (exp == "jarnik") {
    const auto ms = detail::m_values(cfg);
    table.columns = {"experiment", "d",        "m",          "seed", "count",
                     "min_arc3",   "normalized", "cap_count_2", "status"};
    detail::sweep(table, ms.size(), cfg.jobs, [&](std::size_t i, ExperimentRecord& row) {
      const std::int64_t m = ms[i];
      row.fields = {exp, std::int64_t(2), m, std::int64_t(cfg.seed), std::int64_t(0),
                    0.0, 0.0, std::int64_t(0), std::string("ok")};
      const ShellSpec spec{2, m};
      const auto count = shell_count(spec);
      row.fields[4] = std::int64_t(count);
      if (count < 3) {
        row.fields[8] = std::string(count == 0 ? "empty_shell" : "fewer_than_3");
        return;
      }
      const auto shell = enumerate_shell(spec);
      const double arc = min_enclosing_arc_of_three(shell);
      row.fields[5] = arc;
      row.fields[6] = arc / std::pow(static_cast<double>(m), 1.0 / 6.0);
      row.fields[7] = std::int64_t(max_cap_count(
          shell, 2.0 * std::pow(spec.lambda(), 1.0 / 3.0), CapMode::exact2d));
    });
    return table;
  }

  if (exp == "meansquare") {
    const auto ms = detail::m_values(cfg);
    table.columns = {"experiment", "d",     "m",      "seed",   "count",
                     "cell_side",  "cells", "sum_sq", "normalized", "status"};
    detail::sweep(table, ms.size(), cfg.jobs, [&](std::size_t i, ExperimentRecord& row) {
      const std::int64_t m = ms[i];
      row.fields = {exp, std::int64_t(3), m, std::int64_t(cfg.seed), std::int64_t(0),
                    0.0, std::int64_t(0), std::int64_t(0), 0.0, std::string("ok")};
      const ShellSpec spec{3, m};
      if (shell_count(spec) == 0) {
        row.fields[9] = std::string("empty_shell");
        return;
      }
      const auto shell = enumerate_shell(spec);
      const double side = cfg.cell_side > 0
                              ? cfg.cell_side
                              : std::pow(static_cast<double>(m), 0.25);  // lambda^{1/2}
      const auto hist = cell_histogram(shell, side);
      const auto stat = mean_square_statistic(hist);
      row.fields[4] = std::int64_t(shell.size());
      row.fields[5] = side;
      row.fields[6] = std::int64_t(hist.counts.size());
      row.fields[7] = std::int64_t(stat);
      row.fields[8] = static_cast<double>(stat) / spec.lambda();
    });
    return table;
  }

  if (exp == "sigma") {
    const auto surface = detail::surface_for(cfg);
    table.columns = {"experiment", "d", "block_lo", "seed", "block_hi",
                     "sup_normalized", "status"};
    const auto blocks =
        decay_profile(surface, cfg.r_min, cfg.r_max, cfg.samples, cfg.tol);
    for (const auto& blk : blocks) {
      ExperimentRecord row;
      row.fields = {exp, std::int64_t(surface.dim()), blk.block_lo,
                    std::int64_t(cfg.seed), blk.block_hi, blk.sup_normalized,
                    std::string("ok")};
      table.rows.push_back(row);
    }
    return table;
  }

  if (exp == "restrict" || exp == "certify") {
    const auto surface = detail::surface_for(cfg);
    const auto ms = detail::m_values(cfg);
    table.columns = {"experiment", "d", "m", "seed", "count", "threshold",
                     "groups", "max_group", "offdiag_total", "c_est", "C_est",
                     "lambda_min", "lambda_max", "status"};
    detail::sweep(table, ms.size(), cfg.jobs, [&](std::size_t i, ExperimentRecord& row) {
      const std::int64_t m = ms[i];
      row.fields = {exp, std::int64_t(surface.dim()), m, std::int64_t(cfg.seed),
                    std::int64_t(0), 0.0, std::int64_t(0), std::int64_t(0),
                    0.0, 0.0, 0.0, 0.0, 0.0, std::string("ok")};
      const ShellSpec spec{surface.dim(), m};
      if (shell_count(spec) == 0) {
        row.fields[13] = std::string("empty_shell");
        return;
      }
      const auto shell = enumerate_shell(spec);
      const double threshold = cfg.threshold > 0
                                   ? cfg.threshold
                                   : 2.0 * std::pow(spec.lambda(), 1.0 / 3.0);
      auto rec = cluster_certificate(shell, surface, threshold, cfg.tol);
      const auto full = gram_matrix(shell.points, surface, cfg.tol);
      const auto [lo, hi] = extreme_eigenvalues(full);
      row.fields[4] = std::int64_t(rec.shell_size);
      row.fields[5] = threshold;
      row.fields[6] = std::int64_t(rec.group_count);
      row.fields[7] = std::int64_t(rec.max_group_size);
      row.fields[8] = rec.offdiag_total;
      row.fields[9] = rec.c_est;
      row.fields[10] = rec.C_est;
      row.fields[11] = lo;
      row.fields[12] = hi;
    });
    return table;
  }

  if (exp == "bilinear") {
    std::vector<SetPattern> patterns;
    if (cfg.pattern == "all" || cfg.pattern == "maximal_grid")
      patterns.push_back(SetPattern::maximal_grid);
    if (cfg.pattern == "all" || cfg.pattern == "random_greedy")
      patterns.push_back(SetPattern::random_greedy);
    if (cfg.pattern == "all" || cfg.pattern == "perturbed_grid")
      patterns.push_back(SetPattern::perturbed_grid);
    struct Task {
      double beta;
      SetPattern pattern;
      std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (const double beta : cfg.beta_list)
      for (const auto pat : patterns) {
        const int reps = (pat == SetPattern::maximal_grid) ? 1 : cfg.trials;
        for (int t = 0; t < reps; ++t)
          tasks.push_back({beta, pat,
                           detail::mix_seed(cfg.seed, static_cast<std::uint64_t>(
                                                          beta * 131 + 7 * static_cast<int>(pat) + t))});
      }
    table.columns = {"experiment", "d", "beta", "seed", "pattern", "size_x",
                     "size_y", "magnitude", "trivial_bound", "normalized", "status"};
    detail::sweep(table, tasks.size(), cfg.jobs, [&](std::size_t i, ExperimentRecord& row) {
      const auto& task = tasks[i];
      const char* pname = task.pattern == SetPattern::maximal_grid ? "maximal_grid"
                          : task.pattern == SetPattern::random_greedy ? "random_greedy"
                                                                      : "perturbed_grid";
      const auto xs = separated_set(task.beta, task.pattern, task.seed);
      const auto ys = separated_set(task.beta, task.pattern, task.seed + 1);
      const auto value = bilinear_sum(task.beta, xs, ys);
      const double mag = std::abs(value);
      const double trivial = static_cast<double>(xs.points.size()) * ys.points.size();
      row.fields = {exp,
                    std::int64_t(1),
                    task.beta,
                    std::int64_t(task.seed),
                    std::string(pname),
                    std::int64_t(xs.points.size()),
                    std::int64_t(ys.points.size()),
                    mag,
                    trivial,
                    mag / std::pow(task.beta, 23.0 / 24.0),
                    std::string("ok")};
    });
    return table;
  }

  if (exp == "cappair") {
    const auto surface = cfg.surface_spec.empty() ? Hypersurface::sphere(0.25)
                                                  : parse_surface(cfg.surface_spec);
    const auto ms = detail::m_values(cfg);
    table.columns = {"experiment", "d", "m", "seed", "lambda", "r",
                     "points_a", "points_b", "magnitude", "trivial_bound",
                     "normalized", "status"};
    detail::sweep(table, ms.size(), cfg.jobs, [&](std::size_t i, ExperimentRecord& row) {
      const std::int64_t m = ms[i];
      const std::uint64_t seed = detail::mix_seed(cfg.seed, static_cast<std::uint64_t>(m));
      row.fields = {exp, std::int64_t(3), m, std::int64_t(seed), 0.0, 0.0,
                    std::int64_t(0), std::int64_t(0), 0.0, 0.0, 0.0,
                    std::string("ok")};
      const ShellSpec spec{3, m};
      if (shell_count(spec) == 0) {
        row.fields[11] = std::string("empty_shell");
        return;
      }
      const auto shell = enumerate_shell(spec);
      const double lambda = spec.lambda();
      const double frac = cfg.cap_r > 0 ? cfg.cap_r : 0.25;
      const double r = frac * lambda;
      const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
      const Cap cap_a({inv_sqrt3, inv_sqrt3, inv_sqrt3}, r);
      const Cap cap_b({-inv_sqrt3, -inv_sqrt3, -inv_sqrt3}, r);
      std::vector<LatticePoint> in_caps;
      for (const auto& p : shell.points)
        if (cap_a.contains(p, lambda) || cap_b.contains(p, lambda))
          in_caps.push_back(p);
      row.fields[4] = lambda;
      row.fields[5] = r;
      if (in_caps.empty()) {
        row.fields[11] = std::string("empty_caps");
        return;
      }
      const auto coeffs = random_coefficients(in_caps, seed);
      const auto value = cap_pair_sum(shell, surface, cap_a, cap_b, coeffs);
      double mass_a = 0, mass_b = 0;
      std::int64_t na = 0, nb = 0;
      for (const auto& [p, amp] : coeffs.entries) {
        if (cap_a.contains(p, lambda)) { mass_a += std::abs(amp); ++na; }
        if (cap_b.contains(p, lambda)) { mass_b += std::abs(amp); ++nb; }
      }
      const double mag = std::abs(value);
      row.fields[6] = na;
      row.fields[7] = nb;
      row.fields[8] = mag;
      row.fields[9] = mass_a * mass_b;
      row.fields[10] = mag / lambda;
    });
    return table;
  }

  throw std::invalid_argument("unknown experiment: " + exp);
}

}  // namespace torlab
