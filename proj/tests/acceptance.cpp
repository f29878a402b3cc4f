// Acceptance suite: one pass/fail line per criterion, exit status 0 only if
// every criterion passes.  argv[1] must be the path to the torlab CLI binary
// (used by the determinism criterion).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "torlab/caps.hpp"
#include "torlab/config.hpp"
#include "torlab/experiments.hpp"
#include "torlab/expsums.hpp"
#include "torlab/lattice.hpp"
#include "torlab/parallel.hpp"
#include "torlab/restriction.hpp"
#include "torlab/surface.hpp"

using namespace torlab;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail,
            double seconds) {
  if (!pass) ++g_failures;
  std::printf("[%s] %-24s %s (%.1fs)\n", pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str(), seconds);
  std::fflush(stdout);
}

template <typename F>
void run_criterion(const std::string& name, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(name, pass, detail, dt);
}

std::int64_t nearest_admissible(int d, std::int64_t target) {
  for (std::int64_t delta = 0;; ++delta) {
    if (target - delta >= 1 && shell_count({d, target - delta}) > 0)
      return target - delta;
    if (shell_count({d, target + delta}) > 0) return target + delta;
  }
}

std::vector<std::int64_t> admissible_log_targets(int d, std::int64_t lo,
                                                 std::int64_t hi, int count) {
  std::vector<std::int64_t> out;
  for (int i = 0; i < count; ++i) {
    const double t = std::log(static_cast<double>(lo)) +
                     (std::log(static_cast<double>(hi)) -
                      std::log(static_cast<double>(lo))) *
                         i / (count - 1);
    out.push_back(nearest_admissible(d, std::llround(std::exp(t))));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::int64_t> first_admissible(int d, int count) {
  std::vector<std::int64_t> out;
  for (std::int64_t m = 2; static_cast<int>(out.size()) < count; ++m)
    if (shell_count({d, m}) > 0) out.push_back(m);
  return out;
}

// --- criterion 1 ---------------------------------------------------------
bool shell_count_oracle(std::string& detail) {
  std::atomic<std::int64_t> first_bad{-1};
  for (std::int64_t m = 0; m <= 100000; ++m) {
    if (shell_count({2, m}) != two_squares_count_oracle(m)) {
      first_bad = m;
      break;
    }
  }
  detail = first_bad < 0 ? "all m <= 1e5 match the divisor formula"
                         : "mismatch at m=" + std::to_string(first_bad);
  return first_bad < 0;
}

// --- criterion 2 ---------------------------------------------------------
bool jarnik_floor(std::string& detail) {
  constexpr std::int64_t kMax = 1000000;
  constexpr std::size_t kChunk = 2000;
  const std::size_t chunks = (kMax + kChunk - 1) / kChunk;
  std::mutex mu;
  double min_normalized = std::numeric_limits<double>::infinity();
  std::uint64_t max_caps = 0;
  std::atomic<std::int64_t> bad_m{-1};
  parallel_for(chunks, 0, [&](std::size_t c) {
    double local_min = std::numeric_limits<double>::infinity();
    std::uint64_t local_caps = 0;
    for (std::int64_t m = std::max<std::int64_t>(2, c * kChunk);
         m < std::min<std::int64_t>(kMax + 1, (c + 1) * kChunk); ++m) {
      const ShellSpec spec{2, m};
      if (shell_count(spec) < 3) continue;
      const auto shell = enumerate_shell(spec);
      const double normalized = min_enclosing_arc_of_three(shell) /
                                std::pow(static_cast<double>(m), 1.0 / 6.0);
      const auto caps = max_cap_count(
          shell, 2.0 * std::pow(spec.lambda(), 1.0 / 3.0), CapMode::exact2d);
      local_min = std::min(local_min, normalized);
      local_caps = std::max(local_caps, caps);
      if (normalized < 2.0 || caps > 2) bad_m = m;
    }
    std::lock_guard<std::mutex> lock(mu);
    min_normalized = std::min(min_normalized, local_min);
    max_caps = std::max(max_caps, local_caps);
  });
  std::ostringstream out;
  out << "min arc/m^{1/6}=" << min_normalized << ", max caps=" << max_caps
      << " over m <= 1e6";
  if (bad_m >= 0) out << ", first violation m=" << bad_m;
  detail = out.str();
  return bad_m < 0;
}

// --- criterion 3 ---------------------------------------------------------
bool sigma_hat_oracle(std::string& detail) {
  std::mutex mu;
  double worst_abs = 0, worst_rel = 0;
  int asym_checked = 0;
  for (int dim : {2, 3}) {
    const auto surface =
        dim == 2 ? Hypersurface::circle(0.25) : Hypersurface::sphere(0.25);
    const double rho = 0.25;
    std::vector<std::vector<double>> freqs(1000);
    {
      std::mt19937_64 rng(dim == 2 ? 101 : 103);
      std::normal_distribution<double> gauss;
      std::uniform_real_distribution<double> radius(1.0, 1000.0);
      for (auto& xi : freqs) {
        xi.resize(dim);
        double n2 = 0;
        do {
          n2 = 0;
          for (auto& v : xi) { v = gauss(rng); n2 += v * v; }
        } while (n2 < 1e-12);
        const double scale = radius(rng) / std::sqrt(n2);
        for (auto& v : xi) v *= scale;
      }
    }
    parallel_for(freqs.size(), 0, [&](std::size_t i) {
      const auto& xi = freqs[i];
      double r2 = 0;
      for (double v : xi) r2 += v * v;
      const double r = std::sqrt(r2);
      const Complex cf = sigma_hat_closed_form(surface, xi).value;
      const Complex quad = sigma_hat(surface, xi, 1e-8).value;
      const double abs_err = std::abs(quad - cf);
      double rel_err = 0;
      bool counted = false;
      if (r >= 400.0) {
        // skip frequencies close to an envelope zero of the closed form
        const double env = dim == 2
                               ? std::sqrt(1.0 / (std::numbers::pi *
                                                  std::numbers::pi * rho * r))
                               : 1.0 / (2 * std::numbers::pi * rho * r);
        if (std::abs(cf) >= 0.3 * env) {
          const Complex asym = sigma_hat_asymptotic(surface, xi).value;
          rel_err = std::abs(asym - cf) / std::abs(cf);
          counted = true;
        }
      }
      std::lock_guard<std::mutex> lock(mu);
      worst_abs = std::max(worst_abs, abs_err);
      if (counted) {
        worst_rel = std::max(worst_rel, rel_err);
        ++asym_checked;
      }
    });
  }
  std::ostringstream out;
  out << "max |quad-closed|=" << worst_abs << ", max asym rel err=" << worst_rel
      << " (" << asym_checked << " freqs with |xi|>=400)";
  detail = out.str();
  return worst_abs <= 1e-6 && worst_rel <= 0.05 && asym_checked > 100;
}

// --- criterion 4 ---------------------------------------------------------
bool decay_profile_bound(std::string& detail) {
  std::ostringstream out;
  bool ok = true;
  for (int dim : {2, 3}) {
    const auto surface =
        dim == 2 ? Hypersurface::circle(0.25) : Hypersurface::sphere(0.25);
    const auto blocks = decay_profile(surface, 16.0, 1024.0, 8, 1e-8);
    double bottom = 0, top = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (!std::isfinite(blocks[i].sup_normalized)) ok = false;
      (i < blocks.size() / 2 ? bottom : top) =
          std::max(i < blocks.size() / 2 ? bottom : top, blocks[i].sup_normalized);
    }
    if (!(top <= 1.5 * bottom)) ok = false;
    out << "d=" << dim << " top/bottom=" << top / bottom << "  ";
  }
  detail = out.str() + "(need <= 1.5)";
  return ok;
}

// --- criterion 5 ---------------------------------------------------------
bool restriction_identity(std::string& detail) {
  std::mutex mu;
  double worst = 0;
  for (int dim : {2, 3}) {
    const auto surface =
        dim == 2 ? Hypersurface::circle(0.25) : Hypersurface::sphere(0.25);
    const auto ms = first_admissible(dim, 20);
    parallel_for(ms.size(), 0, [&](std::size_t i) {
      const auto shell = enumerate_shell({dim, ms[i]});
      const auto gram = gram_matrix(shell.points, surface, 1e-9);
      double local = 0;
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto coeffs = random_coefficients(
            shell.points, seed + 10000 * static_cast<std::uint64_t>(ms[i]));
        local = std::max(local,
                         std::abs(restriction_norm_sq(coeffs, gram) -
                                  direct_restriction_norm_sq(coeffs, surface, 1e-8)));
      }
      std::lock_guard<std::mutex> lock(mu);
      worst = std::max(worst, local);
    });
  }
  std::ostringstream out;
  out << "max |gram - quadrature| = " << worst
      << " over 100 vectors x 20 shells, d=2 and d=3";
  detail = out.str();
  return worst <= 1e-5;
}

// --- criteria 6 and 7 share this sweep -----------------------------------
std::vector<RestrictionSweepRecord> g_sweep;

bool spectrum_positivity(std::string& detail) {
  const auto circle = Hypersurface::circle(0.25);
  const auto ms = admissible_log_targets(2, 10000, 1000000, 120);
  g_sweep.resize(ms.size());
  parallel_for(ms.size(), 0, [&](std::size_t i) {
    const auto shell = enumerate_shell({2, ms[i]});
    const double threshold = 2.0 * std::pow(shell.spec.lambda(), 1.0 / 3.0);
    auto rec = cluster_certificate(shell, circle, threshold, 1e-8);
    const auto [lo, hi] = extreme_eigenvalues(gram_matrix(shell.points, circle));
    rec.lambda_min = lo;
    rec.lambda_max = hi;
    g_sweep[i] = rec;
  });
  double min_lambda = std::numeric_limits<double>::infinity();
  for (const auto& rec : g_sweep)
    min_lambda = std::min(min_lambda, rec.lambda_min);
  // no-degradation trend between the lower and upper half of the m range
  const std::size_t half = g_sweep.size() / 2;
  double lo_min = std::numeric_limits<double>::infinity(), hi_min = lo_min;
  double lo_max = 0, hi_max = 0;
  for (std::size_t i = 0; i < g_sweep.size(); ++i) {
    auto& mn = i < half ? lo_min : hi_min;
    auto& mx = i < half ? lo_max : hi_max;
    mn = std::min(mn, g_sweep[i].lambda_min);
    mx = std::max(mx, g_sweep[i].lambda_max);
  }
  std::ostringstream out;
  out << g_sweep.size() << " shells, min lambda_min=" << min_lambda
      << ", halves min " << lo_min << "->" << hi_min << ", max " << lo_max
      << "->" << hi_max;
  detail = out.str();
  return g_sweep.size() >= 100 && min_lambda > 0 && hi_min >= 0.5 * lo_min &&
         hi_max <= 2.0 * lo_max;
}

bool certificate_soundness(std::string& detail) {
  if (g_sweep.empty()) {
    detail = "sweep unavailable";
    return false;
  }
  bool sound = true;
  std::vector<SumRecord> t_records;
  for (const auto& rec : g_sweep) {
    if (rec.c_est > rec.lambda_min + 1e-10 || rec.C_est < rec.lambda_max - 1e-10)
      sound = false;
    SumRecord r;
    r.parameter = std::sqrt(static_cast<double>(rec.m));  // lambda
    r.magnitude = rec.offdiag_total;
    t_records.push_back(r);
  }
  const auto fit = exponent_fit(t_records);
  std::ostringstream out;
  out << (sound ? "all certificates contain the spectrum" : "CERTIFICATE VIOLATION")
      << ", T-vs-lambda slope=" << fit.slope << " (need <= " << (-1.0 / 6 + 0.05)
      << ")";
  detail = out.str();
  return sound && fit.slope <= -1.0 / 6 + 0.05;
}

// --- criterion 8 ---------------------------------------------------------
bool coplanar_caps(std::string& detail) {
  constexpr std::int64_t kMax = 10000;
  std::atomic<std::int64_t> bad_m{-1};
  std::atomic<std::int64_t> caps_checked{0};
  parallel_for(kMax - 1, 0, [&](std::size_t idx) {
    const std::int64_t m = static_cast<std::int64_t>(idx) + 2;
    const ShellSpec spec{3, m};
    if (shell_count(spec) == 0) return;
    const auto shell = enumerate_shell(spec);
    const double r = 0.5 * std::pow(static_cast<double>(m), 1.0 / 8.0);
    const double r2 = r * r;
    std::int64_t local = 0;
    std::vector<LatticePoint> in_cap;
    for (const auto& p : shell.points) {
      in_cap.clear();
      for (const auto& q : shell.points)
        if (squared_distance(p, q) <= r2) in_cap.push_back(q);
      ++local;
      if (!coplanarity_check(in_cap)) bad_m = m;
    }
    caps_checked += local;
  });
  detail = "all " + std::to_string(caps_checked.load()) +
           " caps coplanar over m <= 1e4" +
           (bad_m >= 0 ? ", counterexample at m=" + std::to_string(bad_m) : "");
  return bad_m < 0;
}

// --- criterion 9 ---------------------------------------------------------
bool mean_square(std::string& detail) {
  const auto ms = admissible_log_targets(3, 1000, 100000, 220);
  std::vector<SumRecord> records(ms.size());
  std::atomic<bool> partition_ok{true};
  parallel_for(ms.size(), 0, [&](std::size_t i) {
    const auto shell = enumerate_shell({3, ms[i]});
    const double side = std::pow(static_cast<double>(ms[i]), 0.25);
    const auto hist = cell_histogram(shell, side);
    std::uint64_t total = 0;
    for (const auto& [cell, c] : hist.counts) total += c;
    if (total != shell.size()) partition_ok = false;
    records[i].parameter = shell.spec.lambda();
    records[i].magnitude = static_cast<double>(mean_square_statistic(hist));
  });
  const auto fit = exponent_fit(records);
  std::ostringstream out;
  out << ms.size() << " shells, sum N^2 slope=" << fit.slope
      << " (need <= 1.3), partition identity "
      << (partition_ok ? "exact" : "VIOLATED");
  detail = out.str();
  return partition_ok && fit.slope <= 1.3;
}

// --- criterion 10 --------------------------------------------------------
bool bilinear_bound(std::string& detail) {
  double worst_ratio = 0;
  bool ok = true;
  for (double beta : {1e3, 1e4, 1e5, 1e6}) {
    const double bound = std::pow(beta, 23.0 / 24.0 + 0.05);
    for (int set_id = 0; set_id <= 10; ++set_id) {
      const SetPattern pat = set_id == 0 ? SetPattern::maximal_grid
                             : set_id <= 5 ? SetPattern::random_greedy
                                           : SetPattern::perturbed_grid;
      const auto xs = separated_set(beta, pat, 2 * set_id);
      const auto ys = separated_set(beta, pat, 2 * set_id + 1);
      const double mag = std::abs(bilinear_sum(beta, xs, ys));
      const double trivial =
          static_cast<double>(xs.points.size()) * ys.points.size();
      if (mag > bound || mag > trivial + 1e-9) ok = false;
      worst_ratio = std::max(worst_ratio, mag / bound);
    }
  }
  std::ostringstream out;
  out << "max |S| / beta^{23/24+0.05} = " << worst_ratio
      << " over beta in {1e3..1e6}, 11 set pairs each";
  detail = out.str();
  return ok;
}

// --- criterion 11 --------------------------------------------------------
bool cap_pair_exponent(std::string& detail) {
  ExperimentConfig cfg;
  cfg.experiment = "cappair";
  cfg.d = 3;
  cfg.m_list = admissible_log_targets(3, 50, 30000, 40);
  cfg.jobs = 0;
  const auto table = run_experiment(cfg);
  std::vector<SumRecord> records;
  for (const auto& row : table.rows) {
    if (std::get<std::string>(row.fields.back()) != "ok") continue;
    SumRecord r;
    r.parameter = std::get<double>(row.fields[4]);   // lambda
    r.magnitude = std::get<double>(row.fields[8]);   // |S|
    records.push_back(r);
  }
  const auto fit = exponent_fit(records);
  std::ostringstream out;
  out << records.size() << " shells, cap-pair |S| vs lambda exponent=" << fit.slope
      << " (need <= 1.0)";
  detail = out.str();
  return records.size() >= 20 && fit.slope <= 1.0;
}

// --- criterion 12 --------------------------------------------------------
bool cli_determinism(const std::string& cli, std::string& detail) {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path();
  const std::vector<std::string> commands = {
      "shells --d 2 --m-min 2 --m-max 500",
      "caps --d 2 --m-min 2 --m-max 200",
      "jarnik --m-min 2 --m-max 300",
      "meansquare --m-min 2 --m-max 200",
      "sigma --surface circle:rho=0.25 --r-min 16 --r-max 64 --samples 2",
      "restrict --m-list 25,50,65",
      "certify --m-list 25,50,65",
      "bilinear --beta-list 100,1000 --trials 3",
      "cappair --d 3 --m-list 100,101,200",
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  };
  for (const auto& cmd : commands) {
    std::string reference;
    for (int jobs : {1, 3, 8}) {
      const auto out = dir / ("torlab_det_" + std::to_string(jobs) + ".csv");
      const std::string full = "\"" + cli + "\" " + cmd + " --seed 5 --jobs " +
                               std::to_string(jobs) + " --out " + out.string() +
                               " > /dev/null 2>&1";
      if (std::system(full.c_str()) != 0) {
        detail = "command failed: " + cmd;
        return false;
      }
      const auto body = slurp(out);
      fs::remove(out);
      if (body.empty()) {
        detail = "empty output: " + cmd;
        return false;
      }
      if (jobs == 1) reference = body;
      else if (body != reference) {
        detail = "output differs at --jobs " + std::to_string(jobs) + ": " + cmd;
        return false;
      }
    }
  }
  detail = "byte-identical output at --jobs 1/3/8 for all " +
           std::to_string(commands.size()) + " experiments";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-torlab-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];

  run_criterion("shell_count_oracle", shell_count_oracle);
  run_criterion("jarnik_floor", jarnik_floor);
  run_criterion("sigma_hat_oracle", sigma_hat_oracle);
  run_criterion("decay_profile", decay_profile_bound);
  run_criterion("restriction_identity", restriction_identity);
  run_criterion("spectrum_sweep", spectrum_positivity);
  run_criterion("certificate_soundness", certificate_soundness);
  run_criterion("coplanar_caps", coplanar_caps);
  run_criterion("mean_square", mean_square);
  run_criterion("bilinear_bound", bilinear_bound);
  run_criterion("cap_pair_exponent", cap_pair_exponent);
  run_criterion("cli_determinism",
                [&](std::string& d) { return cli_determinism(cli, d); });

  std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "OK" : "FAILURES",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
