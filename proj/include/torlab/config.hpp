#pragma once

// Experiment configuration: a flat key=value file with one [section] per
// experiment (top-level keys apply to every experiment), mirrored by CLI
// flags of the same names.  Unknown keys are rejected, not ignored.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "torlab/surface.hpp"

namespace torlab {

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "shells", "caps", "jarnik", "meansquare", "sigma",
      "restrict", "certify", "bilinear", "cappair"};
  return names;
}

struct ExperimentConfig {
  std::string experiment;
  int d = 2;
  std::int64_t m_min = 0;
  std::int64_t m_max = 0;
  std::vector<std::int64_t> m_list;
  std::vector<double> beta_list;
  std::string surface_spec;  // e.g. circle:rho=0.25,cx=0.5,cy=0.5
  double threshold = 0;      // 0 = default 2*lambda^{1/3}
  double tol = 1e-8;
  std::uint64_t seed = 1;
  std::string out;           // empty = stdout
  std::string format = "csv";
  int jobs = 1;
  double cap_r = 0;          // 0 = default per experiment
  double r_min = 16;
  double r_max = 1024;
  int samples = 4;
  std::string pattern = "all";
  int trials = 5;
  double cell_side = 0;      // 0 = m^{1/4}
};

namespace detail {

inline const std::map<std::string, std::set<std::string>>& experiment_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"shells", {"d", "m-min", "m-max", "m-list"}},
      {"caps", {"d", "m-min", "m-max", "m-list", "r"}},
      {"jarnik", {"m-min", "m-max", "m-list"}},
      {"meansquare", {"m-min", "m-max", "m-list", "cell-side"}},
      {"sigma", {"surface", "r-min", "r-max", "samples", "tol"}},
      {"restrict", {"surface", "m-min", "m-max", "m-list", "tol", "threshold"}},
      {"certify", {"surface", "m-min", "m-max", "m-list", "tol", "threshold"}},
      {"bilinear", {"beta-list", "pattern", "trials"}},
      {"cappair", {"surface", "m-min", "m-max", "m-list", "r", "trials"}},
  };
  return keys;
}

inline const std::set<std::string>& common_keys() {
  static const std::set<std::string> keys = {"seed", "out", "format", "jobs"};
  return keys;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// "circle:rho=0.25,cx=0.5,cy=0.5" | "ellipse:a=0.3,b=0.2[,cx=,cy=]" |
// "sphere:rho=0.25[,cx=,cy=,cz=]" | "ellipsoid:a=,b=,c=[,cx=,cy=,cz=]"
inline Hypersurface parse_surface(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    for (const auto& part : detail::split(spec.substr(colon + 1), ',')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("surface spec: expected key=value, got '" + part + "'");
      kv[detail::trim(part.substr(0, eq))] = std::stod(part.substr(eq + 1));
    }
  }
  auto get = [&](const std::string& key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };
  auto require = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::invalid_argument("surface spec: missing required key '" + key + "'");
    return it->second;
  };
  if (kind == "circle")
    return Hypersurface::circle(require("rho"), {get("cx", 0.5), get("cy", 0.5)});
  if (kind == "ellipse")
    return Hypersurface::ellipse(require("a"), require("b"), {get("cx", 0.5), get("cy", 0.5)});
  if (kind == "sphere")
    return Hypersurface::sphere(require("rho"), {get("cx", 0.5), get("cy", 0.5), get("cz", 0.5)});
  if (kind == "ellipsoid")
    return Hypersurface::ellipsoid(require("a"), require("b"), require("c"),
                                   {get("cx", 0.5), get("cy", 0.5), get("cz", 0.5)});
  throw std::invalid_argument("surface spec: unknown kind '" + kind + "'");
}

// Raw parse: section -> (key -> value).  Top-level keys go to section "".
inline std::map<std::string, std::map<std::string, std::string>> parse_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::map<std::string, std::map<std::string, std::string>> sections;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = detail::trim(line.substr(1, line.size() - 2));
      sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    sections[section][detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
  }
  return sections;
}

inline void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "d") cfg.d = std::stoi(value);
  else if (key == "m-min") cfg.m_min = std::stoll(value);
  else if (key == "m-max") cfg.m_max = std::stoll(value);
  else if (key == "m-list") {
    cfg.m_list.clear();
    for (const auto& p : detail::split(value, ',')) cfg.m_list.push_back(std::stoll(p));
  } else if (key == "beta-list") {
    cfg.beta_list.clear();
    for (const auto& p : detail::split(value, ',')) cfg.beta_list.push_back(std::stod(p));
  } else if (key == "surface") cfg.surface_spec = value;
  else if (key == "threshold") cfg.threshold = std::stod(value);
  else if (key == "tol") cfg.tol = std::stod(value);
  else if (key == "seed") cfg.seed = std::stoull(value);
  else if (key == "out") cfg.out = value;
  else if (key == "format") cfg.format = value;
  else if (key == "jobs") cfg.jobs = std::stoi(value);
  else if (key == "r") cfg.cap_r = std::stod(value);
  else if (key == "r-min") cfg.r_min = std::stod(value);
  else if (key == "r-max") cfg.r_max = std::stod(value);
  else if (key == "samples") cfg.samples = std::stoi(value);
  else if (key == "pattern") cfg.pattern = value;
  else if (key == "trials") cfg.trials = std::stoi(value);
  else if (key == "cell-side") cfg.cell_side = std::stod(value);
  else throw std::invalid_argument("unknown config key: " + key);
}

// Load the common section and the experiment's own section onto cfg.
inline void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  const auto sections = parse_config_file(path);
  for (const auto& section : {std::string(""), cfg.experiment}) {
    auto it = sections.find(section);
    if (it == sections.end()) continue;
    for (const auto& [k, v] : it->second) apply_key(cfg, k, v);
  }
}

// Semantic checks shared by run and validate.  Returns human-readable
// violations; empty means valid.
inline std::vector<std::string> check_config(const ExperimentConfig& cfg) {
  std::vector<std::string> diags;
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), cfg.experiment) == names.end()) {
    std::string allowed;
    for (const auto& n : names) allowed += (allowed.empty() ? "" : ", ") + n;
    diags.push_back("unknown experiment '" + cfg.experiment + "' (allowed: " + allowed + ")");
    return diags;
  }
  if (cfg.d < 2 || cfg.d > 5) diags.push_back("d: must be in 2..5");
  if (!(cfg.tol > 0)) diags.push_back("tol: must be positive");
  if (cfg.threshold < 0) diags.push_back("threshold: must be non-negative");
  if (cfg.format != "csv" && cfg.format != "json")
    diags.push_back("format: must be csv or json");
  if (cfg.samples < 1) diags.push_back("samples: must be positive");
  if (cfg.trials < 1) diags.push_back("trials: must be positive");
  if (cfg.cap_r < 0) diags.push_back("r: must be non-negative");
  if (cfg.cell_side < 0) diags.push_back("cell-side: must be non-negative");

  const bool wants_m = cfg.experiment == "shells" || cfg.experiment == "caps" ||
                       cfg.experiment == "jarnik" || cfg.experiment == "meansquare" ||
                       cfg.experiment == "restrict" || cfg.experiment == "certify" ||
                       cfg.experiment == "cappair";
  if (wants_m && cfg.m_list.empty() && !(cfg.m_min >= 0 && cfg.m_max >= cfg.m_min &&
                                         cfg.m_max > 0))
    diags.push_back("m range: need a non-empty --m-list or --m-min/--m-max");
  if (cfg.experiment == "bilinear" && cfg.beta_list.empty())
    diags.push_back("beta-list: must be non-empty");
  if (cfg.experiment == "bilinear") {
    for (const double b : cfg.beta_list)
      if (!(b >= 1)) diags.push_back("beta-list: every beta must be >= 1");
    if (cfg.pattern != "all" && cfg.pattern != "maximal_grid" &&
        cfg.pattern != "random_greedy" && cfg.pattern != "perturbed_grid")
      diags.push_back("pattern: must be all|maximal_grid|random_greedy|perturbed_grid");
  }
  if (cfg.experiment == "sigma" && !(cfg.r_min >= 1 && cfg.r_min < cfg.r_max))
    diags.push_back("r range: need 1 <= r-min < r-max");
  if (!cfg.surface_spec.empty()) {
    try {
      parse_surface(cfg.surface_spec);
    } catch (const std::exception& e) {
      diags.push_back(std::string("surface: ") + e.what());
    }
  }
  return diags;
}

// Full schema check of a config file without executing anything.
inline std::vector<std::string> validate_config_file(const std::string& path) {
  std::vector<std::string> diags;
  std::map<std::string, std::map<std::string, std::string>> sections;
  try {
    sections = parse_config_file(path);
  } catch (const std::exception& e) {
    diags.push_back(e.what());
    return diags;
  }
  const auto& schema = detail::experiment_keys();
  for (const auto& [section, kv] : sections) {
    if (!section.empty() && !schema.count(section)) {
      diags.push_back("unknown experiment section [" + section + "]");
      continue;
    }
    for (const auto& [key, value] : kv) {
      const bool common = detail::common_keys().count(key) > 0;
      const bool scoped = !section.empty() && schema.at(section).count(key) > 0;
      if (!common && !scoped) {
        diags.push_back((section.empty() ? "top level" : "[" + section + "]") +
                        ": unknown or misplaced key '" + key + "'");
        continue;
      }
      ExperimentConfig probe;
      probe.experiment = section.empty() ? "shells" : section;
      try {
        apply_key(probe, key, value);
      } catch (const std::exception& e) {
        diags.push_back("key '" + key + "': " + e.what());
        continue;
      }
    }
    // semantic pass per experiment section
    if (!section.empty()) {
      ExperimentConfig cfg;
      cfg.experiment = section;
      if (section == "cappair") cfg.d = 3;
      try {
        auto common_it = sections.find("");
        if (common_it != sections.end())
          for (const auto& [k, v] : common_it->second) apply_key(cfg, k, v);
        for (const auto& [k, v] : kv) apply_key(cfg, k, v);
        for (auto& d : check_config(cfg)) diags.push_back("[" + section + "] " + d);
      } catch (const std::exception&) {
        // parse errors already reported above
      }
    }
  }
  return diags;
}

}  // namespace torlab
