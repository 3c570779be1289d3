#include "lrp/cli/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "lrp/errors.hpp"
#include "lrp/random.hpp"

namespace lrp::cli {
namespace {

using nlohmann::json;

template <class T>
void read(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

template <class T>
void read(const json& j, const char* key, std::optional<T>& field) {
  if (j.contains(key) && !j.at(key).is_null()) field = j.at(key).get<T>();
}

template <class T>
void write(json& j, const char* key, const std::optional<T>& field) {
  j[key] = field ? json(*field) : json(nullptr);
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  static const std::set<std::string> known = {
      "command", "experiment_id", "seed", "threads", "out", "d", "n", "n_grid", "beta", "exponent", "trials",
      "mode", "generator", "start", "start_radius", "max_steps", "stop_alpha", "diameter_sources",
      "bfs_source_budget", "naive_pair_budget", "eps", "radius", "x", "y", "alpha", "delta_grid",
      "chernoff_trials", "calibration_n", "weight_sites", "calibration_trials", "weight_c", "weight_upper",
      "growth_c2"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw std::invalid_argument("unknown config key '" + key + "'");
  }
  ExperimentConfig c;
  try {
    read(j, "command", c.command);
    read(j, "experiment_id", c.experiment_id);
    read(j, "seed", c.seed);
    read(j, "threads", c.threads);
    read(j, "out", c.out);
    read(j, "d", c.d);
    read(j, "n", c.n);
    read(j, "n_grid", c.n_grid);
    read(j, "beta", c.beta);
    read(j, "exponent", c.exponent);
    read(j, "trials", c.trials);
    read(j, "mode", c.mode);
    read(j, "generator", c.generator);
    read(j, "start", c.start);
    read(j, "start_radius", c.start_radius);
    read(j, "max_steps", c.max_steps);
    read(j, "stop_alpha", c.stop_alpha);
    read(j, "diameter_sources", c.diameter_sources);
    read(j, "bfs_source_budget", c.bfs_source_budget);
    read(j, "naive_pair_budget", c.naive_pair_budget);
    read(j, "eps", c.eps);
    read(j, "radius", c.radius);
    read(j, "x", c.x);
    read(j, "y", c.y);
    read(j, "alpha", c.alpha);
    read(j, "delta_grid", c.delta_grid);
    read(j, "chernoff_trials", c.chernoff_trials);
    read(j, "calibration_n", c.calibration_n);
    read(j, "weight_sites", c.weight_sites);
    read(j, "calibration_trials", c.calibration_trials);
    read(j, "weight_c", c.weight_c);
    read(j, "weight_upper", c.weight_upper);
    read(j, "growth_c2", c.growth_c2);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad config value: ") + e.what());
  }
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["command"] = c.command;
  j["experiment_id"] = c.experiment_id;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["out"] = c.out;
  j["d"] = c.d;
  j["n"] = c.n;
  j["n_grid"] = c.n_grid;
  j["beta"] = c.beta;
  write(j, "exponent", c.exponent);
  j["trials"] = c.trials;
  j["mode"] = c.mode;
  j["generator"] = c.generator;
  j["start"] = c.start;
  j["start_radius"] = c.start_radius;
  j["max_steps"] = c.max_steps;
  write(j, "stop_alpha", c.stop_alpha);
  j["diameter_sources"] = c.diameter_sources;
  j["bfs_source_budget"] = c.bfs_source_budget;
  j["naive_pair_budget"] = c.naive_pair_budget;
  j["eps"] = c.eps;
  j["radius"] = c.radius;
  j["x"] = c.x;
  j["y"] = c.y;
  j["alpha"] = c.alpha;
  j["delta_grid"] = c.delta_grid;
  j["chernoff_trials"] = c.chernoff_trials;
  j["calibration_n"] = c.calibration_n;
  j["weight_sites"] = c.weight_sites;
  j["calibration_trials"] = c.calibration_trials;
  write(j, "weight_c", c.weight_c);
  write(j, "weight_upper", c.weight_upper);
  write(j, "growth_c2", c.growth_c2);
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void validate(const ExperimentConfig& c) {
  if (c.d < 1) throw DomainError("--d must be >= 1");
  if (c.n < 1) throw DomainError("--n must be >= 1");
  for (auto n : c.n_grid) {
    if (n < 1) throw DomainError("every entry of n_grid must be >= 1");
  }
  if (!(c.beta > 0.0)) throw DomainError("--beta must be > 0");
  if (c.exponent && !(*c.exponent > 0.0)) throw DomainError("exponent must be > 0");
  if (c.mode != "annealed" && c.mode != "quenched") throw DomainError("--mode must be 'annealed' or 'quenched'");
  if (c.generator != "eager" && c.generator != "naive") throw DomainError("generator must be 'eager' or 'naive'");
  if (c.trials < 1) throw DomainError("--trials must be >= 1");
  if (c.start_radius < 0) throw DomainError("start_radius must be >= 0");
  if (c.stop_alpha && !(*c.stop_alpha > 0.0)) throw DomainError("stop_alpha must be > 0");
  if (!(c.eps > 0.0 && c.eps < 0.5)) throw DomainError("eps must lie in (0, 1/2)");
  if (c.radius < 0) throw DomainError("radius must be >= 0 (0 selects the calibrated default)");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  for (double delta : c.delta_grid) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("every delta must lie in (0, 1)");
  }
  if (c.chernoff_trials < 1000) throw DomainError("chernoff_trials must be >= 1000");
  if (c.calibration_n < 2) throw DomainError("calibration_n must be >= 2");
  const auto check_point = [&](const std::vector<std::int64_t>& p, const char* name) {
    if (p.empty()) return;
    if (p.size() != static_cast<std::size_t>(c.d)) {
      throw DomainError(std::string(name) + " has " + std::to_string(p.size()) + " coordinates, expected d");
    }
    for (auto v : p) {
      if (v < 0 || v > c.n) throw DomainError(std::string(name) + " lies outside the box");
    }
  };
  check_point(c.start, "start");
  check_point(c.x, "x");
  check_point(c.y, "y");
}

std::string config_hash(const ExperimentConfig& config) {
  json j = config_to_json(config);
  j.erase("threads");
  j.erase("out");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(j.dump())));
  return buf;
}

}  // namespace lrp::cli
