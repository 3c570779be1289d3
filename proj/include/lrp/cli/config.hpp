#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace lrp::cli {

/// Every knob of every subcommand. A run is determined by this record, the
/// master seed inside it and the code version; `threads` and `out` do not
/// influence results and are left out of the config hash.
struct ExperimentConfig {
  std::string command;
  std::string experiment_id = "lrp";
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;

  int d = 1;
  std::int64_t n = 256;
  std::vector<std::int64_t> n_grid;
  double beta = 1.0;
  std::optional<double> exponent;  // defaults to d

  std::uint64_t trials = 100;
  std::string mode = "annealed";
  std::string generator = "eager";

  // ball-growth
  std::vector<std::int64_t> start;  // empty: box centre
  std::int64_t start_radius = 0;
  std::uint64_t max_steps = 0;       // 0: no step cap
  std::optional<double> stop_alpha;  // stop once |B_m| > N^{alpha d}

  // diameter / scaling
  std::uint64_t diameter_sources = 0;  // 0: exact
  std::uint64_t bfs_source_budget = 1'000'000;
  std::uint64_t naive_pair_budget = 50'000'000;

  // two-ball
  double eps = 0.4;
  std::int64_t radius = 0;  // 0: derived from the calibrated c2
  std::vector<std::int64_t> x;
  std::vector<std::int64_t> y;

  // verify-lemmas
  double alpha = 0.6;
  std::vector<double> delta_grid{0.1, 0.3, 0.5};
  std::uint64_t chernoff_trials = 10'000;
  std::int64_t calibration_n = 64;
  std::uint64_t weight_sites = 20;
  std::uint64_t calibration_trials = 200;

  // calibrated constants; absent values are fitted at run time
  std::optional<double> weight_c;
  std::optional<double> weight_upper;
  std::optional<double> growth_c2;
};

/// Rejects unknown keys and ill-typed values with std::invalid_argument.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

/// Checks ranges; throws lrp::DomainError with an actionable message.
void validate(const ExperimentConfig& config);

/// 16 hex digits of FNV-1a over the canonical JSON of the result-relevant fields.
std::string config_hash(const ExperimentConfig& config);

}  // namespace lrp::cli
