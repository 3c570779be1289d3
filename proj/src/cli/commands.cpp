#include "lrp/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "lrp/ballgrowth.hpp"
#include "lrp/cli/records.hpp"
#include "lrp/errors.hpp"
#include "lrp/estimators.hpp"
#include "lrp/graph.hpp"
#include "lrp/graph_io.hpp"
#include "lrp/parallel.hpp"
#include "lrp/stats.hpp"
#include "lrp/weights.hpp"

namespace lrp::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

BoxSpec box_for(const ExperimentConfig& c, std::int64_t n) { return BoxSpec(c.d, n); }

ModelParams params_for(const ExperimentConfig& c) {
  return c.exponent ? ModelParams(c.beta, *c.exponent, c.d) : ModelParams(c.beta, c.d);
}

fs::path output_path(const ExperimentConfig& c, const char* fallback) {
  return c.out.empty() ? fs::path(fallback) : fs::path(c.out);
}

fs::path summary_path(const fs::path& out) {
  fs::path p = out;
  return p.replace_extension(".summary.json");
}

void write_json(const fs::path& path, const json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

std::vector<std::string> provenance(const ExperimentConfig& c, std::uint64_t trial, std::uint64_t seed,
                                    std::int64_t n, const std::string& hash) {
  const ModelParams params = params_for(c);
  return {c.experiment_id,   std::to_string(trial), std::to_string(seed),       code_version(), hash,
          std::to_string(c.d), std::to_string(n),   format_double(params.beta()), format_double(params.exponent())};
}

std::vector<std::string> with_columns(std::vector<std::string> base, std::initializer_list<std::string> extra) {
  base.insert(base.end(), extra.begin(), extra.end());
  return base;
}

std::string join(const std::vector<std::uint64_t>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ";" : "") + std::to_string(values[i]);
  return s;
}

std::string join(const Coords& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ";" : "") + std::to_string(values[i]);
  return s;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

Site centre(const BoxSpec& box) {
  Coords c(static_cast<std::size_t>(box.dim()), box.side() / 2);
  return make_site(box, c);
}

Site site_or_centre(const BoxSpec& box, const std::vector<std::int64_t>& coords) {
  return coords.empty() ? centre(box) : make_site(box, coords);
}

Graph sample(const ExperimentConfig& c, const BoxSpec& box, std::uint64_t seed) {
  return c.generator == "naive" ? sample_graph_naive(box, params_for(c), seed, c.naive_pair_budget)
                                : sample_graph_eager(box, params_for(c), seed);
}

json finish(const json& summary, const fs::path& out) {
  write_json(summary_path(out), summary);
  return summary;
}

}  // namespace

CommandOutcome cmd_generate(const ExperimentConfig& c) {
  const BoxSpec box = box_for(c, c.n);
  const fs::path out = output_path(c, "graph.lrpg");
  const Graph graph = sample(c, box, c.seed);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  save_graph(graph, out);
  const auto moments = edge_count_moments(box, params_for(c));
  const double sd = std::sqrt(moments.variance);
  json summary = {{"command", "generate"},
                  {"out", out.string()},
                  {"generator_id", graph.generator_id()},
                  {"seed", c.seed},
                  {"d", c.d},
                  {"n", c.n},
                  {"edge_count", graph.edge_count()},
                  {"mean_degree", mean_degree(graph)},
                  {"expected_edge_count", moments.mean},
                  {"edge_count_sd", sd},
                  {"z_score", sd > 0 ? (static_cast<double>(graph.edge_count()) - moments.mean) / sd : 0.0},
                  {"digest", graph_digest(graph)}};
  return {kExitOk, finish(summary, out)};
}

CommandOutcome cmd_ball_growth(const ExperimentConfig& c) {
  const BoxSpec box = box_for(c, c.n);
  const ConnectionKernel kernel(box, params_for(c));
  const Site start = site_or_centre(box, c.start);
  const SiteSet u = l1_ball(box, start, c.start_radius);
  StopRule stop;
  if (c.max_steps > 0) stop.max_steps = c.max_steps;
  if (c.stop_alpha) stop.size_threshold = size_threshold(box, *c.stop_alpha);
  const GrowthMode mode = c.mode == "quenched" ? GrowthMode::Quenched : GrowthMode::Annealed;
  const std::string hash = config_hash(c);

  struct Row {
    std::uint64_t seed = 0;
    GrowthTrajectory traj;
    double ms = 0.0;
  };
  std::vector<Row> rows(c.trials);
  parallel_for(c.trials, resolve_threads(c.threads), [&](std::uint64_t t) {
    const auto t0 = std::chrono::steady_clock::now();
    Row& row = rows[t];
    row.seed = derive_seed(c.seed, c.experiment_id, t, "ball-growth");
    if (mode == GrowthMode::Quenched) {
      const Graph graph = sample_graph_eager(box, kernel.params(), row.seed);
      row.traj = run_chain_quenched(graph, BallState::init(box, u), stop);
    } else {
      Rng rng(row.seed);
      row.traj = run_chain_annealed(kernel, BallState::init(box, u), stop, rng);
    }
    row.ms = elapsed_ms(t0);
  });

  CsvTable table(with_columns(provenance_columns(), {"mode", "stop_reason", "steps", "covered_step",
                                                     "boundary_sizes", "wall_ms"}));
  std::vector<double> first;
  for (std::uint64_t t = 0; t < c.trials; ++t) {
    const auto& r = rows[t];
    table.add_row(with_columns(
        provenance(c, t, r.seed, c.n, hash),
        {std::string(to_string(r.traj.mode)), std::string(to_string(r.traj.stop_reason)),
         std::to_string(r.traj.boundary_sizes.size() - 1),
         r.traj.covered_step ? std::to_string(*r.traj.covered_step) : "", join(r.traj.boundary_sizes),
         format_double(r.ms)}));
    if (r.traj.boundary_sizes.size() > 1) first.push_back(static_cast<double>(r.traj.boundary_sizes[1]));
  }
  const fs::path out = output_path(c, "ball_growth.csv");
  table.write(out);

  json summary = {{"command", "ball-growth"},
                  {"mode", to_string(mode)},
                  {"trials", c.trials},
                  {"start_size", u.size()},
                  {"expected_boundary_1", expected_boundary_growth(kernel, BallState::init(box, u))}};
  if (!first.empty()) summary["mean_boundary_1"] = stats::mean(first);
  if (first.size() > 1) summary["mean_boundary_1_se"] = stats::standard_error(first);
  return {kExitOk, finish(summary, out)};
}

CommandOutcome cmd_diameter(const ExperimentConfig& c) {
  const BoxSpec box = box_for(c, c.n);
  const std::string hash = config_hash(c);
  struct Row {
    std::uint64_t seed = 0;
    std::uint64_t edges = 0;
    double mean_degree = 0.0;
    std::uint32_t diameter = 0;
    double ms = 0.0;
  };
  if (c.diameter_sources == 0 && box.site_count() > c.bfs_source_budget) {
    throw BudgetExceeded("exact diameter needs " + std::to_string(box.site_count()) +
                         " BFS sources (budget " + std::to_string(c.bfs_source_budget) +
                         "); set diameter_sources for a sampled lower bound");
  }
  std::vector<Row> rows(c.trials);
  parallel_for(c.trials, resolve_threads(c.threads), [&](std::uint64_t t) {
    const auto t0 = std::chrono::steady_clock::now();
    Row& row = rows[t];
    row.seed = derive_seed(c.seed, c.experiment_id, t, "graph");
    const Graph graph = sample(c, box, row.seed);
    row.edges = graph.edge_count();
    row.mean_degree = mean_degree(graph);
    row.diameter = c.diameter_sources == 0
                       ? diameter_exact(graph, 1, c.bfs_source_budget)
                       : diameter_sampled(graph, c.diameter_sources,
                                          derive_seed(c.seed, c.experiment_id, t, "sources"));
    row.ms = elapsed_ms(t0);
  });

  CsvTable table(with_columns(provenance_columns(),
                              {"edges", "mean_degree", "diameter", "diameter_kind", "statistic", "wall_ms"}));
  std::vector<double> diam;
  std::vector<double> stat;
  for (std::uint64_t t = 0; t < c.trials; ++t) {
    const auto& r = rows[t];
    std::string s;
    if (c.n >= 16) {
      stat.push_back(scaling_statistic(r.diameter, c.n));
      s = format_double(stat.back());
    }
    diam.push_back(r.diameter);
    table.add_row(with_columns(provenance(c, t, r.seed, c.n, hash),
                               {std::to_string(r.edges), format_double(r.mean_degree), std::to_string(r.diameter),
                                c.diameter_sources == 0 ? "exact" : "lower_bound", s, format_double(r.ms)}));
  }
  const fs::path out = output_path(c, "diameter.csv");
  table.write(out);
  json summary = {{"command", "diameter"},
                  {"trials", c.trials},
                  {"diameter_kind", c.diameter_sources == 0 ? "exact" : "lower_bound"},
                  {"median_diameter", stats::median(diam)},
                  {"max_diameter", *std::max_element(diam.begin(), diam.end())}};
  if (!stat.empty()) summary["median_statistic"] = stats::median(stat);
  return {kExitOk, finish(summary, out)};
}

CommandOutcome cmd_two_ball(const ExperimentConfig& c) {
  const BoxSpec box = box_for(c, c.n);
  const ConnectionKernel kernel(box, params_for(c));
  const std::string hash = config_hash(c);
  const GrowthMode mode = c.mode == "quenched" ? GrowthMode::Quenched : GrowthMode::Annealed;

  std::optional<double> c2 = c.growth_c2;
  std::int64_t radius = c.radius;
  if (radius == 0) {
    if (!c2) {
      c2 = calibrate_growth_constants(kernel, SiteSet{centre(box).index}, 0.5 + c.eps / 2.0, c.calibration_trials,
                                      derive_seed(c.seed, c.experiment_id, 0, "calibration"))
               .c2;
    }
    radius = default_radius(*c2, box);
  }

  struct Row {
    std::uint64_t seed = 0;
    TwoBallOutcome outcome;
    std::optional<std::uint32_t> graph_distance;
    double ms = 0.0;
  };
  std::vector<Row> rows(c.trials);
  parallel_for(c.trials, resolve_threads(c.threads), [&](std::uint64_t t) {
    const auto t0 = std::chrono::steady_clock::now();
    Row& row = rows[t];
    row.seed = derive_seed(c.seed, c.experiment_id, t, "two-ball");
    Rng pick(derive_seed(c.seed, c.experiment_id, t, "pair"));
    const Site x = c.x.empty() ? site_from_index(box, pick.below(box.site_count())) : make_site(box, c.x);
    const Site y = c.y.empty() ? site_from_index(box, pick.below(box.site_count())) : make_site(box, c.y);
    if (mode == GrowthMode::Quenched) {
      const Graph graph = sample_graph_eager(box, kernel.params(), row.seed);
      row.outcome = two_ball_tau_quenched(graph, x, y, radius, c.eps);
      row.graph_distance = bfs_distances(graph, x).dist[y.index];
    } else {
      Rng rng(row.seed);
      row.outcome = two_ball_tau_annealed(kernel, x, y, radius, c.eps, rng);
    }
    row.ms = elapsed_ms(t0);
  });

  CsvTable table(with_columns(provenance_columns(),
                              {"mode", "x", "y", "R", "tau", "distance_bound", "m_star", "boundary_x_m_star",
                               "boundary_y_m_star", "event_x", "event_y", "timed_out", "graph_distance",
                               "bound_holds", "wall_ms"}));
  std::uint64_t within = 0;
  std::uint64_t both_events = 0;
  std::uint64_t violations = 0;
  for (std::uint64_t t = 0; t < c.trials; ++t) {
    const auto& r = rows[t];
    const auto& o = r.outcome;
    std::string holds;
    if (r.graph_distance) {
      const bool ok = *r.graph_distance <= o.distance_bound;
      violations += ok ? 0 : 1;
      holds = ok ? "1" : "0";
    }
    within += (!o.timed_out && o.tau <= 2 * o.m_star + 1) ? 1 : 0;
    both_events += (o.event_x && o.event_y) ? 1 : 0;
    table.add_row(with_columns(
        provenance(c, t, r.seed, c.n, hash),
        {std::string(to_string(o.mode)), join(o.x.coords), join(o.y.coords), std::to_string(o.radius),
         std::to_string(o.tau), std::to_string(o.distance_bound), std::to_string(o.m_star),
         std::to_string(o.boundary_x_at_m_star), std::to_string(o.boundary_y_at_m_star), o.event_x ? "1" : "0",
         o.event_y ? "1" : "0", o.timed_out ? "1" : "0",
         r.graph_distance ? std::to_string(*r.graph_distance) : "", holds, format_double(r.ms)}));
  }
  const fs::path out = output_path(c, "two_ball.csv");
  table.write(out);
  const double trials = static_cast<double>(c.trials);
  json summary = {{"command", "two-ball"},
                  {"mode", to_string(mode)},
                  {"trials", c.trials},
                  {"radius", radius},
                  {"m_star", two_ball_m_star(box, c.eps)},
                  {"fraction_tau_within_2m_plus_1", static_cast<double>(within) / trials},
                  {"fraction_both_events", static_cast<double>(both_events) / trials},
                  {"distance_bound_violations", violations}};
  if (c2) summary["growth_c2"] = *c2;
  return {violations == 0 ? kExitOk : kExitCheckFailed, finish(summary, out)};
}

CommandOutcome cmd_scaling(const ExperimentConfig& c) {
  const std::vector<std::int64_t> grid = c.n_grid.empty() ? std::vector<std::int64_t>{128, 256, 512, 1024} : c.n_grid;
  for (auto n : grid) {
    if (n < 16) throw DomainError("scaling needs every N >= 16");
    if (static_cast<std::uint64_t>(std::pow(n + 1.0, c.d)) > c.bfs_source_budget) {
      throw BudgetExceeded("exact diameter at N = " + std::to_string(n) + " exceeds the BFS source budget");
    }
  }
  const std::string hash = config_hash(c);
  const std::uint64_t total = grid.size() * c.trials;
  struct Row {
    std::uint64_t seed = 0;
    std::uint32_t diameter = 0;
    double ms = 0.0;
  };
  std::vector<Row> rows(total);
  parallel_for(total, resolve_threads(c.threads), [&](std::uint64_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::int64_t n = grid[i / c.trials];
    const std::uint64_t t = i % c.trials;
    Row& row = rows[i];
    row.seed = derive_seed(c.seed, c.experiment_id + "/N=" + std::to_string(n), t, "graph");
    const Graph graph = sample(c, box_for(c, n), row.seed);
    row.diameter = diameter_exact(graph, 1, c.bfs_source_budget);
    row.ms = elapsed_ms(t0);
  });

  CsvTable table(with_columns(provenance_columns(), {"diameter", "statistic", "bound_3", "wall_ms"}));
  CsvTable per_n({"n", "trials", "median_statistic", "q10_statistic", "q90_statistic", "median_diameter",
                  "fraction_within_bound_3"});
  std::vector<double> medians;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const std::int64_t n = grid[g];
    const double log_n = std::log(static_cast<double>(n));
    const double bound3 = 3.0 * log_n / std::log(log_n);
    std::vector<double> stat;
    std::vector<double> diam;
    std::uint64_t within = 0;
    for (std::uint64_t t = 0; t < c.trials; ++t) {
      const Row& r = rows[g * c.trials + t];
      stat.push_back(scaling_statistic(r.diameter, n));
      diam.push_back(r.diameter);
      within += r.diameter <= bound3 ? 1 : 0;
      table.add_row(with_columns(provenance(c, t, r.seed, n, hash),
                                 {std::to_string(r.diameter), format_double(stat.back()), format_double(bound3),
                                  format_double(r.ms)}));
    }
    medians.push_back(stats::median(stat));
    per_n.add_row({std::to_string(n), std::to_string(c.trials), format_double(medians.back()),
                   format_double(stats::quantile(stat, 0.1)), format_double(stats::quantile(stat, 0.9)),
                   format_double(stats::median(diam)),
                   format_double(static_cast<double>(within) / static_cast<double>(c.trials))});
  }
  const fs::path out = output_path(c, "scaling.csv");
  table.write(out);
  fs::path per_n_path = out;
  per_n_path.replace_extension();
  per_n_path += "_summary.csv";
  per_n.write(per_n_path);

  std::size_t decreasing = 0;
  for (std::size_t i = 1; i < medians.size(); ++i) decreasing += medians[i] < medians[i - 1] ? 1 : 0;
  const std::size_t steps = medians.empty() ? 0 : medians.size() - 1;
  json summary = {{"command", "scaling"},
                  {"n_grid", grid},
                  {"trials", c.trials},
                  {"median_statistic", medians},
                  {"decreasing_steps", decreasing},
                  {"steps", steps},
                  {"trend_toward_d", steps > 0 && decreasing + 1 >= steps},
                  {"limit", c.d},
                  {"per_n_table", per_n_path.string()}};
  return {kExitOk, finish(summary, out)};
}

CommandOutcome cmd_verify_lemmas(const ExperimentConfig& c) {
  const unsigned threads = resolve_threads(c.threads);
  const ModelParams params = params_for(c);
  bool ok = true;
  json report = {{"command", "verify-lemmas"}, {"code_version", code_version()}, {"config_hash", config_hash(c)}};

  // 1 - e^{-rho} bracketed by rho(1 - rho) and rho on a log grid.
  {
    json witnesses = json::array();
    const int points = 1000;
    for (int i = 0; i < points; ++i) {
      const double r = std::pow(10.0, -8.0 + 10.0 * i / (points - 1));
      const auto b = elementary_bounds(r);
      const double v = -std::expm1(-r);
      if (!(b.lower <= v && v <= b.upper)) witnesses.push_back({{"rho", r}, {"value", v}});
    }
    report["elementary_bounds"] = {{"points", points}, {"passed", witnesses.empty()}, {"witnesses", witnesses}};
    ok = ok && witnesses.empty();
  }

  // Weight estimate via the extremal oracle.
  {
    const BoxSpec cal_box(c.d, c.calibration_n);
    const ConnectionKernel cal_kernel(cal_box, params);
    WeightConstants constants;
    if (c.weight_c && c.weight_upper) {
      constants = {*c.weight_c, *c.weight_upper};
    } else {
      std::vector<SiteIndex> all(cal_box.site_count());
      for (SiteIndex i = 0; i < all.size(); ++i) all[i] = i;
      constants = calibrate_weight_constants(cal_kernel, all);
    }
    const std::vector<std::int64_t> grid = c.n_grid.empty() ? std::vector<std::int64_t>{128, 256} : c.n_grid;
    json per_n = json::array();
    for (std::int64_t n : grid) {
      const BoxSpec box(c.d, n);
      const ConnectionKernel kernel(box, params);
      Rng rng(derive_seed(c.seed, c.experiment_id, static_cast<std::uint64_t>(n), "weight-sites"));
      std::vector<SiteIndex> sites;
      for (std::uint64_t i = 0; i < c.weight_sites; ++i) sites.push_back(rng.below(box.site_count()));
      const auto check = weight_bound_check(kernel, sites, constants);
      json witnesses = json::array();
      for (std::size_t i = 0; i < std::min<std::size_t>(check.violations.size(), 20); ++i) {
        const auto& v = check.violations[i];
        witnesses.push_back({{"site", site_coords(box, v.site)},
                             {"k", v.k},
                             {"side", v.lower_side ? "lower" : "upper"},
                             {"rho", v.rho},
                             {"bound", v.bound}});
      }
      per_n.push_back({{"n", n},
                       {"checks", check.checks},
                       {"violations", check.violations.size()},
                       {"passed", check.passed()},
                       {"witnesses", witnesses}});
      ok = ok && check.passed();
    }
    report["weight_estimate"] = {{"calibration_n", c.calibration_n},
                                 {"c", constants.lower},
                                 {"C", constants.upper},
                                 {"per_n", per_n}};
  }

  const BoxSpec box = box_for(c, c.n);
  const ConnectionKernel kernel(box, params);
  const SiteSet start{centre(box).index};

  // One-step sandwich and pigeonhole count on every visited chain state.
  {
    struct ChainResult {
      std::uint64_t states = 0;
      json witnesses = json::array();
    };
    std::vector<ChainResult> results(c.trials);
    const StopRule stop{std::nullopt, size_threshold(box, c.alpha)};
    parallel_for(c.trials, threads, [&](std::uint64_t t) {
      Rng rng(derive_seed(c.seed, c.experiment_id, t, "iterative-bounds"));
      auto& res = results[t];
      run_chain_annealed(kernel, BallState::init(box, start), stop, rng, [&](const BallState& s) {
        if (s.boundary().empty()) return;
        const auto r = iterative_bound_report(kernel, s, c.alpha);
        ++res.states;
        if (!r.sandwich_holds() || !r.pigeonhole_holds()) {
          res.witnesses.push_back({{"trial", t},
                                   {"step", s.step()},
                                   {"interior", s.interior()},
                                   {"boundary", s.boundary()},
                                   {"lower", r.lower},
                                   {"expected", r.expected_growth},
                                   {"upper", r.upper},
                                   {"heavy_count", r.heavy_count},
                                   {"pigeonhole_bound", r.pigeonhole_bound}});
        }
      });
    });
    std::uint64_t states = 0;
    json witnesses = json::array();
    for (const auto& r : results) {
      states += r.states;
      for (const auto& w : r.witnesses) witnesses.push_back(w);
    }
    report["iterative_bounds"] = {{"chains", c.trials},
                                  {"states", states},
                                  {"alpha", c.alpha},
                                  {"passed", witnesses.empty()},
                                  {"witnesses", witnesses}};
    ok = ok && witnesses.empty();
  }

  // Relative concentration of one step at three chain depths.
  {
    std::vector<BallState> states;
    Rng rng(derive_seed(c.seed, c.experiment_id, 0, "chernoff-states"));
    BallState s = BallState::init(box, start);
    for (int depth = 0; depth < 3 && !s.covers_box(); ++depth) {
      states.push_back(s);
      s = expand_annealed(s, kernel, rng);
    }
    const std::uint64_t cells = states.size() * c.delta_grid.size();
    std::vector<ChernoffCheck> checks(cells);
    parallel_for(cells, threads, [&](std::uint64_t i) {
      const auto& st = states[i / c.delta_grid.size()];
      checks[i] = chernoff_tail_check(kernel, st, c.delta_grid[i % c.delta_grid.size()], c.chernoff_trials,
                                      derive_seed(c.seed, c.experiment_id, i, "chernoff"));
    });
    json rows = json::array();
    bool all = true;
    for (std::uint64_t i = 0; i < cells; ++i) {
      const auto& ch = checks[i];
      const auto& st = states[i / c.delta_grid.size()];
      rows.push_back({{"depth", st.step()},
                      {"boundary", st.boundary()},
                      {"delta", ch.delta},
                      {"conditional_mean", ch.conditional_mean},
                      {"empirical_tail", ch.empirical_tail},
                      {"bound", ch.bound},
                      {"standard_error", ch.standard_error},
                      {"skipped", ch.skipped},
                      {"passed", ch.passed()}});
      all = all && ch.passed();
    }
    report["chernoff"] = {{"trials", c.chernoff_trials}, {"passed", all}, {"cells", rows}};
    ok = ok && all;
  }

  report["passed"] = ok;
  const fs::path out = output_path(c, "verify_lemmas.json");
  write_json(out, report);
  return {ok ? kExitOk : kExitCheckFailed, report};
}

CommandOutcome run_command(const ExperimentConfig& config) {
  validate(config);
  static const std::map<std::string, std::function<CommandOutcome(const ExperimentConfig&)>> table = {
      {"generate", cmd_generate},   {"ball-growth", cmd_ball_growth}, {"diameter", cmd_diameter},
      {"two-ball", cmd_two_ball},   {"scaling", cmd_scaling},         {"verify-lemmas", cmd_verify_lemmas}};
  const auto it = table.find(config.command);
  if (it == table.end()) throw DomainError("unknown command '" + config.command + "'");
  return it->second(config);
}

int run(int argc, char** argv) {
  CLI::App app{"Long-range percolation on the box {0..N}^d: sampling, ball growth and graph-distance experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", code_version());

  struct Flags {
    std::string config;
    int d = 0;
    std::int64_t n = 0;
    double beta = 0;
    double s = 0;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::string mode;
    std::string out;
    unsigned threads = 0;
    std::vector<std::int64_t> n_grid;
    double eps = 0;
    std::int64_t radius = 0;
    double alpha = 0;
    std::uint64_t max_steps = 0;
    std::string generator;
  } f;

  using Setter = std::function<void(ExperimentConfig&)>;
  struct Override {
    CLI::App* sub;
    CLI::Option* opt;
    Setter set;
  };
  std::vector<Override> overrides;
  const char* names[][2] = {{"generate", "sample one graph and write it in the LRPG binary format"},
                            {"ball-growth", "run the ball-growth chain and record boundary sizes"},
                            {"diameter", "sample graphs and measure their diameter"},
                            {"two-ball", "run the alternating two-ball procedure and record tau"},
                            {"scaling", "diameter scaling statistic across an N grid"},
                            {"verify-lemmas", "check the concentration and weight bounds; exit 4 on failure"}};
  for (const auto& [name, help] : names) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", f.config, "JSON config file; flags override its values");
    const auto add = [&](CLI::Option* opt, Setter set) { overrides.push_back({sub, opt, std::move(set)}); };
    add(sub->add_option("--d", f.d, "dimension"), [&](ExperimentConfig& c) { c.d = f.d; });
    add(sub->add_option("--n", f.n, "box side length N"), [&](ExperimentConfig& c) { c.n = f.n; });
    add(sub->add_option("--beta", f.beta, "connection strength beta"), [&](ExperimentConfig& c) { c.beta = f.beta; });
    add(sub->add_option("--s", f.s, "decay exponent (default d)"), [&](ExperimentConfig& c) { c.exponent = f.s; });
    add(sub->add_option("--seed", f.seed, "master seed"), [&](ExperimentConfig& c) { c.seed = f.seed; });
    add(sub->add_option("--trials", f.trials, "number of trials"), [&](ExperimentConfig& c) { c.trials = f.trials; });
    add(sub->add_option("--mode", f.mode, "quenched|annealed")->check(CLI::IsMember({"quenched", "annealed"})),
        [&](ExperimentConfig& c) { c.mode = f.mode; });
    add(sub->add_option("--out", f.out, "output path"), [&](ExperimentConfig& c) { c.out = f.out; });
    add(sub->add_option("--threads", f.threads, "worker threads (default LRP_THREADS or all cores)"),
        [&](ExperimentConfig& c) { c.threads = f.threads; });
    add(sub->add_option("--n-grid", f.n_grid, "list of N values"), [&](ExperimentConfig& c) { c.n_grid = f.n_grid; });
    add(sub->add_option("--eps", f.eps, "two-ball epsilon in (0, 1/2)"), [&](ExperimentConfig& c) { c.eps = f.eps; });
    add(sub->add_option("--radius", f.radius, "two-ball start radius R (0: calibrated)"),
        [&](ExperimentConfig& c) { c.radius = f.radius; });
    add(sub->add_option("--alpha", f.alpha, "size-condition exponent alpha"),
        [&](ExperimentConfig& c) { c.alpha = f.alpha; });
    add(sub->add_option("--max-steps", f.max_steps, "ball-growth step cap (0: none)"),
        [&](ExperimentConfig& c) { c.max_steps = f.max_steps; });
    add(sub->add_option("--generator", f.generator, "eager|naive"),
        [&](ExperimentConfig& c) { c.generator = f.generator; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    ExperimentConfig config = f.config.empty() ? ExperimentConfig{} : load_config(f.config);
    config.command = sub->get_name();
    for (auto& o : overrides) {
      if (o.sub == sub && o.opt->count() > 0) o.set(config);
    }
    const CommandOutcome outcome = run_command(config);
    std::cout << outcome.summary.dump(2) << '\n';
    return outcome.exit_code;
  } catch (const BudgetExceeded& e) {
    std::cerr << "lrp: budget refusal: " << e.what() << '\n';
    return kExitBudget;
  } catch (const DomainError& e) {
    std::cerr << "lrp: invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "lrp: invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "lrp: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace lrp::cli
