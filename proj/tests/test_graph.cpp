#include <cmath>
#include <sstream>

#include "doctest.h"
#include "lrp/errors.hpp"
#include "lrp/graph.hpp"
#include "lrp/graph_io.hpp"
#include "lrp/stats.hpp"
#include "oracles.hpp"

using namespace lrp;

namespace {

bool contains_all_lattice_edges(const Graph& g) {
  const BoxSpec& box = g.box();
  for (SiteIndex i = 0; i < box.site_count(); ++i) {
    const Coords c = site_coords(box, i);
    bool ok = true;
    for_each_lattice_neighbor(box, c, i, [&](SiteIndex j) { ok = ok && g.has_edge(i, j); });
    if (!ok) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("pair probability examples") {
  const BoxSpec box(1, 8);
  const ModelParams p(1.0, 1);
  auto site = [&](Coord x) { return make_site(box, Coords{x}); };
  CHECK(pair_probability(p, box, site(3), site(4)) == 1.0);
  CHECK(pair_probability(p, box, site(0), site(2)) == doctest::Approx(0.3934693).epsilon(1e-7));
  CHECK_THROWS_AS(pair_probability(p, box, site(2), site(2)), DomainError);
  double previous = 1.0;
  for (double beta : {1.0, 0.1, 1e-3, 1e-6}) {
    const double q = pair_probability(ModelParams(beta, 1), box, site(0), site(5));
    CHECK(q < previous);
    previous = q;
  }
  CHECK(previous < 1e-6);
}

TEST_CASE("model parameters validate input") {
  CHECK_THROWS_AS(ModelParams(0.0, 1), DomainError);
  CHECK_THROWS_AS(ModelParams(-1.0, 1), DomainError);
  CHECK_THROWS_AS(ModelParams(1.0, 0.0, 1), DomainError);
  CHECK_THROWS_AS(ModelParams(NAN, 1), DomainError);
  CHECK(ModelParams(1.0, 2).critical());
  CHECK(ModelParams(1.0, 2).exponent() == 2.0);
  CHECK_FALSE(ModelParams(1.0, 1.5, 2).critical());
}

TEST_CASE("kernel tables agree with the closed form") {
  const BoxSpec box(2, 6);
  const ConnectionKernel k(box, ModelParams(0.7, 2));
  CHECK(k.probability(1) == 1.0);
  for (std::int64_t r = 2; r <= box.max_distance(); ++r) {
    CHECK(k.rate(r) == doctest::Approx(0.7 / (r * r)).epsilon(1e-15));
    CHECK(k.probability(r) == doctest::Approx(oracle::pair_probability(0.7, 2, r)).epsilon(1e-14));
  }
}

TEST_CASE("edge count moments match a pairwise sum") {
  for (int d = 1; d <= 2; ++d) {
    const BoxSpec box(d, d == 1 ? 20 : 5);
    const auto m = edge_count_moments(box, ModelParams(1.3, d));
    CHECK(m.mean == doctest::Approx(oracle::expected_edges(box, 1.3, d)).epsilon(1e-12));
    CHECK(m.variance > 0.0);
  }
}

TEST_CASE("naive sampler deterministic cases") {
  const BoxSpec one(1, 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = sample_graph_naive(one, ModelParams(1.0, 1), seed);
    REQUIRE(g.edge_count() == 1);
    CHECK(g.edges()[0] == Edge{0, 1});
  }
  const BoxSpec four(1, 4);
  int complete = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    complete += sample_graph_naive(four, ModelParams(1e6, 1), seed).edge_count() == 10 ? 1 : 0;
  }
  CHECK(complete >= 999);
  CHECK_THROWS_AS(sample_graph_naive(BoxSpec(1, 100), ModelParams(1.0, 1), 1, 1000), BudgetExceeded);
}

TEST_CASE("both samplers always contain the lattice edges") {
  for (int d = 1; d <= 3; ++d) {
    const BoxSpec box(d, 4);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      CHECK(contains_all_lattice_edges(sample_graph_eager(box, ModelParams(1e-9, d), seed)));
      CHECK(contains_all_lattice_edges(sample_graph_naive(box, ModelParams(1.0, d), seed)));
    }
    const Graph tiny = sample_graph_eager(box, ModelParams(1e-12, d), 3);
    CHECK(tiny.edge_count() == static_cast<std::uint64_t>(d) * 4 * static_cast<std::uint64_t>(std::pow(5, d - 1)));
  }
}

TEST_CASE("path graph degrees") {
  const Graph g = sample_graph_eager(BoxSpec(1, 2), ModelParams(1e-12, 1), 1);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(2) == 1);
  CHECK(mean_degree(g) == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("graph adjacency is symmetric and sorted") {
  const BoxSpec box(2, 8);
  const Graph g = sample_graph_eager(box, ModelParams(2.0, 2), 11);
  std::uint64_t degree_sum = 0;
  for (SiteIndex x = 0; x < box.site_count(); ++x) {
    const auto nb = g.neighbors(x);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
    for (auto y : nb) {
      CHECK(y != x);
      CHECK(g.has_edge(y, x));
    }
    degree_sum += g.degree(x);
  }
  CHECK(degree_sum == 2 * g.edge_count());
  CHECK(mean_degree(g) == doctest::Approx(static_cast<double>(degree_sum) / box.site_count()));
}

TEST_CASE("graph construction normalises edge lists") {
  const BoxSpec box(1, 3);
  const Graph g(box, ModelParams(1.0, 1), 0, "test", {{2, 1}, {1, 2}, {0, 3}});
  CHECK(g.edge_count() == 2);
  CHECK(g.edges()[0] == Edge{0, 3});
  CHECK(g.edges()[1] == Edge{1, 2});
  CHECK_THROWS(Graph(box, ModelParams(1.0, 1), 0, "test", {{0, 4}}));
  CHECK_THROWS(Graph(box, ModelParams(1.0, 1), 0, "test", {{1, 1}}));
}

TEST_CASE("samplers are deterministic in the seed") {
  const BoxSpec box(2, 10);
  const ModelParams p(1.0, 2);
  CHECK(graph_digest(sample_graph_eager(box, p, 5)) == graph_digest(sample_graph_eager(box, p, 5)));
  CHECK(graph_digest(sample_graph_eager(box, p, 5)) != graph_digest(sample_graph_eager(box, p, 6)));
  CHECK(graph_digest(sample_graph_naive(box, p, 5)) == graph_digest(sample_graph_naive(box, p, 5)));
}

TEST_CASE("sampler means match the exact expected edge count") {
  const BoxSpec box(1, 32);
  const ModelParams p(1.0, 1);
  const double exact = oracle::expected_edges(box, 1.0, 1.0);
  std::vector<double> eager;
  std::vector<double> naive;
  for (std::uint64_t t = 0; t < 4000; ++t) {
    eager.push_back(static_cast<double>(sample_graph_eager(box, p, derive_seed(1, "eager", t, "g")).edge_count()));
    naive.push_back(static_cast<double>(sample_graph_naive(box, p, derive_seed(1, "naive", t, "g")).edge_count()));
  }
  CHECK(std::abs(stats::mean(eager) - exact) < 3 * stats::standard_error(eager));
  CHECK(std::abs(stats::mean(naive) - exact) < 3 * stats::standard_error(naive));
  const auto m = edge_count_moments(box, p);
  CHECK(stats::variance(eager) == doctest::Approx(m.variance).epsilon(0.1));
}

TEST_CASE("binary format round trip") {
  const BoxSpec box(2, 6);
  const Graph g = sample_graph_eager(box, ModelParams(1.5, 2), 9);
  const std::string bytes = serialize_graph(g);
  CHECK(bytes.substr(0, 4) == "LRPG");
  std::istringstream in(bytes);
  const Graph back = read_graph(in);
  CHECK(back.box() == g.box());
  CHECK(back.params() == g.params());
  CHECK(back.seed() == g.seed());
  CHECK(back.generator_id() == g.generator_id());
  CHECK(std::equal(back.edges().begin(), back.edges().end(), g.edges().begin(), g.edges().end()));
  CHECK(serialize_graph(back) == bytes);

  std::istringstream bad("LRPX");
  CHECK_THROWS(read_graph(bad));
  std::istringstream truncated(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS(read_graph(truncated));
}

TEST_CASE("bipartite round examples") {
  const BoxSpec box(1, 6);
  const ModelParams p(1.0, 1);
  const ConnectionKernel k(box, p);
  SiteSet all;
  for (SiteIndex i = 0; i < box.site_count(); ++i) all.push_back(i);
  Rng rng(3);
  CHECK(sample_bipartite_round(k, all, {}, rng).empty());
  for (int t = 0; t < 50; ++t) {
    const SiteSet hits = sample_bipartite_round(k, {3}, {}, rng);
    CHECK(std::binary_search(hits.begin(), hits.end(), 2));
    CHECK(std::binary_search(hits.begin(), hits.end(), 4));
  }
  CHECK_THROWS_AS(sample_bipartite_round(k, {1, 2}, {2}, rng), DomainError);
  CHECK_THROWS_AS(sample_bipartite_round(k, {}, {}, rng), DomainError);
  CHECK(sample_bipartite_round(box, p, {3}, {2}, 5) == sample_bipartite_round(box, p, {3}, {2}, 5));
}

TEST_CASE("bipartite hit probabilities match the weight formula") {
  const BoxSpec box(2, 5);
  const ConnectionKernel k(box, ModelParams(0.8, 2));
  const SiteSet boundary{0, 7, 14, 30};
  const SiteSet forbidden{1, 2};
  const auto round = bipartite_hit_probabilities(k, boundary, forbidden);
  CHECK(round.candidates.size() == box.site_count() - boundary.size() - forbidden.size());
  for (std::size_t i = 0; i < round.candidates.size(); ++i) {
    const SiteIndex y = round.candidates[i];
    bool adjacent = false;
    for (auto b : boundary) adjacent = adjacent || l1_distance(box, b, y) == 1;
    const double want = adjacent ? 1.0 : 1.0 - std::exp(-oracle::rho(box, 0.8, 2.0, y, boundary));
    CHECK(round.probability[i] == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("per-site hit frequencies match the aggregated probability") {
  const BoxSpec box(1, 12);
  const ConnectionKernel k(box, ModelParams(1.0, 1));
  const SiteSet boundary{5, 6};
  const SiteSet forbidden{4, 7};
  const auto round = bipartite_hit_probabilities(k, boundary, forbidden);
  std::vector<std::uint64_t> counts(box.site_count(), 0);
  const std::uint64_t trials = 20000;
  Rng rng(99);
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (auto y : draw_hits(round, rng)) ++counts[y];
  }
  for (std::size_t i = 0; i < round.candidates.size(); ++i) {
    const double p = round.probability[i];
    const double freq = static_cast<double>(counts[round.candidates[i]]) / trials;
    CHECK(std::abs(freq - p) <= 4 * stats::binomial_standard_error(p, trials) + 1e-12);
  }
}
