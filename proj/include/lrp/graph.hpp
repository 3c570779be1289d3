#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lrp/kernel.hpp"
#include "lrp/lattice.hpp"
#include "lrp/random.hpp"

namespace lrp {

struct Edge {
  SiteIndex u = 0;  // smaller endpoint
  SiteIndex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline constexpr const char* kNaiveGeneratorId = "naive-bernoulli";
inline constexpr const char* kEagerGeneratorId = "eager-geometric-skip";

/// Default cap on the number of site pairs the naive sampler will visit.
inline constexpr std::uint64_t kDefaultNaivePairBudget = 50'000'000;

/// An immutable sampled graph over the sites of a box. Edges are stored
/// sorted with the smaller endpoint first; adjacency is a CSR array keyed by
/// site index with each neighbour list sorted.
class Graph {
 public:
  Graph(const BoxSpec& box, const ModelParams& params, std::uint64_t seed, std::string generator_id,
        std::vector<Edge> edges);

  const BoxSpec& box() const noexcept { return box_; }
  const ModelParams& params() const noexcept { return params_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::string& generator_id() const noexcept { return generator_id_; }

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::uint64_t edge_count() const noexcept { return edges_.size(); }
  std::uint64_t site_count() const noexcept { return box_.site_count(); }

  std::span<const SiteIndex> neighbors(SiteIndex x) const noexcept {
    return {adjacency_.data() + offsets_[x], adjacency_.data() + offsets_[x + 1]};
  }
  std::uint64_t degree(SiteIndex x) const noexcept { return offsets_[x + 1] - offsets_[x]; }
  bool has_edge(SiteIndex a, SiteIndex b) const noexcept;

 private:
  BoxSpec box_;
  ModelParams params_;
  std::uint64_t seed_;
  std::string generator_id_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> offsets_;
  std::vector<SiteIndex> adjacency_;
};

/// Probability that a and b are joined: 1 at l1 distance 1, otherwise
/// 1 - exp(-beta / ||a-b||^s).
double pair_probability(const ModelParams& params, const BoxSpec& box, const Site& a, const Site& b);

/// Exact expected edge count, sum over classes of M_v p_v, and the variance
/// sum M_v p_v (1 - p_v) of the edge count.
struct EdgeCountMoments {
  double mean = 0.0;
  double variance = 0.0;
};
EdgeCountMoments edge_count_moments(const BoxSpec& box, const ModelParams& params);

/// One Bernoulli draw per unordered pair, in index order. Throws
/// BudgetExceeded when the number of pairs exceeds `pair_budget`.
Graph sample_graph_naive(const BoxSpec& box, const ModelParams& params, std::uint64_t seed,
                         std::uint64_t pair_budget = kDefaultNaivePairBudget);

/// Same law as the naive sampler. Walks each displacement class with
/// geometric gaps between present pairs: with rate lambda = beta/||v||^s, the
/// gap floor(E / lambda) for E ~ Exp(1) is geometric with success probability
/// p_v = 1 - exp(-lambda). Expected work O(#classes + #edges).
Graph sample_graph_eager(const BoxSpec& box, const ModelParams& params, std::uint64_t seed);

double mean_degree(const Graph& graph);

/// Candidates of one bipartite round together with their hit probabilities.
struct CandidateProbabilities {
  SiteSet candidates;
  std::vector<double> probability;
};

/// Site tags understood by `hit_probabilities`: free sites are candidates,
/// boundary sites are the sources, anything else is excluded.
inline constexpr std::uint8_t kTagFree = 0;
inline constexpr std::uint8_t kTagBoundary = 1;

/// Hit probabilities for all sites tagged free, given per-site tags (length
/// site_count) and the boundary list matching the boundary tags.
CandidateProbabilities hit_probabilities(const ConnectionKernel& kernel, std::span<const std::uint8_t> site_tags,
                                         const SiteSet& boundary);

/// For every site y outside boundary and forbidden, the probability that
/// fresh randomness joins y to the boundary: 1 if y has a lattice neighbour
/// in the boundary, else 1 - exp(-rho(y, boundary)) with rho summed exactly.
CandidateProbabilities bipartite_hit_probabilities(const ConnectionKernel& kernel, const SiteSet& boundary,
                                                   const SiteSet& forbidden);

/// Independent Bernoulli draws over the candidates, in candidate order.
SiteSet draw_hits(const CandidateProbabilities& round, Rng& rng);

SiteSet sample_bipartite_round(const ConnectionKernel& kernel, const SiteSet& boundary, const SiteSet& forbidden,
                               Rng& rng);
SiteSet sample_bipartite_round(const BoxSpec& box, const ModelParams& params, const SiteSet& boundary,
                               const SiteSet& forbidden, std::uint64_t seed);

/// Sorts and removes duplicates.
SiteSet normalize_set(std::vector<SiteIndex> sites);

}  // namespace lrp
