#include "lrp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrp/errors.hpp"

namespace lrp {

Graph::Graph(const BoxSpec& box, const ModelParams& params, std::uint64_t seed, std::string generator_id,
             std::vector<Edge> edges)
    : box_(box), params_(params), seed_(seed), generator_id_(std::move(generator_id)), edges_(std::move(edges)) {
  const std::uint64_t n = box_.site_count();
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) throw DomainError("self-loop at site " + std::to_string(e.u));
    if (e.v >= n) throw DomainError("edge endpoint " + std::to_string(e.v) + " outside box");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::uint64_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(offsets_[n]);
  std::vector<std::uint64_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (u, v), so each list receives its smaller neighbours
  // (as v) in ascending order before its larger ones (as u); both runs are
  // ascending, hence every list ends up sorted.
  for (const auto& e : edges_) adjacency_[fill[e.v]++] = e.u;
  for (const auto& e : edges_) adjacency_[fill[e.u]++] = e.v;
}

bool Graph::has_edge(SiteIndex a, SiteIndex b) const noexcept {
  if (a >= site_count() || b >= site_count()) return false;
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

double pair_probability(const ModelParams& params, const BoxSpec& box, const Site& a, const Site& b) {
  if (!box.contains(a.coords) || !box.contains(b.coords)) throw DomainError("pair_probability: site outside box");
  const std::int64_t r = l1_distance(a, b);
  if (r == 0) throw DomainError("pair_probability: sites coincide");
  if (r == 1) return 1.0;
  return -std::expm1(-params.beta() / std::pow(static_cast<double>(r), params.exponent()));
}

EdgeCountMoments edge_count_moments(const BoxSpec& box, const ModelParams& params) {
  const ConnectionKernel kernel(box, params);
  CompensatedSum mean;
  CompensatedSum variance;
  for (const auto& cls : displacement_classes(box)) {
    const double p = kernel.probability(cls.norm);
    const auto m = static_cast<double>(cls.pair_count);
    mean.add(m * p);
    variance.add(m * p * (1.0 - p));
  }
  return {mean.value(), variance.value()};
}

Graph sample_graph_naive(const BoxSpec& box, const ModelParams& params, std::uint64_t seed,
                         std::uint64_t pair_budget) {
  const std::uint64_t n = box.site_count();
  const std::uint64_t pairs = n % 2 == 0 ? (n / 2) * (n - 1) : n * ((n - 1) / 2);
  if (pairs > pair_budget) {
    throw BudgetExceeded("naive sampler would visit " + std::to_string(pairs) + " pairs (budget " +
                         std::to_string(pair_budget) + "); use the eager sampler");
  }
  const ConnectionKernel kernel(box, params);
  Rng rng(seed);
  std::vector<Edge> edges;
  for (SiteIndex a = 0; a < n; ++a) {
    for (SiteIndex b = a + 1; b < n; ++b) {
      if (rng.bernoulli(kernel.probability(l1_distance(box, a, b)))) edges.push_back({a, b});
    }
  }
  return Graph(box, params, seed, kNaiveGeneratorId, std::move(edges));
}

Graph sample_graph_eager(const BoxSpec& box, const ModelParams& params, std::uint64_t seed) {
  const ConnectionKernel kernel(box, params);
  Rng rng(seed);
  std::vector<Edge> edges;
  const auto emit = [&](std::pair<SiteIndex, SiteIndex> p) {
    edges.push_back(p.first < p.second ? Edge{p.first, p.second} : Edge{p.second, p.first});
  };
  for (const auto& cls : displacement_classes(box)) {
    if (cls.norm == 1) {
      for (std::uint64_t slot = 0; slot < cls.pair_count; ++slot) emit(class_pair(box, cls, slot));
      continue;
    }
    const double lambda = kernel.rate(cls.norm);
    std::uint64_t pos = 0;
    while (true) {
      const double gap = std::floor(rng.exponential() / lambda);
      if (gap >= static_cast<double>(cls.pair_count - pos)) break;
      pos += static_cast<std::uint64_t>(gap);
      emit(class_pair(box, cls, pos));
      if (++pos == cls.pair_count) break;
    }
  }
  return Graph(box, params, seed, kEagerGeneratorId, std::move(edges));
}

double mean_degree(const Graph& graph) {
  return 2.0 * static_cast<double>(graph.edge_count()) / static_cast<double>(graph.site_count());
}

SiteSet normalize_set(std::vector<SiteIndex> sites) {
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return sites;
}

CandidateProbabilities hit_probabilities(const ConnectionKernel& kernel, std::span<const std::uint8_t> site_tags,
                                         const SiteSet& boundary) {
  const BoxSpec& box = kernel.box();
  const std::uint64_t n = box.site_count();
  const int d = box.dim();

  std::vector<Coord> boundary_coords(boundary.size() * static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    decode_into(box, boundary[i], std::span<Coord>(boundary_coords.data() + i * d, static_cast<std::size_t>(d)));
  }

  CandidateProbabilities out;
  Coords y(static_cast<std::size_t>(d));
  for (SiteIndex site = 0; site < n; ++site) {
    if (site_tags[site] != kTagFree) continue;
    decode_into(box, site, y);
    bool adjacent = false;
    for_each_lattice_neighbor(box, y, site,
                              [&](SiteIndex nb) { adjacent = adjacent || site_tags[nb] == kTagBoundary; });
    double p = 1.0;
    if (!adjacent) {
      CompensatedSum rho;
      for (std::size_t i = 0; i < boundary.size(); ++i) {
        const Coord* x = boundary_coords.data() + i * d;
        std::int64_t r = 0;
        for (int k = 0; k < d; ++k) r += std::abs(x[k] - y[k]);
        rho.add(kernel.rate(r));
      }
      p = -std::expm1(-rho.value());
    }
    out.candidates.push_back(site);
    out.probability.push_back(p);
  }
  return out;
}

CandidateProbabilities bipartite_hit_probabilities(const ConnectionKernel& kernel, const SiteSet& boundary,
                                                   const SiteSet& forbidden) {
  const std::uint64_t n = kernel.box().site_count();
  if (boundary.empty()) throw DomainError("bipartite round needs a nonempty boundary");
  constexpr std::uint8_t kForbidden = 2;
  std::vector<std::uint8_t> tag(n, kTagFree);
  for (SiteIndex x : boundary) {
    if (x >= n) throw DomainError("boundary site " + std::to_string(x) + " outside box");
    tag[x] = kTagBoundary;
  }
  for (SiteIndex x : forbidden) {
    if (x >= n) throw DomainError("forbidden site " + std::to_string(x) + " outside box");
    if (tag[x] == kTagBoundary) throw DomainError("boundary and forbidden sets overlap at site " + std::to_string(x));
    tag[x] = kForbidden;
  }
  return hit_probabilities(kernel, tag, normalize_set(boundary));
}

SiteSet draw_hits(const CandidateProbabilities& round, Rng& rng) {
  SiteSet hits;
  for (std::size_t i = 0; i < round.candidates.size(); ++i) {
    if (rng.bernoulli(round.probability[i])) hits.push_back(round.candidates[i]);
  }
  return hits;
}

SiteSet sample_bipartite_round(const ConnectionKernel& kernel, const SiteSet& boundary, const SiteSet& forbidden,
                               Rng& rng) {
  return draw_hits(bipartite_hit_probabilities(kernel, boundary, forbidden), rng);
}

SiteSet sample_bipartite_round(const BoxSpec& box, const ModelParams& params, const SiteSet& boundary,
                               const SiteSet& forbidden, std::uint64_t seed) {
  const ConnectionKernel kernel(box, params);
  Rng rng(seed);
  return sample_bipartite_round(kernel, boundary, forbidden, rng);
}

}  // namespace lrp
