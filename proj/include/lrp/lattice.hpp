#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lrp {

using SiteIndex = std::uint64_t;
using Coord = std::int64_t;
using Coords = std::vector<Coord>;

/// Sorted, duplicate-free list of site indices.
using SiteSet = std::vector<SiteIndex>;

/// The box {0, 1, ..., N}^d. Sites are linearised row-major with coordinate 0
/// least significant: index = sum_i coords[i] * (N+1)^i.
class BoxSpec {
 public:
  BoxSpec(int dim, std::int64_t side);

  int dim() const noexcept { return dim_; }
  std::int64_t side() const noexcept { return side_; }
  std::uint64_t site_count() const noexcept { return site_count_; }
  /// Largest l1 distance between two sites, d*N.
  std::int64_t max_distance() const noexcept { return dim_ * side_; }

  bool contains(std::span<const Coord> coords) const noexcept;

  friend bool operator==(const BoxSpec&, const BoxSpec&) = default;

 private:
  int dim_;
  std::int64_t side_;
  std::uint64_t site_count_;
};

struct Site {
  SiteIndex index = 0;
  Coords coords;

  friend bool operator==(const Site& a, const Site& b) { return a.index == b.index && a.coords == b.coords; }
};

SiteIndex site_index(const BoxSpec& box, std::span<const Coord> coords);
Coords site_coords(const BoxSpec& box, SiteIndex index);
Site site_from_index(const BoxSpec& box, SiteIndex index);
Site make_site(const BoxSpec& box, std::span<const Coord> coords);

/// Writes the coordinates of `index` into `out` (size d) without allocating.
void decode_into(const BoxSpec& box, SiteIndex index, std::span<Coord> out) noexcept;

std::int64_t l1_distance(const Site& a, const Site& b);
std::int64_t l1_distance(std::span<const Coord> a, std::span<const Coord> b);
std::int64_t l1_distance(const BoxSpec& box, SiteIndex a, SiteIndex b);

/// Number of sites y in the box with ||x - y|| = r.
std::uint64_t shell_size(const BoxSpec& box, const Site& x, std::int64_t r);

/// Sites of the box within l1 distance `radius` of x, sorted by index.
SiteSet l1_ball(const BoxSpec& box, const Site& x, std::int64_t radius);

/// Lattice neighbours (||v|| = 1) of a site that lie inside the box.
template <class F>
void for_each_lattice_neighbor(const BoxSpec& box, std::span<const Coord> coords, SiteIndex index, F&& fn) {
  std::uint64_t stride = 1;
  const auto side = static_cast<std::uint64_t>(box.side());
  for (int i = 0; i < box.dim(); ++i) {
    if (coords[i] > 0) fn(index - stride);
    if (coords[i] < box.side()) fn(index + stride);
    stride *= side + 1;
  }
}

/// One class of unordered site pairs {x, x+v}: the displacement v is
/// lexicographically positive and `pair_count` is prod_i (N+1-|v_i|).
struct DisplacementClass {
  Coords displacement;
  std::int64_t norm = 0;
  std::uint64_t pair_count = 0;
};

/// Lazy enumeration of all displacement classes of a box, in lexicographic
/// order of v (coordinate 0 most significant). Nothing is materialised.
class DisplacementClasses {
 public:
  explicit DisplacementClasses(const BoxSpec& box) : box_(box) {}

  class iterator {
   public:
    using value_type = DisplacementClass;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    const DisplacementClass& operator*() const noexcept { return current_; }
    const DisplacementClass* operator->() const noexcept { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) noexcept { return a.done_ == b.done_; }

   private:
    friend class DisplacementClasses;
    explicit iterator(const BoxSpec& box);
    void refresh();

    int dim_ = 0;
    std::int64_t side_ = 0;
    DisplacementClass current_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(box_); }
  iterator end() const { return iterator(); }

 private:
  BoxSpec box_;
};

inline DisplacementClasses displacement_classes(const BoxSpec& box) { return DisplacementClasses(box); }

/// Maps slot j in [0, pair_count) of a class to the site indices of its pair
/// (x, x+v). Slots run over x with coordinate 0 varying fastest.
std::pair<SiteIndex, SiteIndex> class_pair(const BoxSpec& box, const DisplacementClass& cls, std::uint64_t slot);

}  // namespace lrp
