#include "lrp/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "lrp/errors.hpp"

namespace lrp {

BoxSpec::BoxSpec(int dim, std::int64_t side) : dim_(dim), side_(side), site_count_(1) {
  if (dim < 1) throw DomainError("box dimension must be >= 1, got " + std::to_string(dim));
  if (side < 1) throw DomainError("box side length must be >= 1, got " + std::to_string(side));
  constexpr std::uint64_t limit = std::uint64_t{1} << 63;
  const auto base = static_cast<std::uint64_t>(side) + 1;
  for (int i = 0; i < dim; ++i) {
    if (site_count_ > limit / base) {
      throw DomainError("site count (N+1)^d overflows the 63-bit index range");
    }
    site_count_ *= base;
  }
}

bool BoxSpec::contains(std::span<const Coord> coords) const noexcept {
  if (coords.size() != static_cast<std::size_t>(dim_)) return false;
  return std::all_of(coords.begin(), coords.end(), [&](Coord c) { return c >= 0 && c <= side_; });
}

SiteIndex site_index(const BoxSpec& box, std::span<const Coord> coords) {
  if (coords.size() != static_cast<std::size_t>(box.dim())) {
    throw DomainError("expected " + std::to_string(box.dim()) + " coordinates, got " +
                      std::to_string(coords.size()));
  }
  SiteIndex index = 0;
  SiteIndex stride = 1;
  const auto base = static_cast<SiteIndex>(box.side()) + 1;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] < 0 || coords[i] > box.side()) {
      throw DomainError("coordinate " + std::to_string(i) + " = " + std::to_string(coords[i]) +
                        " lies outside [0, " + std::to_string(box.side()) + "]");
    }
    index += static_cast<SiteIndex>(coords[i]) * stride;
    stride *= base;
  }
  return index;
}

void decode_into(const BoxSpec& box, SiteIndex index, std::span<Coord> out) noexcept {
  const auto base = static_cast<SiteIndex>(box.side()) + 1;
  for (int i = 0; i < box.dim(); ++i) {
    out[i] = static_cast<Coord>(index % base);
    index /= base;
  }
}

Coords site_coords(const BoxSpec& box, SiteIndex index) {
  if (index >= box.site_count()) {
    throw DomainError("site index " + std::to_string(index) + " outside [0, " + std::to_string(box.site_count()) + ")");
  }
  Coords out(static_cast<std::size_t>(box.dim()));
  decode_into(box, index, out);
  return out;
}

Site site_from_index(const BoxSpec& box, SiteIndex index) { return Site{index, site_coords(box, index)}; }

Site make_site(const BoxSpec& box, std::span<const Coord> coords) {
  return Site{site_index(box, coords), Coords(coords.begin(), coords.end())};
}

std::int64_t l1_distance(std::span<const Coord> a, std::span<const Coord> b) {
  if (a.size() != b.size()) throw DomainError("l1_distance: dimension mismatch");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

std::int64_t l1_distance(const Site& a, const Site& b) { return l1_distance(a.coords, b.coords); }

std::int64_t l1_distance(const BoxSpec& box, SiteIndex a, SiteIndex b) {
  const auto base = static_cast<SiteIndex>(box.side()) + 1;
  std::int64_t sum = 0;
  for (int i = 0; i < box.dim(); ++i) {
    sum += std::abs(static_cast<std::int64_t>(a % base) - static_cast<std::int64_t>(b % base));
    a /= base;
    b /= base;
  }
  return sum;
}

std::uint64_t shell_size(const BoxSpec& box, const Site& x, std::int64_t r) {
  if (r < 1) throw DomainError("shell radius must be >= 1");
  if (!box.contains(x.coords)) throw DomainError("shell_size: site outside box");
  // counts[k] = number of offset vectors over the processed axes with l1 norm k.
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(r) + 1, 0);
  counts[0] = 1;
  for (int i = 0; i < box.dim(); ++i) {
    const Coord c = x.coords[i];
    std::vector<std::uint64_t> next(counts.size(), 0);
    for (std::int64_t total = 0; total <= r; ++total) {
      for (std::int64_t k = 0; k <= total; ++k) {
        std::uint64_t ways = k == 0 ? 1 : (c - k >= 0 ? 1 : 0) + (c + k <= box.side() ? 1 : 0);
        next[total] += ways * counts[total - k];
      }
    }
    counts = std::move(next);
  }
  return counts[r];
}

SiteSet l1_ball(const BoxSpec& box, const Site& x, std::int64_t radius) {
  if (radius < 0) throw DomainError("l1_ball radius must be >= 0");
  const int d = box.dim();
  Coords lo(d), hi(d), cur(d);
  for (int i = 0; i < d; ++i) {
    lo[i] = std::max<Coord>(0, x.coords[i] - radius);
    hi[i] = std::min<Coord>(box.side(), x.coords[i] + radius);
  }
  cur = lo;
  SiteSet out;
  while (true) {
    if (l1_distance(cur, x.coords) <= radius) out.push_back(site_index(box, cur));
    int i = 0;
    while (i < d && cur[i] == hi[i]) {
      cur[i] = lo[i];
      ++i;
    }
    if (i == d) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

DisplacementClasses::iterator::iterator(const BoxSpec& box) : dim_(box.dim()), side_(box.side()), done_(false) {
  // Lexicographic successor of the zero vector; every later vector in
  // lexicographic order is positive.
  current_.displacement.assign(static_cast<std::size_t>(dim_), 0);
  current_.displacement.back() = 1;
  refresh();
}

DisplacementClasses::iterator& DisplacementClasses::iterator::operator++() {
  auto& v = current_.displacement;
  int i = dim_ - 1;
  while (i >= 0 && v[i] == side_) {
    v[i] = -side_;
    --i;
  }
  if (i < 0) {
    done_ = true;
    return *this;
  }
  ++v[i];
  refresh();
  return *this;
}

void DisplacementClasses::iterator::refresh() {
  current_.norm = 0;
  current_.pair_count = 1;
  for (Coord c : current_.displacement) {
    const std::int64_t a = std::abs(c);
    current_.norm += a;
    current_.pair_count *= static_cast<std::uint64_t>(side_ + 1 - a);
  }
}

std::pair<SiteIndex, SiteIndex> class_pair(const BoxSpec& box, const DisplacementClass& cls, std::uint64_t slot) {
  const auto base = static_cast<SiteIndex>(box.side()) + 1;
  SiteIndex from = 0;
  SiteIndex to = 0;
  SiteIndex stride = 1;
  for (int i = 0; i < box.dim(); ++i) {
    const Coord v = cls.displacement[i];
    const auto extent = static_cast<std::uint64_t>(box.side() + 1 - std::abs(v));
    const Coord x = static_cast<Coord>(slot % extent) + std::max<Coord>(0, -v);
    slot /= extent;
    from += static_cast<SiteIndex>(x) * stride;
    to += static_cast<SiteIndex>(x + v) * stride;
    stride *= base;
  }
  return {from, to};
}

}  // namespace lrp
