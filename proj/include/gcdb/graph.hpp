#pragma once

// The unit-distance graph on b-visible points: visibility bitmaps over
// rectangular windows, neighbor statistics against the 4/zeta(b+1) target,
// connected components, and lonesome-point search.
//
// Graph edges use the 4-neighborhood; lonesomeness uses the 8-neighborhood.
// Both radii stay explicit so the two notions never blur into each other.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gcdb/lattice_stats.hpp"
#include "gcdb/patterns.hpp"

namespace gcdb {

struct Rect {
  int64_t r_lo = 1, r_hi = 1, s_lo = 1, s_hi = 1;  // inclusive
  int64_t width() const { return r_hi - r_lo + 1; }
  int64_t height() const { return s_hi - s_lo + 1; }
  int64_t area() const { return width() * height(); }
};

// Visibility over a window, built by marking: row r is invisible at every s
// divisible by q^b for a prime q | r.  Rows are owned by single workers, so
// parallel construction is race-free and the bits are identical for any
// worker count.
class VisibilityBitmap {
 public:
  VisibilityBitmap(int b, Rect rect, int workers = 1) : b_(b), rect_(rect) {
    if (b < 1) throw std::invalid_argument("VisibilityBitmap: b >= 1 required");
    if (rect.r_lo < 1 || rect.s_lo < 1 || rect.r_hi < rect.r_lo || rect.s_hi < rect.s_lo)
      throw std::invalid_argument("VisibilityBitmap: window must sit inside the lattice");
    row_words_ = (rect.width() + 63) / 64;
    bits_.assign(static_cast<size_t>(row_words_ * rect.height()), ~uint64_t{0});
    parallel_block_reduce<int>(
        rect.s_lo, rect.s_hi + 1, 64, workers, 0,
        [&](int64_t lo, int64_t hi) {
          for (int64_t s = lo; s < hi; ++s) build_row(s);
          return 0;
        },
        [](int a, int) { return a; });
  }

  int b() const { return b_; }
  const Rect& window() const { return rect_; }

  bool visible(int64_t r, int64_t s) const {
    const size_t word = index_word(r, s);
    return (bits_[word] >> ((r - rect_.r_lo) & 63)) & 1;
  }

  bool contains(int64_t r, int64_t s) const {
    return r >= rect_.r_lo && r <= rect_.r_hi && s >= rect_.s_lo && s <= rect_.s_hi;
  }

  int64_t visible_count() const {
    int64_t acc = 0;
    for (int64_t s = rect_.s_lo; s <= rect_.s_hi; ++s)
      for (int64_t r = rect_.r_lo; r <= rect_.r_hi; ++r) acc += visible(r, s);
    return acc;
  }

 private:
  // invisible(r, s) iff some prime q has q | r and q^b | s; for fixed s,
  // mark the r-multiples of every prime whose b-th power divides s.
  void build_row(int64_t s) {
    for (auto [q, e] : factorize_u64(static_cast<uint64_t>(s))) {
      if (e < b_) continue;  // q^b cannot divide s
      const int64_t qi = static_cast<int64_t>(q);
      int64_t first = ((rect_.r_lo + qi - 1) / qi) * qi;
      for (int64_t r = first; r <= rect_.r_hi; r += qi) clear_bit(r, s);
    }
  }

  size_t index_word(int64_t r, int64_t s) const {
    return static_cast<size_t>((s - rect_.s_lo) * row_words_ + ((r - rect_.r_lo) >> 6));
  }

  void clear_bit(int64_t r, int64_t s) {
    bits_[index_word(r, s)] &= ~(uint64_t{1} << ((r - rect_.r_lo) & 63));
  }

  int b_;
  Rect rect_;
  int64_t row_words_ = 0;
  std::vector<uint64_t> bits_;
};

// Count of b-visible 4-neighbors; neighbors with a zero coordinate simply
// do not exist.
inline int visible_neighbor_count(const LatticePoint& p, int b) {
  if (p.r < 1 || p.s < 1) throw std::domain_error("visible_neighbor_count: point outside L");
  int count = 0;
  const int64_t dr[4] = {-1, 1, 0, 0};
  const int64_t ds[4] = {0, 0, -1, 1};
  for (int i = 0; i < 4; ++i) {
    const int64_t nr = p.r + dr[i];
    const int64_t ns = p.s + ds[i];
    if (nr < 1 || ns < 1) continue;
    count += is_b_visible(nr, ns, b);
  }
  return count;
}

// Mean of visible_neighbor_count over T_N against 4/zeta(b+1).  Neighbors
// one step past the window edge are real lattice points and are counted;
// the bitmap extends to N+1 for that reason.
inline WindowStats mean_connectivity_estimate(int b, int64_t n, int workers = 1) {
  if (n < 3) throw std::invalid_argument("mean_connectivity_estimate: N >= 3 required");
  const VisibilityBitmap vis(b, Rect{1, n + 1, 1, n + 1}, workers);
  const long long total = parallel_block_reduce<long long>(
      1, n + 1, 64, workers, 0,
      [&](int64_t lo, int64_t hi) {
        long long acc = 0;
        for (int64_t s = lo; s < hi; ++s) {
          for (int64_t r = 1; r <= n; ++r) {
            if (r > 1) acc += vis.visible(r - 1, s);
            acc += vis.visible(r + 1, s);
            if (s > 1) acc += vis.visible(r, s - 1);
            acc += vis.visible(r, s + 1);
          }
        }
        return acc;
      },
      [](long long a, long long p) { return a + p; });
  const double estimate = static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n));
  const double target = 4.0 / zeta(static_cast<double>(b) + 1.0).value;
  return make_window_stats("mean_connectivity", b, n, 0, total, estimate, target);
}

struct ComponentStats {
  Rect window;
  int64_t visible_count = 0;
  int64_t component_count = 0;
  int64_t largest_size = 0;
  double largest_over_area = 0;
  double largest_over_visible = 0;
  bool largest_touches_boundary = false;
  int64_t boundary_component_count = 0;  // may merge with the outside
  std::map<int64_t, int64_t> size_histogram;
};

// Union-find labeling over the visibility bitmap, scanned in row-major
// order; labels and all counts are independent of worker count because the
// scan is single-threaded by design (windows parallelize, not this).
inline ComponentStats components(const VisibilityBitmap& vis) {
  const Rect w = vis.window();
  const int64_t width = w.width();
  const int64_t area = w.area();
  std::vector<int32_t> parent(static_cast<size_t>(area), -1);

  auto find = [&](int32_t x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };

  for (int64_t s = w.s_lo; s <= w.s_hi; ++s) {
    for (int64_t r = w.r_lo; r <= w.r_hi; ++r) {
      if (!vis.visible(r, s)) continue;
      const int32_t idx = static_cast<int32_t>((s - w.s_lo) * width + (r - w.r_lo));
      parent[static_cast<size_t>(idx)] = idx;
      if (r > w.r_lo && vis.visible(r - 1, s)) {
        const int32_t a = find(idx), bb = find(idx - 1);
        if (a != bb) parent[static_cast<size_t>(a)] = bb;
      }
      if (s > w.s_lo && vis.visible(r, s - 1)) {
        const int32_t a = find(idx), bb = find(static_cast<int32_t>(idx - width));
        if (a != bb) parent[static_cast<size_t>(a)] = bb;
      }
    }
  }

  std::map<int32_t, int64_t> sizes;
  std::map<int32_t, bool> touches;
  for (int64_t s = w.s_lo; s <= w.s_hi; ++s) {
    for (int64_t r = w.r_lo; r <= w.r_hi; ++r) {
      const int32_t idx = static_cast<int32_t>((s - w.s_lo) * width + (r - w.r_lo));
      if (parent[static_cast<size_t>(idx)] < 0) continue;
      const int32_t root = find(idx);
      ++sizes[root];
      if (r == w.r_lo || r == w.r_hi || s == w.s_lo || s == w.s_hi) touches[root] = true;
    }
  }

  ComponentStats out;
  out.window = w;
  int32_t largest_root = -1;
  for (const auto& [root, size] : sizes) {
    out.visible_count += size;
    ++out.component_count;
    ++out.size_histogram[size];
    if (touches.count(root)) ++out.boundary_component_count;
    if (size > out.largest_size) {
      out.largest_size = size;
      largest_root = root;
    }
  }
  out.largest_over_area = static_cast<double>(out.largest_size) / static_cast<double>(area);
  out.largest_over_visible =
      out.visible_count ? static_cast<double>(out.largest_size) / static_cast<double>(out.visible_count)
                        : 0.0;
  out.largest_touches_boundary = largest_root >= 0 && touches.count(largest_root) > 0;
  return out;
}

inline ComponentStats components(int b, Rect window, int workers = 1) {
  return components(VisibilityBitmap(b, window, workers));
}

// Row-major component labels: 0 for invisible cells, components numbered
// from 1 in order of first appearance.  Feeds the PGM dump.
inline std::vector<int32_t> component_labels(const VisibilityBitmap& vis) {
  const Rect w = vis.window();
  const int64_t width = w.width();
  std::vector<int32_t> parent(static_cast<size_t>(w.area()), -1);
  auto find = [&](int32_t x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (int64_t s = w.s_lo; s <= w.s_hi; ++s) {
    for (int64_t r = w.r_lo; r <= w.r_hi; ++r) {
      if (!vis.visible(r, s)) continue;
      const int32_t idx = static_cast<int32_t>((s - w.s_lo) * width + (r - w.r_lo));
      parent[static_cast<size_t>(idx)] = idx;
      if (r > w.r_lo && vis.visible(r - 1, s)) {
        const int32_t a = find(idx), c = find(idx - 1);
        if (a != c) parent[static_cast<size_t>(a)] = c;
      }
      if (s > w.s_lo && vis.visible(r, s - 1)) {
        const int32_t a = find(idx), c = find(static_cast<int32_t>(idx - width));
        if (a != c) parent[static_cast<size_t>(a)] = c;
      }
    }
  }
  std::vector<int32_t> labels(static_cast<size_t>(w.area()), 0);
  std::map<int32_t, int32_t> numbered;
  for (int64_t i = 0; i < w.area(); ++i) {
    if (parent[static_cast<size_t>(i)] < 0) continue;
    const int32_t root = find(static_cast<int32_t>(i));
    auto [it, fresh] = numbered.emplace(root, static_cast<int32_t>(numbered.size()) + 1);
    labels[static_cast<size_t>(i)] = it->second;
  }
  return labels;
}

struct DensityTrendRow {
  int64_t n = 0;
  double largest_density = 0;
  double largest_over_visible = 0;
};

// Largest-component share of T_N.  At b = 1 the values sit near Vardi's
// experimental theta ~ 0.58368 with largest/visible ~ 0.96; for b > 1 no
// published target exists, so callers get the trend and judge it themselves.
inline DensityTrendRow largest_component_density(int b, int64_t n, int workers = 1) {
  if (n < 2) throw std::invalid_argument("largest_component_density: N >= 2 required");
  const auto stats = components(b, Rect{1, n, 1, n}, workers);
  return {n, stats.largest_over_area, stats.largest_over_visible};
}

inline std::vector<DensityTrendRow> largest_component_trend(int b,
                                                            const std::vector<int64_t>& schedule,
                                                            int workers = 1) {
  std::vector<DensityTrendRow> out;
  out.reserve(schedule.size());
  for (int64_t n : schedule) out.push_back(largest_component_density(b, n, workers));
  return out;
}

// The 8 surrounding offsets in lexicographic (di, dj) order.
inline constexpr std::pair<int, int> kRingOffsets[8] = {
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}};

struct LonesomeScanResult {
  bool found = false;
  LatticePoint point;
  std::array<int64_t, 8> neighbor_gcd{};  // gcd_b of the ring, offset order as above
};

// Row-major scan for a b-visible point whose 8 surrounding neighbors are all
// b-invisible.  Centers need the full ring inside L, so coordinates start
// at 2.  A miss is a recorded outcome, not an error: existence is only
// guaranteed in the limit.
inline LonesomeScanResult find_lonesome_scan(int b, Rect window, int workers = 1) {
  Rect padded{std::max<int64_t>(1, window.r_lo - 1), window.r_hi + 1,
              std::max<int64_t>(1, window.s_lo - 1), window.s_hi + 1};
  const VisibilityBitmap vis(b, padded, workers);
  for (int64_t s = std::max<int64_t>(2, window.s_lo); s <= window.s_hi; ++s) {
    for (int64_t r = std::max<int64_t>(2, window.r_lo); r <= window.r_hi; ++r) {
      if (!vis.visible(r, s)) continue;
      bool lonesome = true;
      for (const auto& [di, dj] : kRingOffsets) {
        if (vis.visible(r + di, s + dj)) {
          lonesome = false;
          break;
        }
      }
      if (!lonesome) continue;
      LonesomeScanResult out;
      out.found = true;
      out.point = {r, s};
      for (int i = 0; i < 8; ++i)
        out.neighbor_gcd[static_cast<size_t>(i)] =
            gcd_b(r + kRingOffsets[i].first, s + kRingOffsets[i].second, b);
      return out;
    }
  }
  return {};
}

struct LonesomeConstructResult {
  BigInt r;
  BigInt s;
  Realization realization;
  VerifyReport verify;
};

// CRT route: realize the ring pattern and read off its center.  The verify
// report covers the center circle and the full ring of crosses.
inline LonesomeConstructResult find_lonesome_construct(int b, const RealizeOptions& opt = {}) {
  const BPattern pat = ring_pattern(b);
  Realization real = realize(pat, opt);
  LonesomeConstructResult out{real.u + 2, real.v + (pat.h + 1) / 2, std::move(real), {}};
  out.verify = verify_realization(pat, out.realization.u, out.realization.v,
                                  &out.realization.prov);
  return out;
}

}  // namespace gcdb
