#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "twistkit/errors.hpp"
#include "twistkit/geometry.hpp"
#include "twistkit/numbers.hpp"
#include "twistkit/tiling.hpp"

namespace twistkit {

namespace detail {
inline std::pair<Axis, int> axis_sign(Vec3 u) {
  for (Axis a : kAxes)
    for (int s : {1, -1})
      if (u == s * unit(a)) return {a, s};
  throw DomainError("direction must be a signed axis unit vector");
}
}  // namespace detail

// True when some cell of d1 sits strictly beyond a cell of d0 along u in the
// same lattice column, i.e. d1 meets the open swept shadow of d0.
inline bool meets_shade(const Domino& d0, const Domino& d1, Vec3 u) {
  auto [a, s] = detail::axis_sign(u);
  for (Cell c1 : {d1.a, d1.b})
    for (Cell c0 : {d0.a, d0.b}) {
      Cell lifted = with_comp(c0, a, comp(c1, a));
      if (lifted == c1 && s * (comp(c1, a) - comp(c0, a)) >= 1) return true;
    }
  return false;
}

// Signed interaction of an ordered domino pair along u; one of 0, 1/4, -1/4.
// Vanishes unless the second domino meets the first one's shadow and the
// three vectors dir(d1), dir(d0), u are linearly independent.
inline Rat effect(const Domino& d0, const Domino& d1, Vec3 u) {
  detail::axis_sign(u);  // validate
  int det = det3(dir(d1), dir(d0), u);
  if (det == 0 || !meets_shade(d0, d1, u)) return Rat(0);
  return Rat(det, 4);
}

// Reference implementation: sum of effect() over all ordered pairs.
inline Rat pretwist_allpairs(const Tiling& t, Vec3 u) {
  std::vector<Domino> ds = t.dominoes();
  Rat sum(0);
  for (const Domino& d0 : ds)
    for (const Domino& d1 : ds)
      if (!(d0 == d1)) sum += effect(d0, d1, u);
  return sum;
}

// Same value in O(n log n): bucket domino cells by lattice column along u and
// sweep each column from shadow-source to shadow-target, accumulating
// det(v(upper), sum of v(lower), u) by bilinearity.  Non-parallel dominoes
// share at most one column, so each interacting pair is counted exactly once.
inline Rat pretwist(const Tiling& t, Vec3 u) {
  auto [axis, s] = detail::axis_sign(u);
  struct Entry {
    int level;
    Vec3 v;
  };
  std::map<std::pair<int, int>, std::vector<Entry>> columns;
  Axis p1 = axis == Axis::X ? Axis::Y : Axis::X;
  Axis p2 = axis == Axis::Z ? Axis::Y : Axis::Z;
  for (const Domino& d : t.dominoes()) {
    if (d.axis() == axis) continue;  // parallel to u: inert in either role
    Vec3 v = dir(d);
    for (Cell c : {d.a, d.b})
      columns[{comp(c, p1), comp(c, p2)}].push_back({s * comp(c, axis), v});
  }
  long long quarters = 0;
  Vec3 lower_sum;
  for (auto& [key, entries] : columns) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.level < b.level; });
    lower_sum = {0, 0, 0};
    for (const Entry& e : entries) {
      quarters += det3(e.v, lower_sum, u);
      lower_sum = lower_sum + e.v;
    }
  }
  return Rat(quarters, 4);
}

// The common value of the three axis pretwists on a cylinder; checked to be
// equal and integral, which is a theorem for cylinders — a mismatch means a
// bug, not bad input.
inline long long twist(const Tiling& t) {
  const Classification& c = t.region().classify();
  bool cylinder = false;
  for (Axis a : kAxes) cylinder = cylinder || c.along(a).cylinder;
  if (!cylinder) throw DomainError("twist requires a cylinder region");
  Rat x = pretwist(t, unit(Axis::X));
  Rat y = pretwist(t, unit(Axis::Y));
  Rat z = pretwist(t, unit(Axis::Z));
  if (x != y || y != z || !is_integer(x))
    throw InternalError("axis pretwists disagree on a cylinder");
  return to_integer(x);
}

// Balance predicate under which flips preserve pretwists and positive trits
// add one: every 2x2 flat square contained in the region splits the region's
// cells in its infinite 2x2 column into two color-balanced halves.
inline bool is_fully_balanced_along(const Region& r, Vec3 u) {
  auto [axis, s] = detail::axis_sign(u);
  (void)s;
  Axis p1 = axis == Axis::X ? Axis::Y : Axis::X;
  Axis p2 = axis == Axis::Z ? Axis::Y : Axis::Z;
  Cell lo = r.bbox_lo(), hi = r.bbox_hi();
  auto cell_at = [&](int a1, int a2, int level) {
    Cell c{};
    c = with_comp(c, p1, a1);
    c = with_comp(c, p2, a2);
    return with_comp(c, axis, level);
  };
  for (int a1 = comp(lo, p1) - 1; a1 <= comp(hi, p1); ++a1)
    for (int a2 = comp(lo, p2) - 1; a2 <= comp(hi, p2); ++a2)
      for (int h = comp(lo, axis); h <= comp(hi, axis) + 1; ++h) {
        // A flat square is inside the region iff each of its four unit
        // squares has a region cell on at least one side.
        bool contained = true;
        for (int i = 0; i < 2 && contained; ++i)
          for (int j = 0; j < 2 && contained; ++j)
            contained = r.contains(cell_at(a1 + i, a2 + j, h)) ||
                        r.contains(cell_at(a1 + i, a2 + j, h - 1));
        if (!contained) continue;
        int above = 0, below = 0;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int lvl = comp(lo, axis); lvl <= comp(hi, axis); ++lvl) {
              Cell c = cell_at(a1 + i, a2 + j, lvl);
              if (!r.contains(c)) continue;
              (lvl >= h ? above : below) += color(c);
            }
        if (above != 0 || below != 0) return false;
      }
  return true;
}

inline bool is_fully_balanced(const Region& r) {
  for (Axis a : kAxes)
    if (!is_fully_balanced_along(r, unit(a))) return false;
  return true;
}

// Mirror image across the plane x = 0, y = 0 or z = 0.
inline Tiling reflected(const Tiling& t, Axis a) {
  auto flip = [&](Cell c) { return with_comp(c, a, -comp(c, a)); };
  std::vector<Cell> cells;
  for (const Cell& c : t.region().cells()) cells.push_back(flip(c));
  auto region = std::make_shared<Region>(std::move(cells));
  std::vector<int> partner(region->size());
  for (int i = 0; i < (int)t.region().size(); ++i) {
    Cell c = t.region().cell(i);
    Cell p = t.region().cell(t.partner(i));
    partner[(size_t)region->index_of(flip(c))] = region->index_of(flip(p));
  }
  return Tiling(std::move(region), std::move(partner));
}

}  // namespace twistkit
