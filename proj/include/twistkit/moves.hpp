#pragma once

#include <array>
#include <optional>
#include <vector>

#include "twistkit/effects.hpp"
#include "twistkit/errors.hpp"
#include "twistkit/tiling.hpp"

namespace twistkit {

// Exchange of two parallel dominoes filling a 2x2x1 slab for the orthogonal
// pair on the same four cells.
struct FlipMove {
  std::array<Domino, 2> removed;
  std::array<Domino, 2> placed;

  friend bool operator==(const FlipMove& a, const FlipMove& b) {
    return a.removed == b.removed && a.placed == b.placed;
  }
};

// Exchange of three pairwise-orthogonal dominoes inside a 2x2x2 window for
// the only other triple covering the same six cells.  The sign is intrinsic
// to the two placements: +1 raises every axis pretwist by one on balanced
// regions, -1 lowers it.
struct TritMove {
  std::array<Domino, 3> removed;
  std::array<Domino, 3> placed;
  int sign = 0;

  friend bool operator==(const TritMove& a, const TritMove& b) {
    return a.removed == b.removed && a.placed == b.placed;
  }
};

namespace detail {

// Net in-window interaction sum along u of a domino triple.
inline Rat local_sum(const std::array<Domino, 3>& ds, Vec3 u) {
  Rat s(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) s += effect(ds[i], ds[j], u);
  return s;
}

}  // namespace detail

// Chirality of a trit from its before/after triples alone: the in-window
// interaction sum shifts by +1/2 (positive) or -1/2 (negative), identically
// along all three axes.  Anything else means the triples are not a trit.
inline int trit_sign(const std::array<Domino, 3>& before,
                     const std::array<Domino, 3>& after) {
  std::optional<Rat> delta;
  for (Axis a : kAxes) {
    Rat d = detail::local_sum(after, unit(a)) - detail::local_sum(before, unit(a));
    if (delta && d != *delta)
      throw InternalError("trit chirality differs between axes");
    delta = d;
  }
  if (*delta == Rat(1, 2)) return 1;
  if (*delta == Rat(-1, 2)) return -1;
  throw InternalError("trit chirality is not a half-integer step");
}

inline std::vector<FlipMove> list_flips(const Tiling& t) {
  const Region& r = t.region();
  std::vector<FlipMove> out;
  // Slabs are 2x2x1 windows: pick the two spanned axes, then the window
  // position; a slab flips iff two dominoes of t lie entirely inside it.
  const std::array<std::pair<Axis, Axis>, 3> planes = {
      {{Axis::X, Axis::Y}, {Axis::X, Axis::Z}, {Axis::Y, Axis::Z}}};
  Cell lo = r.bbox_lo(), hi = r.bbox_hi();
  for (auto [a1, a2] : planes) {
    for (int x = lo.x; x <= hi.x; ++x)
      for (int y = lo.y; y <= hi.y; ++y)
        for (int z = lo.z; z <= hi.z; ++z) {
          Cell base{x, y, z};
          std::array<Cell, 4> cells = {base, base + unit(a1), base + unit(a2),
                                       base + unit(a1) + unit(a2)};
          // The two dominoes covering the slab, if the slab is self-contained.
          bool ok = true;
          std::vector<Domino> inside;
          for (const Cell& c : cells) {
            if (!r.contains(c)) {
              ok = false;
              break;
            }
            Domino d = t.domino_at(c);
            Cell other = d.a == c ? d.b : d.a;
            bool other_in = false;
            for (const Cell& c2 : cells) other_in = other_in || c2 == other;
            if (!other_in) {
              ok = false;
              break;
            }
            if (std::find(inside.begin(), inside.end(), d) == inside.end())
              inside.push_back(d);
          }
          if (!ok || inside.size() != 2) continue;
          // The only other partition of a 2x2 block: pair along the other axis.
          std::array<Domino, 2> placed =
              inside[0].axis() == a1
                  ? std::array<Domino, 2>{Domino(cells[0], cells[2]),
                                          Domino(cells[1], cells[3])}
                  : std::array<Domino, 2>{Domino(cells[0], cells[1]),
                                          Domino(cells[2], cells[3])};
          out.push_back(FlipMove{{inside[0], inside[1]}, placed});
        }
  }
  return out;
}

namespace detail {

inline bool in_tiling(const Tiling& t, const Domino& d) {
  int i = t.region().index_of(d.a);
  return i >= 0 && t.region().cell(t.partner(i)) == d.b;
}

// All partitions of a small cell set into dominoes.
inline void domino_partitions(std::vector<Cell> cells,
                              std::vector<std::vector<Domino>>& out) {
  std::sort(cells.begin(), cells.end(), CanonLess{});
  std::vector<Domino> acc;
  std::vector<char> used(cells.size(), 0);
  std::function<void(size_t)> go = [&](size_t first) {
    while (first < cells.size() && used[first]) first++;
    if (first == cells.size()) {
      out.push_back(acc);
      return;
    }
    used[first] = 1;
    for (size_t j = first + 1; j < cells.size(); ++j) {
      if (used[j]) continue;
      Cell d = cells[j];
      Cell c = cells[first];
      if (std::abs(c.x - d.x) + std::abs(c.y - d.y) + std::abs(c.z - d.z) != 1) continue;
      used[j] = 1;
      acc.push_back(Domino(c, d));
      go(first + 1);
      acc.pop_back();
      used[j] = 0;
    }
    used[first] = 0;
  };
  go(0);
}

}  // namespace detail

inline std::vector<TritMove> list_trits(const Tiling& t) {
  const Region& r = t.region();
  std::vector<TritMove> out;
  Cell lo = r.bbox_lo(), hi = r.bbox_hi();
  for (int x = lo.x; x < hi.x; ++x)
    for (int y = lo.y; y < hi.y; ++y)
      for (int z = lo.z; z < hi.z; ++z) {
        std::vector<Domino> inside;
        bool bad = false;
        for (int i = 0; i < 2 && !bad; ++i)
          for (int j = 0; j < 2 && !bad; ++j)
            for (int k = 0; k < 2 && !bad; ++k) {
              Cell c{x + i, y + j, z + k};
              if (!r.contains(c)) continue;
              Domino d = t.domino_at(c);
              Cell other = d.a == c ? d.b : d.a;
              if (other.x < x || other.x > x + 1 || other.y < y || other.y > y + 1 ||
                  other.z < z || other.z > z + 1)
                continue;  // crosses the window boundary; not ours
              if (std::find(inside.begin(), inside.end(), d) == inside.end()) {
                inside.push_back(d);
                if (inside.size() > 3) bad = true;
              }
            }
        if (bad || inside.size() != 3) continue;
        if (inside[0].axis() == inside[1].axis() || inside[0].axis() == inside[2].axis() ||
            inside[1].axis() == inside[2].axis())
          continue;
        std::vector<Cell> covered;
        for (const Domino& d : inside) {
          covered.push_back(d.a);
          covered.push_back(d.b);
        }
        std::vector<std::vector<Domino>> parts;
        detail::domino_partitions(covered, parts);
        if (parts.size() != 2)
          throw InternalError("trit window does not have exactly two placements");
        std::sort(inside.begin(), inside.end());
        std::array<Domino, 3> removed = {inside[0], inside[1], inside[2]};
        const std::vector<Domino>* other = nullptr;
        for (auto& p : parts) {
          std::sort(p.begin(), p.end());
          if (!std::equal(p.begin(), p.end(), inside.begin())) other = &p;
        }
        if (!other) throw InternalError("trit placements coincide");
        std::array<Domino, 3> placed = {(*other)[0], (*other)[1], (*other)[2]};
        out.push_back(TritMove{removed, placed, trit_sign(removed, placed)});
      }
  return out;
}

inline Tiling apply_flip(const Tiling& t, const FlipMove& m) {
  for (const Domino& d : m.removed)
    if (!detail::in_tiling(t, d)) throw MoveError("flip dominoes not present in tiling");
  std::vector<Cell> removed_cells, placed_cells;
  for (const Domino& d : m.removed) {
    removed_cells.push_back(d.a);
    removed_cells.push_back(d.b);
  }
  for (const Domino& d : m.placed) {
    placed_cells.push_back(d.a);
    placed_cells.push_back(d.b);
  }
  std::sort(removed_cells.begin(), removed_cells.end(), CanonLess{});
  std::sort(placed_cells.begin(), placed_cells.end(), CanonLess{});
  if (removed_cells != placed_cells ||
      std::adjacent_find(placed_cells.begin(), placed_cells.end()) != placed_cells.end())
    throw MoveError("flip replacement does not cover the same cells");
  if (m.removed[0].axis() != m.removed[1].axis() ||
      m.placed[0].axis() != m.placed[1].axis() ||
      m.removed[0].axis() == m.placed[0].axis())
    throw MoveError("flip pairs must be parallel and mutually orthogonal");
  std::vector<int> partner = t.partners();
  for (const Domino& d : m.placed) {
    int i = t.region().index_of(d.a), j = t.region().index_of(d.b);
    partner[(size_t)i] = j;
    partner[(size_t)j] = i;
  }
  return Tiling(t.region_ptr(), std::move(partner));
}

inline Tiling apply_trit(const Tiling& t, const TritMove& m) {
  for (const Domino& d : m.removed)
    if (!detail::in_tiling(t, d)) throw MoveError("trit dominoes not present in tiling");
  std::vector<Cell> removed_cells, placed_cells;
  for (const Domino& d : m.removed) {
    removed_cells.push_back(d.a);
    removed_cells.push_back(d.b);
  }
  for (const Domino& d : m.placed) {
    placed_cells.push_back(d.a);
    placed_cells.push_back(d.b);
  }
  std::sort(removed_cells.begin(), removed_cells.end(), CanonLess{});
  std::sort(placed_cells.begin(), placed_cells.end(), CanonLess{});
  if (removed_cells != placed_cells ||
      std::adjacent_find(placed_cells.begin(), placed_cells.end()) != placed_cells.end())
    throw MoveError("trit replacement does not cover the same cells");
  for (const auto& triple : {m.removed, m.placed})
    if (triple[0].axis() == triple[1].axis() || triple[0].axis() == triple[2].axis() ||
        triple[1].axis() == triple[2].axis())
      throw MoveError("trit triples must be pairwise non-parallel");
  Cell w0 = removed_cells.front(), w1 = w0;
  for (const Cell& c : removed_cells) {
    w0 = {std::min(w0.x, c.x), std::min(w0.y, c.y), std::min(w0.z, c.z)};
    w1 = {std::max(w1.x, c.x), std::max(w1.y, c.y), std::max(w1.z, c.z)};
  }
  if (w1.x - w0.x > 1 || w1.y - w0.y > 1 || w1.z - w0.z > 1)
    throw MoveError("trit cells must fit a 2x2x2 window");
  std::vector<int> partner = t.partners();
  for (const Domino& d : m.placed) {
    int i = t.region().index_of(d.a), j = t.region().index_of(d.b);
    partner[(size_t)i] = j;
    partner[(size_t)j] = i;
  }
  return Tiling(t.region_ptr(), std::move(partner));
}

// The reverse move, for walking move sequences backwards.
inline FlipMove inverse(const FlipMove& m) { return {m.placed, m.removed}; }
inline TritMove inverse(const TritMove& m) { return {m.placed, m.removed, -m.sign}; }

}  // namespace twistkit
