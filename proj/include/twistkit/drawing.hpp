// Plane picture of a two-floor tiling and its Laurent invariant.
//
// Project each domino onto the base plane of the two floors.  A domino lying
// inside one floor becomes a unit edge oriented from its white cell to its
// black cell; a domino standing across both floors becomes a jewel: a single
// marked square keeping the square's own color.  Because floor-0 edges enter
// dark squares and floor-1 edges leave them, the edges always close up into
// disjoint oriented cycles -- except where a floor is missing a cell, which
// leaves an open path.  Open paths are completed by ghost curves: fixed
// auxiliary polylines, chosen once per region, that connect loose ends while
// staying clear of every square common to both floors.
//
// The invariant of a tiling is P(q) = sum over jewels j of color(j) *
// q^(winding of all cycles around j).  Winding numbers here are screen
// oriented: a cycle drawn clockwise in mathematical axes winds +1, matching
// the sign the interaction sums produce, so P'(1) reproduces the twist.

#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "twistkit/errors.hpp"
#include "twistkit/geometry.hpp"
#include "twistkit/laurent.hpp"
#include "twistkit/numbers.hpp"
#include "twistkit/region.hpp"
#include "twistkit/tiling.hpp"

namespace twistkit {

struct Drawing {
  std::vector<std::vector<Sq>> cycles;  // closed; consecutive squares adjacent
  std::vector<std::vector<Sq>> paths;   // open; run along the edge orientation
  std::vector<std::pair<Sq, int>> jewels;  // square and its color
};

struct GhostRouting {
  std::vector<std::pair<Sq, Sq>> pairs;  // (source, sink) in scan order
  std::vector<std::vector<Sq>> curves;   // polyline per pair, source first
};

namespace detail {

// Coordinate frame of a two-story region: an orientation-preserving relabeling
// that puts the story axis third, plus the offset of the lower floor.  Square
// coordinates come from the cyclic rotations (x,y,z) -> (y,z,x) -> (z,x,y),
// never from a swap, so drawings keep their handedness for every axis.
struct Floorplan {
  Axis axis;
  int lo;

  Sq sq(const Cell& c) const {
    switch (axis) {
      case Axis::Z: return {c.x, c.y};
      case Axis::X: return {c.y, c.z};
      default: return {c.z, c.x};
    }
  }
  int floor_of(const Cell& c) const { return comp(c, axis) - lo; }
  // Cell color with the lower floor shifted to height zero, so that equal
  // tilings at different heights draw identically.
  bool cell_dark(Sq s, int f) const { return ((s.x + s.y + f) & 1) != 0; }
};

inline Floorplan floorplan(const Region& r) {
  const Classification& cls = r.classify();
  if (!cls.two_story_axis)
    throw DomainError("region is not two floors with simply connected floors");
  return {*cls.two_story_axis, cls.two_story_lo};
}

// Winding of a closed unit-step polyline around the point (x2/2, y2/2) in
// doubled coordinates; y2 must be odd so the probe ray at that height misses
// every vertex.  Positive when the curve crosses the ray heading toward -y.
inline int winding_half(const std::vector<Sq>& cycle, int x2, int y2) {
  int w = 0;
  size_t n = cycle.size();
  for (size_t i = 0; i < n; ++i) {
    const Sq& a = cycle[i];
    const Sq& b = cycle[(i + 1) % n];
    if (a.x != b.x) continue;     // horizontal edges never cross the ray
    if (2 * a.x <= x2) continue;  // only edges strictly to the right count
    int ylo = std::min(a.y, b.y), yhi = std::max(a.y, b.y);
    if (2 * ylo < y2 && y2 < 2 * yhi) w += b.y < a.y ? 1 : -1;
  }
  return w;
}

}  // namespace detail

inline int winding(const std::vector<Sq>& cycle, Sq p) {
  for (const Sq& v : cycle)
    if (v == p) throw DomainError("winding undefined for a point on the curve");
  return detail::winding_half(cycle, 2 * p.x, 2 * p.y + 1);
}

inline Drawing drawing(const Tiling& t) {
  const Region& r = t.region();
  detail::Floorplan fp = detail::floorplan(r);

  Drawing d;
  std::map<Sq, Sq> next, prev;
  for (const Domino& dom : t.dominoes()) {
    if (dom.axis() == fp.axis) {
      Sq s = fp.sq(dom.a);
      d.jewels.push_back({s, color(s)});
      continue;
    }
    Sq sa = fp.sq(dom.a), sb = fp.sq(dom.b);
    int f = fp.floor_of(dom.a);
    Sq from = fp.cell_dark(sa, f) ? sb : sa;
    Sq to = from == sa ? sb : sa;
    if (next.count(from) || prev.count(to))
      throw InternalError("projected edges collide");
    next.emplace(from, to);
    prev.emplace(to, from);
  }

  // Squares with an outgoing but no incoming edge start the open paths.
  std::set<Sq> consumed;
  for (const auto& [u, v] : next) {
    if (prev.count(u)) continue;
    std::vector<Sq> path = {u};
    for (Sq w = v;; w = next.at(w)) {
      path.push_back(w);
      consumed.insert(w);
      if (!next.count(w)) break;
    }
    consumed.insert(u);
    d.paths.push_back(std::move(path));
  }
  // Everything else closes up into cycles; rotate each so its scan-least
  // square comes first.
  for (const auto& [u, v] : next) {
    if (consumed.count(u)) continue;
    std::vector<Sq> cyc = {u};
    consumed.insert(u);
    for (Sq w = v; w != u; w = next.at(w)) {
      cyc.push_back(w);
      consumed.insert(w);
    }
    std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
    d.cycles.push_back(std::move(cyc));
  }

  std::sort(d.cycles.begin(), d.cycles.end());
  std::sort(d.paths.begin(), d.paths.end());
  std::sort(d.jewels.begin(), d.jewels.end());
  return d;
}

inline GhostRouting route_ghosts(const Region& r) {
  detail::Floorplan fp = detail::floorplan(r);

  std::map<Sq, int> floors;  // bit f set when floor f holds the square's cell
  for (const Cell& c : r.cells()) floors[fp.sq(c)] |= 1 << fp.floor_of(c);

  // A square present in only one floor is a loose end: an edge must enter it
  // (missing cell light -> source of a ghost curve) or leave it (missing cell
  // dark -> sink).
  std::vector<Sq> sources, sinks;
  for (const auto& [s, mask] : floors) {
    if (mask == 3) continue;
    int missing = mask == 1 ? 1 : 0;
    (fp.cell_dark(s, missing) ? sinks : sources).push_back(s);
  }
  if (sources.size() != sinks.size())
    throw DomainError("unbalanced loose ends: region is untileable");

  GhostRouting g;
  if (sources.empty()) return g;

  // Route each curve by shortest path through squares that are not common to
  // both floors, inside the footprint box enlarged by a two-square margin.
  Sq lo = floors.begin()->first, hi = lo;
  for (const auto& [s, mask] : floors) {
    lo = {std::min(lo.x, s.x), std::min(lo.y, s.y)};
    hi = {std::max(hi.x, s.x), std::max(hi.y, s.y)};
  }
  lo = {lo.x - 2, lo.y - 2};
  hi = {hi.x + 2, hi.y + 2};
  auto open = [&](Sq s) {
    if (s.x < lo.x || s.x > hi.x || s.y < lo.y || s.y > hi.y) return false;
    auto it = floors.find(s);
    return it == floors.end() || it->second != 3;
  };

  for (size_t i = 0; i < sources.size(); ++i) {
    Sq from = sources[i], to = sinks[i];
    std::map<Sq, Sq> parent;
    std::queue<Sq> frontier;
    parent.emplace(from, from);
    frontier.push(from);
    while (!frontier.empty() && !parent.count(to)) {
      Sq c = frontier.front();
      frontier.pop();
      for (Sq n : {Sq{c.x + 1, c.y}, Sq{c.x - 1, c.y}, Sq{c.x, c.y + 1},
                   Sq{c.x, c.y - 1}}) {
        if (!open(n) || parent.count(n)) continue;
        parent.emplace(n, c);
        frontier.push(n);
      }
    }
    if (!parent.count(to))
      throw InternalError("no route for a ghost curve despite the margin");
    std::vector<Sq> curve = {to};
    while (curve.back() != from) curve.push_back(parent.at(curve.back()));
    std::reverse(curve.begin(), curve.end());
    g.pairs.emplace_back(from, to);
    g.curves.push_back(std::move(curve));
  }
  return g;
}

namespace detail {

// Close the open paths of a drawing with the given ghost curves and return
// all cycles, real and completed.
inline std::vector<std::vector<Sq>> closed_cycles(const Drawing& d,
                                                  const GhostRouting& g) {
  std::vector<std::vector<Sq>> cycles = d.cycles;
  std::map<Sq, const std::vector<Sq>*> ghost_from, path_from;
  for (const auto& c : g.curves) ghost_from[c.front()] = &c;
  for (const auto& p : d.paths) path_from[p.front()] = &p;

  std::set<Sq> used;
  for (const auto& p0 : d.paths) {
    if (used.count(p0.front())) continue;
    std::vector<Sq> cyc;
    const std::vector<Sq>* cur = &p0;
    while (true) {
      used.insert(cur->front());
      for (size_t i = cyc.empty() ? 0 : 1; i < cur->size(); ++i)
        cyc.push_back((*cur)[i]);
      auto git = ghost_from.find(cyc.back());
      if (git == ghost_from.end())
        throw InternalError("path ends at a square with no ghost curve");
      const std::vector<Sq>& ghost = *git->second;
      for (size_t i = 1; i < ghost.size(); ++i) cyc.push_back(ghost[i]);
      if (cyc.back() == cyc.front()) {
        cyc.pop_back();
        break;
      }
      auto pit = path_from.find(cyc.back());
      if (pit == path_from.end())
        throw InternalError("ghost curve ends at a square with no path");
      cur = pit->second;
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

}  // namespace detail

inline Laurent invariant_poly(const Tiling& t) {
  Drawing d = drawing(t);
  std::vector<std::vector<Sq>> cycles =
      d.paths.empty() ? std::move(d.cycles)
                      : detail::closed_cycles(d, route_ghosts(t.region()));
  Laurent p;
  for (const auto& [s, c] : d.jewels) {
    long long k = 0;
    for (const auto& cyc : cycles) k += winding(cyc, s);
    p.add_term(c, (int)k);
  }
  return p;
}

inline long long twist_from_poly(const Tiling& t) {
  return invariant_poly(t).derivative_at_one();
}

// ------------------------------------------------------------------ charges
//
// Two ways to weigh the colored squares against one cycle.  The boundary
// charge walks the cycle and scores a quarter per turn, signed, times the
// color under the corner; the interior charge sums color times topological
// weight over the whole plane.  The two must agree for every simple cycle,
// which is the bridge between the polynomial derivative and the vertical
// interaction sum.

inline void require_cycle(const std::vector<Sq>& cycle) {
  if (cycle.size() < 2) throw DomainError("cycle needs at least two squares");
  std::set<Sq> seen;
  size_t n = cycle.size();
  for (size_t i = 0; i < n; ++i) {
    if (!seen.insert(cycle[i]).second)
      throw DomainError("cycle visits a square twice");
    const Sq& a = cycle[i];
    const Sq& b = cycle[(i + 1) % n];
    if (std::abs(a.x - b.x) + std::abs(a.y - b.y) != 1)
      throw DomainError("cycle must advance one square at a time");
  }
}

// Turn taken at vertex i, in quarter laps: +1/4 for a turn that is clockwise
// in mathematical axes, -1/4 for the opposite turn, 0 straight through.  The
// strict U-turn of a trivial 2-cycle counts as a half lap.
inline Rat vertex_angle(const std::vector<Sq>& cycle, size_t i) {
  size_t n = cycle.size();
  const Sq& a = cycle[(i + n - 1) % n];
  const Sq& b = cycle[i];
  const Sq& c = cycle[(i + 1) % n];
  int ux = b.x - a.x, uy = b.y - a.y;
  int wx = c.x - b.x, wy = c.y - b.y;
  int cross = ux * wy - uy * wx;
  if (cross == 0) return ux == wx && uy == wy ? Rat(0) : Rat(1, 2);
  return cross < 0 ? Rat(1, 4) : Rat(-1, 4);
}

inline Rat metric_weight(const std::vector<Sq>& cycle, Sq v) {
  long long sum = 0;
  for (int dx : {-1, 1})
    for (int dy : {-1, 1})
      sum += detail::winding_half(cycle, 2 * v.x + dx, 2 * v.y + dy);
  return Rat(sum, 4);
}

inline Rat topological_weight(const std::vector<Sq>& cycle, Sq v) {
  std::set<int> winds;
  for (int dx : {-1, 1})
    for (int dy : {-1, 1})
      winds.insert(detail::winding_half(cycle, 2 * v.x + dx, 2 * v.y + dy));
  long long sum = 0;
  for (int w : winds) sum += w;
  return Rat(sum, (long long)winds.size());
}

struct ChargePair {
  Rat boundary, interior;
};

inline ChargePair charge_check(const std::vector<Sq>& cycle) {
  require_cycle(cycle);
  ChargePair out{Rat(0), Rat(0)};
  for (size_t i = 0; i < cycle.size(); ++i)
    out.boundary += vertex_angle(cycle, i) * color(cycle[i]);
  Sq lo = cycle[0], hi = cycle[0];
  for (const Sq& s : cycle) {
    lo = {std::min(lo.x, s.x), std::min(lo.y, s.y)};
    hi = {std::max(hi.x, s.x), std::max(hi.y, s.y)};
  }
  for (int y = lo.y; y <= hi.y; ++y)
    for (int x = lo.x; x <= hi.x; ++x)
      out.interior += topological_weight(cycle, {x, y}) * color(Sq{x, y});
  return out;
}

}  // namespace twistkit
