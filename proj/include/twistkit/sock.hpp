// Closed-curve skeletons of two-floor tilings, and the local moves that
// rewrite them.
//
// A sock is a finite set of pairwise disjoint, simple, oriented closed curves
// drawn on the edges of Z^2 (or of a finite planar grid).  Socks arise from
// tilings of depth-two cylinder regions: project the tiling onto its base,
// drop the trivial two-square cycles, and keep the remaining cycles.  Every
// lattice vertex not visited by a curve is a jewel, and
//
//   P_s(q) = sum over jewels j with nonzero winding of  color(j) * q^wind(j)
//
// is the sock's winding invariant.  Conventions follow the drawing module:
// the page y axis grows southward and winding +1 keeps the enclosed region on
// the left of the curve.
//
// Four kinds of local move rewrite a sock, each anchored at a unit face:
//
//   FA  swap an antiparallel edge pair on opposite sides of the face for the
//       pair on the other two sides (splits or joins cycles);
//   FB  exchange a single chord edge with the three-edge detour around the
//       face (absorbs or frees the two far corners);
//   FC  create or delete a one-face square cycle (absorbs or frees all four
//       corners);
//   TR  pivot an elbow of two consecutive edges across the face, trading the
//       elbow corner for the diagonally opposite jewel.
//
// FA, FB and FC preserve P_s and correspond to flips of the underlying
// tiling (one, two and three flips respectively).  TR corresponds to a
// single trit; it changes exactly one jewel's winding by +-1 and is the only
// move that can alter P_s.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "twistkit/drawing.hpp"
#include "twistkit/errors.hpp"
#include "twistkit/geometry.hpp"
#include "twistkit/laurent.hpp"
#include "twistkit/region.hpp"
#include "twistkit/tiling.hpp"

namespace twistkit {

// ------------------------------------------------------------------ moves

struct SockMove {
  enum class Kind : char { FA, FB, FC, TR };

  Kind kind = Kind::FA;
  Sq face;       // anchor corner (x, y) of the face [x,x+1] x [y,y+1]
  char arg = 0;  // FA: direction 'h'/'v' of the pair after the move
                 // FB: side 'n'/'s'/'w'/'e' that holds the chord
                 // FC: orientation '+'/'-' of the square
                 // TR: sign '+'/'-' of the winding change

  friend bool operator==(const SockMove&, const SockMove&) = default;
};

// Every move toggles between two configurations of its face, so the inverse
// uses the same anchor; only FA needs the other direction name and TR the
// other sign.
inline SockMove inverse(const SockMove& m) {
  SockMove r = m;
  if (m.kind == SockMove::Kind::FA) r.arg = m.arg == 'h' ? 'v' : 'h';
  if (m.kind == SockMove::Kind::TR) r.arg = m.arg == '+' ? '-' : '+';
  return r;
}

inline std::string to_string(const SockMove& m) {
  static const char* names[] = {"FA", "FB", "FC", "TR"};
  std::ostringstream out;
  out << names[(int)m.kind] << ' ' << m.face.x << ' ' << m.face.y << ' ' << m.arg;
  return out.str();
}

inline SockMove parse_move(const std::string& text) {
  std::istringstream in(text);
  std::string name, arg;
  SockMove m;
  if (!(in >> name >> m.face.x >> m.face.y >> arg) || arg.size() != 1)
    throw ParseError("move must read KIND x y arg", 1, 1);
  m.arg = arg[0];
  if (name == "FA") {
    m.kind = SockMove::Kind::FA;
    if (m.arg != 'h' && m.arg != 'v') throw ParseError("FA direction must be h or v", 1, 1);
  } else if (name == "FB") {
    m.kind = SockMove::Kind::FB;
    if (std::string("nswe").find(m.arg) == std::string::npos)
      throw ParseError("FB side must be n, s, w or e", 1, 1);
  } else if (name == "FC" || name == "TR") {
    m.kind = name == "FC" ? SockMove::Kind::FC : SockMove::Kind::TR;
    if (m.arg != '+' && m.arg != '-') throw ParseError("orientation must be + or -", 1, 1);
  } else {
    throw ParseError("unknown move kind '" + name + "'", 1, 1);
  }
  return m;
}

// ------------------------------------------------------------------- socks

class Sock {
 public:
  Sock() = default;

  // Validates and canonicalizes: every cycle must close up through unit
  // steps, visit at least four distinct vertices, and stay disjoint from the
  // others.  Cycles are rotated so their scan-least vertex comes first and
  // sorted; orientation is preserved.
  static Sock from_cycles(std::vector<std::vector<Sq>> cycles,
                          std::optional<std::set<Sq>> host = std::nullopt) {
    std::set<Sq> seen;
    for (auto& cyc : cycles) {
      if (cyc.size() < 4) throw DomainError("sock cycles visit at least four vertices");
      for (size_t i = 0; i < cyc.size(); ++i) {
        const Sq& a = cyc[i];
        const Sq& b = cyc[(i + 1) % cyc.size()];
        if (std::abs(a.x - b.x) + std::abs(a.y - b.y) != 1)
          throw DomainError("sock cycles advance by unit steps");
        if (!seen.insert(a).second) throw DomainError("sock curves must be disjoint and simple");
        if (host && !host->count(a)) throw DomainError("sock cycle leaves its host graph");
      }
      std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
    }
    std::sort(cycles.begin(), cycles.end());
    Sock s;
    s.cycles_ = std::move(cycles);
    s.host_ = std::move(host);
    return s;
  }

  const std::vector<std::vector<Sq>>& cycles() const { return cycles_; }
  const std::optional<std::set<Sq>>& host() const { return host_; }
  bool empty() const { return cycles_.empty(); }

  friend bool operator==(const Sock& a, const Sock& b) {
    return a.cycles_ == b.cycles_ && a.host_ == b.host_;
  }

 private:
  std::vector<std::vector<Sq>> cycles_;
  std::optional<std::set<Sq>> host_;
};

namespace detail {

// Mutable edge-map form of a sock: next[v] is the head of v's outgoing edge.
// Valid laces give every visited vertex exactly one incoming and one
// outgoing edge and contain no two-step cycles (those are jewel pairs, not
// curves).  All move legality checks live here.
struct Lace {
  std::map<Sq, Sq> next, prev;
  const std::set<Sq>* host = nullptr;  // vertex bound, when the sock has one

  static Lace of(const Sock& s) {
    Lace l;
    for (const auto& cyc : s.cycles())
      for (size_t i = 0; i < cyc.size(); ++i) {
        const Sq& a = cyc[i];
        const Sq& b = cyc[(i + 1) % cyc.size()];
        l.next.emplace(a, b);
        l.prev.emplace(b, a);
      }
    if (s.host()) l.host = &*s.host();
    return l;
  }

  bool on_curve(Sq v) const { return next.count(v) != 0; }
  bool has_edge(Sq a, Sq b) const {
    auto it = next.find(a);
    return it != next.end() && it->second == b;
  }
  bool linked(Sq a, Sq b) const { return has_edge(a, b) || has_edge(b, a); }

  void check_host(Sq v) const {
    if (host && !host->count(v))
      throw MoveError("move leaves the region graph at (" + std::to_string(v.x) + "," +
                      std::to_string(v.y) + ")");
  }

  // Winding of all curves around an off-curve vertex.  Counts signed
  // crossings of the eastward ray from a probe at (p.x, p.y + 1/2); the
  // half-offset keeps the ray clear of every vertex, and no edge separates
  // the probe from p itself.
  int wind(Sq p) const {
    int w = 0;
    for (const auto& [a, b] : next) {
      if (a.x != b.x || a.x <= p.x) continue;
      if (std::min(a.y, b.y) <= p.y && p.y < std::max(a.y, b.y)) w += b.y < a.y ? 1 : -1;
    }
    return w;
  }

  std::vector<std::vector<Sq>> cycles() const {
    std::vector<std::vector<Sq>> out;
    std::set<Sq> consumed;
    for (const auto& [start, first] : next) {
      if (consumed.count(start)) continue;
      std::vector<Sq> cyc = {start};
      consumed.insert(start);
      for (Sq v = first; v != start; v = next.at(v)) {
        cyc.push_back(v);
        consumed.insert(v);
      }
      std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
      out.push_back(std::move(cyc));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Sock to_sock(std::optional<std::set<Sq>> with_host) const {
    return Sock::from_cycles(cycles(), std::move(with_host));
  }

  // Total enclosed area: the absolute shoelace area of each cycle.
  long long area() const {
    long long total = 0;
    for (const auto& cyc : cycles()) {
      long long twice = 0;
      for (size_t i = 0; i < cyc.size(); ++i) {
        const Sq& a = cyc[i];
        const Sq& b = cyc[(i + 1) % cyc.size()];
        twice += (long long)a.x * b.y - (long long)b.x * a.y;
      }
      total += std::abs(twice) / 2;
    }
    return total;
  }

  Laurent poly() const {
    Laurent p;
    if (next.empty()) return p;
    Sq lo = next.begin()->first, hi = lo;
    for (const auto& [a, b] : next) {
      lo = {std::min(lo.x, a.x), std::min(lo.y, a.y)};
      hi = {std::max(hi.x, a.x), std::max(hi.y, a.y)};
    }
    for (int y = lo.y + 1; y < hi.y; ++y)
      for (int x = lo.x + 1; x < hi.x; ++x) {
        Sq v{x, y};
        if (on_curve(v)) continue;
        if (int w = wind(v)) p.add_term(color(v), w);
      }
    return p;
  }

  void apply(const SockMove& m) {
    Sq nw = m.face;
    Sq ne{m.face.x + 1, m.face.y};
    Sq sw{m.face.x, m.face.y + 1};
    Sq se{m.face.x + 1, m.face.y + 1};
    switch (m.kind) {
      case SockMove::Kind::FA: {
        Sq a1 = nw, b1 = ne, a2 = sw, b2 = se;  // old pair horizontal
        if (m.arg == 'h') {
          a1 = nw, b1 = sw, a2 = ne, b2 = se;  // old pair vertical
        } else if (m.arg != 'v') {
          throw MoveError("reconnection direction must be h or v");
        }
        auto pick = [&](Sq a, Sq b) -> std::pair<Sq, Sq> {
          if (has_edge(a, b)) return {a, b};
          if (has_edge(b, a)) return {b, a};
          throw MoveError("reconnection needs edges on both facing sides");
        };
        auto [p1, q1] = pick(a1, b1);
        auto [p2, q2] = pick(a2, b2);
        if (p1.x == p2.x || p1.y == p2.y)
          throw MoveError("reconnection needs an antiparallel pair");
        if (has_edge(q2, p1) || has_edge(q1, p2))
          throw MoveError("reconnection would close a two-step cycle");
        next[p1] = q2;
        prev[q2] = p1;
        next[p2] = q1;
        prev[q1] = p2;
        return;
      }
      case SockMove::Kind::FB: {
        Sq c1, c2, d1, d2;  // chord side c1-c2; far corner d1 faces c1
        switch (m.arg) {
          case 'n': c1 = nw, c2 = ne, d1 = sw, d2 = se; break;
          case 's': c1 = sw, c2 = se, d1 = nw, d2 = ne; break;
          case 'w': c1 = nw, c2 = sw, d1 = ne, d2 = se; break;
          case 'e': c1 = ne, c2 = se, d1 = nw, d2 = sw; break;
          default: throw MoveError("fold side must be n, s, w or e");
        }
        if (linked(c1, c2)) {
          // chord -> detour through the far corners
          Sq p = has_edge(c1, c2) ? c1 : c2;
          Sq q = p == c1 ? c2 : c1;
          Sq r = p == c1 ? d1 : d2;
          Sq s = p == c1 ? d2 : d1;
          if (on_curve(r) || on_curve(s)) throw MoveError("detour corners must be jewels");
          check_host(r);
          check_host(s);
          next[p] = r;
          prev[r] = p;
          next[r] = s;
          prev[s] = r;
          next[s] = q;
          prev[q] = s;
        } else {
          // detour -> chord
          if (!linked(c1, d1) || !linked(d1, d2) || !linked(d2, c2))
            throw MoveError("fold needs either the chord or the full detour");
          Sq p, q;
          if (has_edge(c1, d1) && has_edge(d1, d2) && has_edge(d2, c2)) {
            p = c1, q = c2;
          } else if (has_edge(c2, d2) && has_edge(d2, d1) && has_edge(d1, c1)) {
            p = c2, q = c1;
          } else {
            throw MoveError("detour edges disagree in direction");
          }
          next.erase(d1);
          next.erase(d2);
          prev.erase(d1);
          prev.erase(d2);
          next[p] = q;
          prev[q] = p;
        }
        return;
      }
      case SockMove::Kind::FC: {
        std::array<Sq, 4> ring = {nw, sw, se, ne};  // '+': region kept on the left
        if (m.arg == '-') {
          ring = {nw, ne, se, sw};
        } else if (m.arg != '+') {
          throw MoveError("square orientation must be + or -");
        }
        bool free = true, whole = true;
        for (int i = 0; i < 4; ++i) {
          if (on_curve(ring[(size_t)i])) free = false;
          if (!has_edge(ring[(size_t)i], ring[(size_t)(i + 1) % 4])) whole = false;
        }
        if (free) {
          for (const Sq& v : ring) check_host(v);
          for (int i = 0; i < 4; ++i) {
            next[ring[(size_t)i]] = ring[(size_t)(i + 1) % 4];
            prev[ring[(size_t)(i + 1) % 4]] = ring[(size_t)i];
          }
        } else if (whole) {
          for (const Sq& v : ring) {
            next.erase(v);
            prev.erase(v);
          }
        } else {
          throw MoveError("square toggle needs four jewels or the matching square");
        }
        return;
      }
      case SockMove::Kind::TR: {
        int want = m.arg == '+' ? 1 : m.arg == '-' ? -1 : 0;
        if (!want) throw MoveError("pivot sign must be + or -");
        // Find the elbow: a corner k whose two face sides carry consecutive
        // edges while the diagonally opposite corner j is free.
        std::array<std::array<Sq, 4>, 4> elbows = {{
            {nw, ne, sw, se},  // k, horizontal side end, vertical side end, diagonal
            {ne, nw, se, sw},
            {sw, se, nw, ne},
            {se, sw, ne, nw},
        }};
        for (const auto& e : elbows) {
          Sq k = e[0], h = e[1], v = e[2], j = e[3];
          if (on_curve(j) || !linked(k, h) || !linked(k, v)) continue;
          Sq p, q;
          if (has_edge(h, k) && has_edge(k, v)) {
            p = h, q = v;
          } else if (has_edge(v, k) && has_edge(k, h)) {
            p = v, q = h;
          } else {
            continue;
          }
          check_host(j);
          int wj = wind(j);
          next.erase(k);
          prev.erase(k);
          next[p] = j;
          prev[j] = p;
          next[j] = q;
          prev[q] = j;
          int delta = wind(k) - wj;
          if (delta != 1 && delta != -1)
            throw InternalError("pivot changed a winding by " + std::to_string(delta));
          if (color(j) * delta != want) throw MoveError("pivot sign mismatch");
          return;
        }
        throw MoveError("pivot needs an elbow with a free diagonal");
      }
    }
    throw InternalError("unhandled move kind");
  }
};

}  // namespace detail

namespace detail {

// ------------------------------------------------------- move transforms
// Conjugating a recorded move sequence by a symmetry of the plane.  The
// linear part must be one of the eight signed permutation matrices; the
// translation is applied afterwards.

struct Xform {
  int a = 1, b = 0, c = 0, d = 1;  // (x, y) -> (a x + b y, c x + d y)
  int tx = 0, ty = 0;

  Sq pt(Sq p) const { return {a * p.x + b * p.y + tx, c * p.x + d * p.y + ty}; }

  // Faces map to faces; the image anchor is the least corner of the image.
  Sq face(Sq f) const {
    Sq t = pt(f);
    return {t.x + std::min(0, a) + std::min(0, b), t.y + std::min(0, c) + std::min(0, d)};
  }

  int det() const { return a * d - b * c; }

  char side(char s) const {
    int ox = s == 'e' ? 1 : s == 'w' ? -1 : 0;
    int oy = s == 's' ? 1 : s == 'n' ? -1 : 0;
    int nx = a * ox + b * oy, ny = c * ox + d * oy;
    if (ny < 0) return 'n';
    if (ny > 0) return 's';
    return nx < 0 ? 'w' : 'e';
  }

  SockMove operator()(const SockMove& m) const {
    SockMove r = m;
    r.face = face(m.face);
    switch (m.kind) {
      case SockMove::Kind::FA:
        if (b != 0) r.arg = m.arg == 'h' ? 'v' : 'h';
        break;
      case SockMove::Kind::FB: r.arg = side(m.arg); break;
      case SockMove::Kind::FC:
      case SockMove::Kind::TR:
        if (det() < 0) r.arg = m.arg == '+' ? '-' : '+';
        break;
    }
    return r;
  }
};

struct Dir {
  int dx = 0, dy = 0;
  friend bool operator==(const Dir&, const Dir&) = default;
};
inline constexpr Dir kEast{1, 0}, kWest{-1, 0}, kSouth{0, 1}, kNorth{0, -1};
inline Dir opposite(Dir d) { return {-d.dx, -d.dy}; }

// Rotation taking east to `d`.
inline Xform rot_for(Dir d) {
  if (d == kEast) return {1, 0, 0, 1, 0, 0};
  if (d == kSouth) return {0, -1, 1, 0, 0, 0};
  if (d == kWest) return {-1, 0, 0, -1, 0, 0};
  return {0, 1, -1, 0, 0, 0};
}

struct Worker {
  Lace lace;
  std::vector<SockMove> log;
  void run(const SockMove& m) {
    lace.apply(m);
    log.push_back(m);
  }
  void run(const std::vector<SockMove>& ms) {
    for (const SockMove& m : ms) run(m);
  }
};

// ------------------------------------------------------ transport macros
// An axis-aligned rectangular cycle with vertex corners lo..hi can be grown
// two columns eastward: seed a square against the middle of the east wall,
// weld it on, then zip the new strip outward row by row.  Every other
// growth direction is the rotated image, and shrinking is the exact
// reversal of growing the removed strip.  When the rectangle hugs a jewel,
// the zip hands the jewel over automatically, so translating a full onion
// tower reduces to grow/shrink sweeps from the outermost ring inward.

inline std::vector<SockMove> grow2_east_moves(Sq lo, Sq hi, char orient) {
  std::vector<SockMove> out;
  out.push_back({SockMove::Kind::FC, {hi.x + 1, lo.y}, orient});
  out.push_back({SockMove::Kind::FA, {hi.x, lo.y}, 'h'});
  for (int r = 1; r < hi.y - lo.y; ++r) {
    out.push_back({SockMove::Kind::FB, {hi.x + 1, lo.y + r}, 'n'});
    out.push_back({SockMove::Kind::FB, {hi.x, lo.y + r}, 's'});
  }
  return out;
}

inline std::vector<SockMove> grow2_moves(Sq lo, Sq hi, Dir d, char orient) {
  // Map the rectangle into the eastward frame, emit there, and map back.
  Xform fwd = rot_for(d);
  Xform inv = rot_for(d == kSouth ? kNorth : d == kNorth ? kSouth : d);
  Sq p = inv.pt(lo), q = inv.pt(hi);
  Sq rlo{std::min(p.x, q.x), std::min(p.y, q.y)};
  Sq rhi{std::max(p.x, q.x), std::max(p.y, q.y)};
  std::vector<SockMove> out = grow2_east_moves(rlo, rhi, orient);
  for (SockMove& m : out) m = fwd(m);
  return out;
}

inline std::pair<Sq, Sq> extended(Sq lo, Sq hi, Dir d) {
  if (d.dx > 0) hi.x += 2;
  if (d.dx < 0) lo.x -= 2;
  if (d.dy > 0) hi.y += 2;
  if (d.dy < 0) lo.y -= 2;
  return {lo, hi};
}

// Remove the two vertex columns (or rows) on side `retreat` of lo..hi.
inline std::vector<SockMove> shrink2_moves(Sq lo, Sq hi, Dir retreat, char orient) {
  Sq slo = lo, shi = hi;
  if (retreat.dx > 0) shi.x -= 2;
  if (retreat.dx < 0) slo.x += 2;
  if (retreat.dy > 0) shi.y -= 2;
  if (retreat.dy < 0) slo.y += 2;
  std::vector<SockMove> out = grow2_moves(slo, shi, retreat, orient);
  std::reverse(out.begin(), out.end());
  for (SockMove& m : out) m = inverse(m);
  return out;
}

// Translate an onion tower (rings of radius 1..m around `c`, all oriented
// `orient`, with the jewel at `c`) two steps along `d`.
inline void shift_tower(Worker& w, Sq c, int m, char orient, Dir d) {
  for (int r = m; r >= 1; --r)
    w.run(grow2_moves({c.x - r, c.y - r}, {c.x + r, c.y + r}, d, orient));
  for (int r = 1; r <= m; ++r) {
    auto [lo, hi] = extended({c.x - r, c.y - r}, {c.x + r, c.y + r}, d);
    w.run(shrink2_moves(lo, hi, opposite(d), orient));
  }
}

// One diagonal step of a radius-r ring needs edges to move by an odd
// amount, which rectangle grows and shrinks cannot do (they displace each
// edge by two).  Instead the ring walks: it annexes the L-shaped band of
// faces along its far side, passing through the square-with-one-notch
// midpoint region, then sheds the matching band on the near side.  Each
// band is covered by two sweeps (one per arm of the L) built from a seed
// dent, pairs of fold moves that march the dent along the arm, and corner
// contracts that finish at the arm ends; every move removes or adds
// exactly one face.  Below, the southeast-positive emissions; the other
// seven variants are signed-permutation conjugates.

// Shed the far (east column + south row) band of the midpoint region,
// radius r centered at the origin.  Reversing this list annexes the band,
// since folds are self-inverse.
inline void ring_shed_se(int r, std::vector<SockMove>& out) {
  auto fb = [&](int x, int y, char a) { out.push_back({SockMove::Kind::FB, {x, y}, a}); };
  fb(r, -r + 1, 'e');
  fb(r, -r, 'w');
  for (int y = -r + 3; y <= r - 1; y += 2) {
    fb(r, y, 'e');
    fb(r, y - 1, 'w');
  }
  fb(r, r, 'w');
  if (r == 1) {
    fb(0, 1, 'n');
  } else {
    fb(r - 2, r, 's');
    fb(r - 1, r, 'n');
    for (int x = r - 4; x >= -r + 2; x -= 2) {
      fb(x, r, 's');
      fb(x + 1, r, 'n');
    }
    fb(-r + 1, r, 'n');
  }
}

// Shed the near (north row + west column) band, completing the step.
inline void ring_shed_nw(int r, std::vector<SockMove>& out) {
  auto fb = [&](int x, int y, char a) { out.push_back({SockMove::Kind::FB, {x, y}, a}); };
  fb(-r + 1, -r, 'n');
  fb(-r, -r, 's');
  for (int x = -r + 3; x <= r - 1; x += 2) {
    fb(x, -r, 'n');
    fb(x - 1, -r, 's');
  }
  fb(r, -r, 's');
  if (r == 1) {
    fb(-1, 0, 'e');
  } else {
    fb(-r, -r + 2, 'w');
    fb(-r, -r + 1, 'e');
    for (int y = -r + 4; y <= r - 2; y += 2) {
      fb(-r, y, 'w');
      fb(-r, y - 1, 'e');
    }
    fb(-r, r - 1, 'e');
  }
}

inline Xform diag_frame(Dir d, char orient, Sq c) {
  Xform x;
  if (orient == '+') {
    if (d.dx > 0 && d.dy > 0) x = {1, 0, 0, 1};
    if (d.dx < 0 && d.dy > 0) x = {0, -1, 1, 0};
    if (d.dx < 0 && d.dy < 0) x = {-1, 0, 0, -1};
    if (d.dx > 0 && d.dy < 0) x = {0, 1, -1, 0};
  } else {
    if (d.dx > 0 && d.dy > 0) x = {0, 1, 1, 0};
    if (d.dx < 0 && d.dy > 0) x = {-1, 0, 0, 1};
    if (d.dx < 0 && d.dy < 0) x = {0, -1, -1, 0};
    if (d.dx > 0 && d.dy < 0) x = {1, 0, 0, -1};
  }
  x.tx = c.x;
  x.ty = c.y;
  return x;
}

// Move an onion tower one diagonal step.  Rings can't slide whole: each
// ring walks by annexing the far band (reversed shed, folds being
// self-inverse) and then shedding the near band.  Annex outside-in so each
// ring bulges into space its outer neighbour has not reclaimed yet, then
// shed inside-out for the same reason.
inline void diag_tower(Worker& w, Sq c, int m, char orient, Dir d) {
  Xform f = diag_frame(d, orient, c);
  std::vector<SockMove> seq;
  for (int r = m; r >= 1; --r) {
    seq.clear();
    ring_shed_se(r, seq);
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) w.run(f(inverse(*it)));
  }
  for (int r = 1; r <= m; ++r) {
    seq.clear();
    ring_shed_nw(r, seq);
    for (const SockMove& mv : seq) w.run(f(mv));
  }
}

// ------------------------------------------------------- descent to towers

inline void flip_candidates(const Lace& l, Sq f, std::vector<SockMove>& out) {
  Sq nw = f, ne{f.x + 1, f.y}, sw{f.x, f.y + 1}, se{f.x + 1, f.y + 1};
  bool n = l.linked(nw, ne), s = l.linked(sw, se), w = l.linked(nw, sw), e = l.linked(ne, se);
  int sides = n + s + w + e;
  if (n && s) out.push_back({SockMove::Kind::FA, f, 'v'});
  if (w && e) out.push_back({SockMove::Kind::FA, f, 'h'});
  if (sides == 1 || sides == 3) {
    if (n || (s && w && e)) out.push_back({SockMove::Kind::FB, f, 'n'});
    if (s || (n && w && e)) out.push_back({SockMove::Kind::FB, f, 's'});
    if (w || (n && s && e)) out.push_back({SockMove::Kind::FB, f, 'w'});
    if (e || (n && s && w)) out.push_back({SockMove::Kind::FB, f, 'e'});
  }
  if (sides == 4) {
    out.push_back({SockMove::Kind::FC, f, '+'});
    out.push_back({SockMove::Kind::FC, f, '-'});
  }
}

inline std::optional<SockMove> reducing_flip(const Lace& l) {
  long long cur = l.area();
  std::set<Sq> faces;
  for (const auto& [a, b] : l.next) {
    faces.insert(a);
    faces.insert({a.x - 1, a.y});
    faces.insert({a.x, a.y - 1});
    faces.insert({a.x - 1, a.y - 1});
  }
  std::vector<SockMove> cands;
  for (const Sq& f : faces) {
    cands.clear();
    flip_candidates(l, f, cands);
    for (const SockMove& m : cands) {
      Lace probe = l;
      try {
        probe.apply(m);
      } catch (const MoveError&) {
        continue;
      }
      if (probe.area() < cur) return m;
    }
  }
  return std::nullopt;
}

struct Tower {
  Sq center;
  int m = 0;      // number of nested rings
  int omega = 0;  // +1 when every ring keeps its inside on the left
};

inline std::vector<Tower> read_towers(const Lace& l) {
  std::map<Sq, std::vector<std::pair<int, int>>> groups;  // center -> (radius, omega)
  for (const auto& cyc : l.cycles()) {
    Sq lo = cyc[0], hi = cyc[0];
    long long twice = 0;
    for (size_t i = 0; i < cyc.size(); ++i) {
      const Sq& a = cyc[i];
      const Sq& b = cyc[(i + 1) % cyc.size()];
      twice += (long long)a.x * b.y - (long long)b.x * a.y;
      lo = {std::min(lo.x, a.x), std::min(lo.y, a.y)};
      hi = {std::max(hi.x, a.x), std::max(hi.y, a.y)};
    }
    int wdt = hi.x - lo.x;
    bool ok = wdt == hi.y - lo.y && wdt >= 2 && wdt % 2 == 0 && (int)cyc.size() == 4 * wdt;
    Sq c{(lo.x + hi.x) / 2, (lo.y + hi.y) / 2};
    if (ok)
      for (const Sq& v : cyc)
        ok = ok && std::max(std::abs(v.x - c.x), std::abs(v.y - c.y)) == wdt / 2;
    if (!ok) throw InternalError("flip descent stalled on a non-ring cycle");
    groups[c].push_back({wdt / 2, twice < 0 ? 1 : -1});
  }
  std::vector<Tower> out;
  for (auto& [c, rings] : groups) {
    std::sort(rings.begin(), rings.end());
    for (int i = 0; i < (int)rings.size(); ++i)
      if (rings[i].first != i + 1 || rings[i].second != rings[0].second)
        throw InternalError("flip descent stalled on mismatched rings");
    out.push_back({c, (int)rings.size(), rings[0].second});
  }
  return out;
}

// ---------------------------------------------------------- stall splitting
// Strict descent can stop short of tower form.  A cycle hugging jewels that
// sit on a common diagonal is all elbows, elbows admit no flip at that face,
// and splitting the cycle into rings takes MORE area than the staircase
// encloses, so no descending path exists.  The splitter pays the area toll
// at the chain's end jewel: four folds raise a two-wide chimney next to it,
// a fifth necks the wall below, and one reconnection cuts the neck.  A unit
// ring carrying the end charge pinches off; what remains is the staircase
// less one jewel plus a one-face appendix, which the next descent round
// folds away.  Anti-diagonal chains run the east-west mirror of the script.

// The stalled shape around jewels (1,1)..(n,n), anticlockwise in page
// coordinates.  Also serves as the reference the splitter matches against.
inline std::vector<Sq> stair_vertices(int n) {
  std::vector<Sq> cyc = {{0, 0}, {1, 0}, {2, 0}};
  for (int i = 0; i < n - 1; ++i) {
    cyc.push_back({2 + i, 1 + i});
    cyc.push_back({3 + i, 1 + i});
  }
  cyc.push_back({n + 1, n});
  cyc.push_back({n + 1, n + 1});
  cyc.push_back({n, n + 1});
  cyc.push_back({n - 1, n + 1});
  for (int i = 0; i < n - 1; ++i) {
    cyc.push_back({n - 1 - i, n - i});
    cyc.push_back({n - 2 - i, n - i});
  }
  cyc.push_back({0, 1});
  return cyc;
}

// Frame sending the reference chain onto one starting at `anchor`; sx = -1
// mirrors east-west for chains running northeast.
inline Xform stair_frame(Sq anchor, int sx) {
  return {sx, 0, 0, 1, anchor.x - sx, anchor.y - 1};
}

inline const std::vector<SockMove>& stair_cut_moves() {
  static const std::vector<SockMove> cut = {
      {SockMove::Kind::FB, {0, -1}, 's'}, {SockMove::Kind::FB, {0, -2}, 's'},
      {SockMove::Kind::FB, {1, -2}, 'w'}, {SockMove::Kind::FB, {1, -1}, 'e'},
      {SockMove::Kind::FB, {0, 0}, 'w'},  {SockMove::Kind::FA, {1, 0}, 'h'},
  };
  return cut;
}

struct Stall {
  Sq anchor;    // chain-end jewel the chimney rises from
  int sx = 1;   // +1 southeast chain, -1 mirrored
  int omega = 0;
  int jewels = 0;
};

// Match one non-tower cycle against a jewel staircase.  Empty when the
// stalled shape is something else entirely; the caller then has no cure.
inline std::optional<Stall> read_stall(const Lace& l) {
  for (const auto& cyc : l.cycles()) {
    Lace one;
    for (size_t i = 0; i < cyc.size(); ++i) {
      one.next.emplace(cyc[i], cyc[(i + 1) % cyc.size()]);
      one.prev.emplace(cyc[(i + 1) % cyc.size()], cyc[i]);
    }
    try {
      (void)read_towers(one);
      continue;
    } catch (const InternalError&) {
    }
    Sq lo = cyc[0], hi = cyc[0];
    for (const Sq& v : cyc) {
      lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
      hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
    }
    std::vector<Sq> js;
    int omega = 0;
    for (int y = lo.y; y <= hi.y; ++y)
      for (int x = lo.x; x <= hi.x; ++x)
        if (Sq p{x, y}; !one.on_curve(p))
          if (int k = one.wind(p); k != 0) {
            js.push_back(p);
            omega = k;
          }
    std::sort(js.begin(), js.end(),
              [](Sq a, Sq b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    if (js.size() < 2) return std::nullopt;
    int sx = js[1].y > js[0].y ? 1 : -1;
    for (size_t i = 0; i + 1 < js.size(); ++i)
      if (js[i + 1].x != js[i].x + 1 || js[i + 1].y != js[i].y + sx)
        return std::nullopt;
    Sq anchor = sx > 0 ? js.front() : js.back();
    Xform f = stair_frame(anchor, sx);
    std::vector<Sq> want;
    for (Sq v : stair_vertices((int)js.size())) want.push_back(f.pt(v));
    std::vector<Sq> got = cyc;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) return std::nullopt;
    return Stall{anchor, sx, omega, (int)js.size()};
  }
  return std::nullopt;
}

}  // namespace detail

inline Sock apply_move(const Sock& s, const SockMove& m) {
  detail::Lace lace = detail::Lace::of(s);
  lace.apply(m);
  return lace.to_sock(s.host());
}

inline Sock apply_moves(const Sock& s, const std::vector<SockMove>& ms) {
  detail::Lace lace = detail::Lace::of(s);
  for (const SockMove& m : ms) lace.apply(m);
  return lace.to_sock(s.host());
}

inline long long sock_area(const Sock& s) { return detail::Lace::of(s).area(); }

// P_s: winding-weighted jewel count.  Never has a constant term, because
// only jewels with nonzero winding contribute.
inline Laurent sock_poly(const Sock& s) { return detail::Lace::of(s).poly(); }

// Project a tiling of a depth-two cylinder onto its base.  In-floor dominoes
// become oriented unit edges, dominoes along the cylinder axis become
// jewels, and the trivial two-square cycles (stacked parallel pairs) are
// dropped.  The footprint of the region is attached as the sock's host.
inline Sock sock_of(const Tiling& t) {
  const Classification& cls = t.region().classify();
  if (!cls.duplex_axis)
    throw DomainError("sock projection needs a depth-two cylinder region");
  Axis ax = *cls.duplex_axis;
  detail::Floorplan fp{ax, cls.along(ax).lo};

  std::set<Sq> footprint;
  for (const Cell& c : t.region().cells()) footprint.insert(fp.sq(c));

  std::map<Sq, Sq> next;
  for (const Domino& dom : t.dominoes()) {
    if (dom.axis() == ax) continue;  // jewel: implicit in the sock
    Sq sa = fp.sq(dom.a), sb = fp.sq(dom.b);
    int f = fp.floor_of(dom.a);
    Sq from = fp.cell_dark(sa, f) ? sb : sa;
    Sq to = from == sa ? sb : sa;
    if (next.count(from)) throw InternalError("projected edges collide");
    next.emplace(from, to);
  }

  std::vector<std::vector<Sq>> cycles;
  std::set<Sq> consumed;
  for (const auto& [start, first] : next) {
    if (consumed.count(start)) continue;
    std::vector<Sq> cyc = {start};
    consumed.insert(start);
    for (Sq v = first; v != start; v = next.at(v)) {
      if (!next.count(v)) throw InternalError("projected curves fail to close");
      cyc.push_back(v);
      consumed.insert(v);
    }
    if (cyc.size() > 2) cycles.push_back(std::move(cyc));
  }
  return Sock::from_cycles(std::move(cycles), std::move(footprint));
}

// --------------------------------------------------------------- untangle

struct UntangleResult {
  Sock sock;                   // disjoint onion towers centered on the x axis
  std::vector<SockMove> moves; // flips only; replaying them on the input
                               // yields `sock`
};

// Flip-only normalization.  First a greedy strict descent on enclosed area;
// its fixed points are disjoint onion towers except for jewel staircases,
// which the stall splitter cuts one ring at a time, parking each pinched
// ring on its own row north of the scene so later chimneys have room.
// Then the towers are carried to canonical slots on the x axis.  Transport
// works in an empty staging band below everything: towers descend
// bottom-most first into separate lanes, take one diagonal step inside
// their lane when their center parity demands it, slide to their slot
// column, and climb back up to the axis.  Every intermediate move is
// validated by the engine, so a routing flaw surfaces as an exception
// rather than a corrupt sock.  P_s is preserved because no pivot moves are
// used.
inline UntangleResult untangle(const Sock& s) {
  detail::Worker w{detail::Lace::of(s), {}};
  w.lace.host = nullptr;  // the ambient plane: untangling may leave any host
  while (auto mv = detail::reducing_flip(w.lace)) w.run(*mv);

  std::vector<detail::Tower> towers;
  for (int cut = 0, budget = 0, floor_y = 0;;) {
    try {
      towers = detail::read_towers(w.lace);
      break;
    } catch (const InternalError&) {
      std::optional<detail::Stall> st = detail::read_stall(w.lace);
      if (!st) throw;
      if (cut == 0) {
        // Reserve one parking row per jewel that could still pinch off,
        // deepest row first so later flights always stop short of it.
        Sq lo = w.lace.next.begin()->first, hi = lo;
        for (const auto& [a, b] : w.lace.next) {
          lo = {std::min(lo.x, a.x), std::min(lo.y, a.y)};
          hi = {std::max(hi.x, a.x), std::max(hi.y, a.y)};
        }
        floor_y = lo.y;
        for (int y = lo.y; y <= hi.y; ++y)
          for (int x = lo.x; x <= hi.x; ++x)
            if (Sq p{x, y}; !w.lace.on_curve(p) && w.lace.wind(p) != 0) ++budget;
      }
      if (++cut > budget) throw InternalError("stall splitter failed to converge");
      detail::Xform f = detail::stair_frame(st->anchor, st->sx);
      for (const SockMove& m : detail::stair_cut_moves()) w.run(f(m));
      Sq ring{st->anchor.x, st->anchor.y - 2};
      char o = st->omega > 0 ? '+' : '-';
      for (int park = floor_y - 4 - 4 * (budget - cut); ring.y > park; ring.y -= 2)
        detail::shift_tower(w, ring, 1, o, detail::kNorth);
      while (auto mv = detail::reducing_flip(w.lace)) w.run(*mv);
    }
  }
  if (!towers.empty()) {
    // Canonical slots, left to right.  On the axis a tower's jewel color
    // equals its x parity, so each slot is rounded up to the parity the
    // color dictates.
    std::vector<size_t> order(towers.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto slot_key = [&](size_t i) {
      const detail::Tower& t = towers[i];
      return std::make_tuple(t.m * t.omega, color(t.center), t.center);
    };
    std::sort(order.begin(), order.end(),
              [&](size_t i, size_t j) { return slot_key(i) < slot_key(j); });
    std::vector<int> slot(towers.size());
    int prev_x = 0, prev_m = 0;
    bool first = true;
    for (size_t i : order) {
      int want = color(towers[i].center) > 0 ? 1 : 0;
      int x = first ? 0 : prev_x + prev_m + towers[i].m + 2;
      if (((x % 2) + 2) % 2 != want) ++x;
      slot[i] = x;
      prev_x = x;
      prev_m = towers[i].m;
      first = false;
    }

    bool placed = true;
    for (size_t i = 0; i < towers.size(); ++i)
      placed = placed && towers[i].center == Sq{slot[i], 0};

    if (!placed) {
      // Stage bottom-most towers first so a descending tower never crosses
      // one below it; give the first-staged tower the deepest lane.
      std::vector<size_t> stage = order;
      std::sort(stage.begin(), stage.end(), [&](size_t i, size_t j) {
        return std::make_pair(towers[j].center, j) < std::make_pair(towers[i].center, i);
      });
      int top = 0;
      for (const detail::Tower& t : towers) {
        top = std::max(top, t.center.y + t.m);
        top = std::max(top, t.m);  // room for risen towers on the axis
      }
      // +4, not +2: a diagonal step's first grow reaches two rows above
      // its lane, which must stay clear of towers that have not staged yet.
      std::vector<int> lane(towers.size());
      int bound = top + 4;
      for (size_t j = stage.size(); j-- > 0;) {
        const detail::Tower& t = towers[stage[j]];
        int y = bound + t.m;
        if ((((y - t.center.y) % 2) + 2) % 2 != 0) ++y;
        lane[stage[j]] = y;
        bound = y + t.m + 3;
      }

      for (size_t i : stage) {
        detail::Tower& t = towers[i];
        char o = t.omega > 0 ? '+' : '-';
        for (int y = t.center.y; y < lane[i]; y += 2)
          detail::shift_tower(w, {t.center.x, y}, t.m, o, detail::kSouth);
        t.center.y = lane[i];
        if (((t.center.y % 2) + 2) % 2 != 0) {
          detail::Dir d{slot[i] > t.center.x ? 1 : -1, -1};
          detail::diag_tower(w, t.center, t.m, o, d);
          t.center.x += d.dx;
          t.center.y -= 1;
        }
        detail::Dir run = slot[i] > t.center.x ? detail::kEast : detail::kWest;
        for (int x = t.center.x; x != slot[i]; x += 2 * run.dx)
          detail::shift_tower(w, {x, t.center.y}, t.m, o, run);
        t.center.x = slot[i];
      }
      // Climb in reverse staging order (shallowest lane first); target
      // columns are pairwise disjoint, so risers never collide.
      for (size_t j = stage.size(); j-- > 0;) {
        detail::Tower& t = towers[stage[j]];
        char o = t.omega > 0 ? '+' : '-';
        for (int y = t.center.y; y > 0; y -= 2)
          detail::shift_tower(w, {t.center.x, y}, t.m, o, detail::kNorth);
        t.center.y = 0;
      }
    }
  }
  return {w.lace.to_sock(std::nullopt), std::move(w.log)};
}

// ------------------------------------------------------------ normal form

// The reduced multiset of boxed jewels realizing a winding polynomial:
// signed counts per degree, plus the constant term that curves cannot see.
struct BoxedJewelForm {
  std::map<int, int> towers;  // degree -> signed multiplicity, zeros erased
  int constant = 0;

  Laurent poly() const {
    Laurent p;
    if (constant) p.add_term(constant, 0);
    for (const auto& [deg, count] : towers) p.add_term(count, deg);
    return p;
  }

  std::string to_string() const {
    std::string out = "{";
    bool sep = false;
    for (const auto& [deg, count] : towers)
      for (int i = 0; i < std::abs(count); ++i) {
        out += sep ? ", " : "";
        out += (count > 0 ? "+" : "-") + std::string("q^") + std::to_string(deg);
        sep = true;
      }
    out += "}";
    if (constant) out += " + " + std::to_string(constant);
    return out;
  }

  friend bool operator==(const BoxedJewelForm&, const BoxedJewelForm&) = default;
};

inline BoxedJewelForm normal_form(const Sock& s) {
  UntangleResult u = untangle(s);
  BoxedJewelForm f;
  for (const detail::Tower& t : detail::read_towers(detail::Lace::of(u.sock))) {
    int deg = t.m * t.omega;
    if ((f.towers[deg] += color(t.center)) == 0) f.towers.erase(deg);
  }
  return f;
}

inline BoxedJewelForm normal_form(const Tiling& t) {
  BoxedJewelForm f = normal_form(sock_of(t));
  f.constant = (int)invariant_poly(t).constant_term();
  return f;
}

// --------------------------------------------------------- full reduction

// Empty a sock with pivots allowed, staying inside its host graph.  Each
// step works at the bottom-right corner v of an innermost cycle and the
// vertex w diagonally northwest of v: when w is a jewel one pivot pulls it
// onto the curve, and otherwise one fold, reconnection or square deletion
// strictly reduces the area.  The step count therefore equals the starting
// area plus nothing: every move removes exactly one face.
inline std::vector<SockMove> reduce_to_empty(const Sock& s) {
  detail::Lace lace = detail::Lace::of(s);
  if (s.host()) lace.host = &*s.host();
  std::vector<SockMove> log;

  auto wind_one = [](const std::vector<Sq>& cyc, Sq p) {
    int w = 0;
    for (size_t i = 0; i < cyc.size(); ++i) {
      const Sq& a = cyc[i];
      const Sq& b = cyc[(i + 1) % cyc.size()];
      if (a.x != b.x || a.x <= p.x) continue;
      if (std::min(a.y, b.y) <= p.y && p.y < std::max(a.y, b.y)) w += b.y < a.y ? 1 : -1;
    }
    return w;
  };

  while (true) {
    std::vector<std::vector<Sq>> cycles = lace.cycles();
    if (cycles.empty()) break;
    // Innermost cycle: one that winds around no vertex of any other cycle.
    size_t pick = cycles.size();
    for (size_t i = 0; i < cycles.size() && pick == cycles.size(); ++i) {
      bool inner = true;
      for (size_t j = 0; j < cycles.size() && inner; ++j)
        if (j != i && wind_one(cycles[i], cycles[j][0]) != 0) inner = false;
      if (inner) pick = i;
    }
    if (pick == cycles.size()) throw InternalError("no innermost cycle found");
    const std::vector<Sq>& gamma = cycles[pick];

    Sq v = gamma[0];
    for (const Sq& p : gamma)
      if (std::make_pair(p.y, p.x) > std::make_pair(v.y, v.x)) v = p;

    // The face northwest of v and its corners.
    Sq f{v.x - 1, v.y - 1};
    Sq w = f;
    long long before = lace.area();
    std::vector<SockMove> ladder;
    if (!lace.on_curve(w)) {
      ladder.push_back({SockMove::Kind::TR, f, '+'});
      ladder.push_back({SockMove::Kind::TR, f, '-'});
    } else {
      ladder.push_back({SockMove::Kind::FC, f, '+'});
      ladder.push_back({SockMove::Kind::FC, f, '-'});
      ladder.push_back({SockMove::Kind::FB, f, 'n'});
      ladder.push_back({SockMove::Kind::FB, f, 'w'});
      ladder.push_back({SockMove::Kind::FA, {v.x - 2, v.y - 1}, 'v'});
      ladder.push_back({SockMove::Kind::FA, {v.x - 1, v.y - 2}, 'h'});
    }
    bool done = false;
    for (const SockMove& m : ladder) {
      detail::Lace probe = lace;
      try {
        probe.apply(m);
      } catch (const MoveError&) {
        continue;
      }
      if (probe.area() != before - 1) continue;
      lace = std::move(probe);
      log.push_back(m);
      done = true;
      break;
    }
    if (!done)
      throw InternalError("reduction found no descending move at (" + std::to_string(v.x) +
                          "," + std::to_string(v.y) + ")");
  }
  return log;
}

}  // namespace twistkit
