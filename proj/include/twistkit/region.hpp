#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "twistkit/errors.hpp"
#include "twistkit/geometry.hpp"

namespace twistkit {

// ---------------------------------------------------------------- planar sets

// 4-adjacent flood fill connectivity.
inline bool planar_connected(const std::set<Sq>& s) {
  if (s.empty()) return false;
  std::set<Sq> seen;
  std::vector<Sq> stack = {*s.begin()};
  seen.insert(*s.begin());
  while (!stack.empty()) {
    Sq p = stack.back();
    stack.pop_back();
    for (Sq n : {Sq{p.x + 1, p.y}, Sq{p.x - 1, p.y}, Sq{p.x, p.y + 1}, Sq{p.x, p.y - 1}})
      if (s.count(n) && seen.insert(n).second) stack.push_back(n);
  }
  return seen.size() == s.size();
}

// Connected and hole-free: the complement inside a one-square-enlarged
// bounding box must be 4-connected to the outer frame.
inline bool planar_simply_connected(const std::set<Sq>& s) {
  if (!planar_connected(s)) return false;
  int x0 = s.begin()->x, x1 = x0, y0 = s.begin()->y, y1 = y0;
  for (const Sq& p : s) {
    x0 = std::min(x0, p.x); x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y); y1 = std::max(y1, p.y);
  }
  x0--; x1++; y0--; y1++;
  std::set<Sq> outside;
  std::vector<Sq> stack = {{x0, y0}};
  outside.insert({x0, y0});
  while (!stack.empty()) {
    Sq p = stack.back();
    stack.pop_back();
    for (Sq n : {Sq{p.x + 1, p.y}, Sq{p.x - 1, p.y}, Sq{p.x, p.y + 1}, Sq{p.x, p.y - 1}}) {
      if (n.x < x0 || n.x > x1 || n.y < y0 || n.y > y1) continue;
      if (s.count(n)) continue;
      if (outside.insert(n).second) stack.push_back(n);
    }
  }
  size_t complement = (size_t)(x1 - x0 + 1) * (size_t)(y1 - y0 + 1) - s.size();
  return outside.size() == complement;
}

// ---------------------------------------------------------------- region

struct AxisReport {
  Axis axis = Axis::Z;
  // True when the region is base + [lo, lo+depth) along `axis` and the base
  // has connected interior.  `cylinder` additionally requires the base to be
  // simply connected.
  bool pseudocylinder = false;
  bool cylinder = false;
  bool column_uniform = false;  // every base column spans the same range
  std::vector<Sq> base;         // footprint (filled when column_uniform)
  int lo = 0, depth = 0;
};

struct Classification {
  std::array<AxisReport, 3> axes;
  bool box = false;
  int box_dims[3] = {0, 0, 0};  // L,M,N (x,y,z extents) when box
  // Region occupies two consecutive layers along this axis and both floors
  // are simply connected.  Preference order when several qualify: Z, X, Y.
  std::optional<Axis> two_story_axis;
  int two_story_lo = 0;
  std::optional<Axis> duplex_axis;  // cylinder of depth exactly 2

  const AxisReport& along(Axis a) const { return axes[(int)a]; }
};

class Region {
 public:
  explicit Region(std::vector<Cell> cells) : cells_(std::move(cells)) {
    if (cells_.empty()) throw DomainError("region must be nonempty");
    std::sort(cells_.begin(), cells_.end(), CanonLess{});
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    lo_ = hi_ = cells_[0];
    for (size_t i = 0; i < cells_.size(); ++i) {
      const Cell& c = cells_[i];
      lo_ = {std::min(lo_.x, c.x), std::min(lo_.y, c.y), std::min(lo_.z, c.z)};
      hi_ = {std::max(hi_.x, c.x), std::max(hi_.y, c.y), std::max(hi_.z, c.z)};
      (color(c) > 0 ? black_ : white_)++;
      index_.emplace(c, (int)i);
    }
  }

  static Region box(int L, int M, int N) {
    if (L < 1 || M < 1 || N < 1) throw DomainError("box dimensions must be positive");
    std::vector<Cell> cs;
    cs.reserve((size_t)L * M * N);
    for (int z = 0; z < N; ++z)
      for (int y = 0; y < M; ++y)
        for (int x = 0; x < L; ++x) cs.push_back({x, y, z});
    return Region(std::move(cs));
  }

  // Planar base extruded along an axis: base squares live in the two axes
  // complementary to `axis` (for Z the square (a,b) is (x,y); for X it is
  // (y,z); for Y it is (x,z)), layers lo .. lo+depth-1.
  static Region prism(const std::set<Sq>& base, Axis axis, int depth, int lo = 0) {
    if (base.empty() || depth < 1) throw DomainError("empty prism");
    std::vector<Cell> cs;
    for (int k = lo; k < lo + depth; ++k)
      for (const Sq& s : base) cs.push_back(cell_from_base(s, axis, k));
    return Region(std::move(cs));
  }

  static Cell cell_from_base(Sq s, Axis axis, int layer) {
    switch (axis) {
      case Axis::Z: return {s.x, s.y, layer};
      case Axis::X: return {layer, s.x, s.y};
      default: return {s.x, layer, s.y};
    }
  }
  static Sq base_of_cell(Cell c, Axis axis) {
    switch (axis) {
      case Axis::Z: return {c.x, c.y};
      case Axis::X: return {c.y, c.z};
      default: return {c.x, c.z};
    }
  }

  const std::vector<Cell>& cells() const { return cells_; }
  size_t size() const { return cells_.size(); }
  bool contains(const Cell& c) const { return index_.count(c) != 0; }
  int index_of(const Cell& c) const {
    auto it = index_.find(c);
    return it == index_.end() ? -1 : it->second;
  }
  const Cell& cell(int i) const { return cells_[(size_t)i]; }
  Cell bbox_lo() const { return lo_; }
  Cell bbox_hi() const { return hi_; }
  int blacks() const { return black_; }
  int whites() const { return white_; }

  // Face-adjacency connectivity of the cell set.
  bool connected() const {
    if (cells_.empty()) return true;
    std::vector<char> seen(cells_.size(), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
      Cell c = cells_[(size_t)stack.back()];
      stack.pop_back();
      for (Axis a : kAxes)
        for (int s : {-1, 1}) {
          int j = index_of(c + s * unit(a));
          if (j >= 0 && !seen[(size_t)j]) {
            seen[(size_t)j] = 1;
            reached++;
            stack.push_back(j);
          }
        }
    }
    return reached == cells_.size();
  }

  Region translated(Vec3 t) const {
    std::vector<Cell> cs;
    cs.reserve(cells_.size());
    for (const Cell& c : cells_) cs.push_back(c + t);
    return Region(std::move(cs));
  }

  friend bool operator==(const Region& a, const Region& b) { return a.cells_ == b.cells_; }

  // ------------------------------------------------------------- file format
  //
  // Lines starting with ';' are comments.  Floors are blocks of equal-width
  // rows over '#' (cell) and '.'; consecutive floors are separated by exactly
  // one blank line; floor k in file order sits at z = k, row r at y = r,
  // column c at x = c.
  static Region parse(const std::string& text) {
    std::vector<Cell> cs;
    int z = 0, y = 0, width = -1;
    int lineno = 0, blank_run = 0;
    bool in_floor = false;
    size_t pos = 0;
    auto next_line = [&](std::string& out) {
      if (pos >= text.size()) return false;
      size_t e = text.find('\n', pos);
      if (e == std::string::npos) e = text.size();
      out = text.substr(pos, e - pos);
      pos = e + (e < text.size() ? 1 : 0);
      lineno++;
      return true;
    };
    std::string line;
    while (next_line(line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line[0] == ';') continue;
      if (line.empty()) {
        if (in_floor) {
          z++;
          y = 0;
          width = -1;
          in_floor = false;
          blank_run = 1;
        } else {
          blank_run++;  // tolerated if leading or trailing; checked on next row
        }
        continue;
      }
      if (!in_floor) {
        if (!cs.empty() && blank_run != 1)
          throw ParseError("floors must be separated by exactly one blank line", lineno, 1);
        in_floor = true;
        blank_run = 0;
      }
      if (width < 0)
        width = (int)line.size();
      else if ((int)line.size() != width)
        throw ParseError("ragged row", lineno, (int)line.size() + 1);
      for (int x = 0; x < (int)line.size(); ++x) {
        char ch = line[(size_t)x];
        if (ch == '#')
          cs.push_back({x, y, z});
        else if (ch != '.')
          throw ParseError(std::string("illegal character '") + ch + "'", lineno, x + 1);
      }
      y++;
    }
    if (cs.empty()) throw ParseError("region has no cells", lineno, 1);
    return Region(std::move(cs));
  }

  std::string serialize() const {
    if (lo_.x < 0 || lo_.y < 0 || lo_.z < 0)
      throw DomainError("region with negative coordinates has no file form");
    std::string out;
    for (int z = 0; z <= hi_.z; ++z) {
      if (z) out += '\n';
      for (int y = 0; y <= hi_.y; ++y) {
        for (int x = 0; x <= hi_.x; ++x) out += contains({x, y, z}) ? '#' : '.';
        out += '\n';
      }
    }
    return out;
  }

  // ------------------------------------------------------------- classify
  const Classification& classify() const {
    if (!classification_) classification_ = compute_classification();
    return *classification_;
  }

 private:
  Classification compute_classification() const {
    Classification r;
    for (Axis a : kAxes) {
      AxisReport& ar = r.axes[(int)a];
      ar.axis = a;
      std::map<Sq, std::pair<int, int>> columns;  // base square -> [min,max] layer
      std::map<Sq, int> counts;
      for (const Cell& c : cells_) {
        Sq s = base_of_cell(c, a);
        int k = comp(c, a);
        auto [it, fresh] = columns.emplace(s, std::make_pair(k, k));
        if (!fresh) {
          it->second.first = std::min(it->second.first, k);
          it->second.second = std::max(it->second.second, k);
        }
        counts[s]++;
      }
      int lo = columns.begin()->second.first, hi = columns.begin()->second.second;
      bool uniform = true;
      for (auto& [s, mm] : columns) {
        if (mm.first != lo || mm.second != hi || counts[s] != hi - lo + 1) {
          uniform = false;
          break;
        }
      }
      ar.column_uniform = uniform;
      ar.lo = lo;
      ar.depth = hi - lo + 1;
      if (!uniform) continue;
      for (auto& [s, mm] : columns) ar.base.push_back(s);
      std::set<Sq> base(ar.base.begin(), ar.base.end());
      if (planar_connected(base)) {
        ar.pseudocylinder = true;
        ar.cylinder = planar_simply_connected(base);
      }
    }
    // Box: the cell set equals its bounding box.
    size_t vol = (size_t)(hi_.x - lo_.x + 1) * (size_t)(hi_.y - lo_.y + 1) *
                 (size_t)(hi_.z - lo_.z + 1);
    r.box = vol == cells_.size();
    if (r.box) {
      r.box_dims[0] = hi_.x - lo_.x + 1;
      r.box_dims[1] = hi_.y - lo_.y + 1;
      r.box_dims[2] = hi_.z - lo_.z + 1;
    }
    for (Axis a : {Axis::Z, Axis::X, Axis::Y}) {
      const AxisReport& ar = r.axes[(int)a];
      if (ar.cylinder && ar.depth == 2 && !r.duplex_axis) r.duplex_axis = a;
      if (ar.column_uniform && ar.depth == 2 && !r.two_story_axis) {
        if (two_story_floors_ok(a, ar.lo)) {
          r.two_story_axis = a;
          r.two_story_lo = ar.lo;
        }
      }
      // Unequal floors: column_uniform fails but the region may still span
      // exactly two layers along `a`.
      if (!ar.column_uniform && !r.two_story_axis) {
        int klo = comp(cells_[0], a), khi = klo;
        for (const Cell& c : cells_) {
          klo = std::min(klo, comp(c, a));
          khi = std::max(khi, comp(c, a));
        }
        if (khi - klo + 1 == 2 && two_story_floors_ok(a, klo)) {
          r.two_story_axis = a;
          r.two_story_lo = klo;
        }
      }
    }
    return r;
  }

  bool two_story_floors_ok(Axis a, int lo) const {
    std::set<Sq> f0, f1;
    for (const Cell& c : cells_) {
      int k = comp(c, a);
      if (k == lo)
        f0.insert(base_of_cell(c, a));
      else if (k == lo + 1)
        f1.insert(base_of_cell(c, a));
      else
        return false;
    }
    return !f0.empty() && !f1.empty() && connected() &&
           planar_simply_connected(f0) && planar_simply_connected(f1);
  }

  std::vector<Cell> cells_;
  std::unordered_map<Cell, int, CellHash> index_;
  Cell lo_, hi_;
  int black_ = 0, white_ = 0;
  mutable std::optional<Classification> classification_;
};

// ---------------------------------------------------------------- shade

// All cells of `clip` whose interior meets the open shade of X along u, i.e.
// interior((X + [0,inf)u) \ X).  For unit axis directions this is exactly the
// columnwise test implemented here; tests cross-check it against a sampling
// rasterizer.
inline std::vector<Cell> shade_cells(const std::vector<Cell>& X, Vec3 u,
                                     const Region& clip) {
  if (std::abs(u.x) + std::abs(u.y) + std::abs(u.z) != 1)
    throw DomainError("shade direction must be an axis unit vector");
  std::unordered_set<Cell, CellHash> xs(X.begin(), X.end());
  std::vector<Cell> out;
  for (const Cell& c : clip.cells()) {
    if (xs.count(c)) continue;
    for (Cell p = c - u;; p = p - u) {
      if (xs.count(p)) {
        out.push_back(c);
        break;
      }
      // Stop once every cell of X lies strictly ahead of p along +u; the
      // walk heads the other way and can never reach them.
      int t = dot({p.x, p.y, p.z}, u);
      bool reachable = false;
      for (const Cell& xc : X)
        if (dot({xc.x, xc.y, xc.z}, u) <= t) {
          reachable = true;
          break;
        }
      if (!reachable) break;
    }
  }
  return out;
}

}  // namespace twistkit
