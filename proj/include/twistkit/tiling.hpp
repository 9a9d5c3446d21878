#pragma once

#include <cstdlib>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "twistkit/errors.hpp"
#include "twistkit/geometry.hpp"
#include "twistkit/region.hpp"

namespace twistkit {

// Two axis-adjacent cells; `a` precedes `b` in scan order.
struct Domino {
  Cell a, b;

  Domino(Cell p, Cell q) : a(p), b(q) {
    int d = std::abs(p.x - q.x) + std::abs(p.y - q.y) + std::abs(p.z - q.z);
    if (d != 1) throw DomainError("domino cells must be adjacent");
    if (canon_less(b, a)) std::swap(a, b);
  }

  Axis axis() const {
    if (a.x != b.x) return Axis::X;
    if (a.y != b.y) return Axis::Y;
    return Axis::Z;
  }
  Cell black() const { return color(a) > 0 ? a : b; }
  Cell white() const { return color(a) > 0 ? b : a; }
  bool covers(const Cell& c) const { return c == a || c == b; }

  friend bool operator==(const Domino& x, const Domino& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator<(const Domino& x, const Domino& y) {
    return canon_less(x.a, y.a) || (x.a == y.a && canon_less(x.b, y.b));
  }
};

// Unit step from the white cell to the black cell.
inline Vec3 dir(const Domino& d) {
  Cell w = d.white(), k = d.black();
  return {k.x - w.x, k.y - w.y, k.z - w.z};
}

inline Domino translated(const Domino& d, Vec3 t) { return Domino(d.a + t, d.b + t); }

class Tiling {
 public:
  Tiling(std::shared_ptr<const Region> region, std::vector<int> partner)
      : region_(std::move(region)), partner_(std::move(partner)) {
    if (!region_ || partner_.size() != region_->size())
      throw DomainError("partner table does not match region");
    for (int i = 0; i < (int)partner_.size(); ++i) {
      int j = partner_[(size_t)i];
      if (j < 0 || j >= (int)partner_.size() || j == i || partner_[(size_t)j] != i)
        throw DomainError("partner table is not an involution");
      Cell a = region_->cell(i), b = region_->cell(j);
      int d = std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
      if (d != 1) throw DomainError("paired cells are not adjacent");
    }
  }

  const Region& region() const { return *region_; }
  std::shared_ptr<const Region> region_ptr() const { return region_; }
  int partner(int i) const { return partner_[(size_t)i]; }
  const std::vector<int>& partners() const { return partner_; }
  size_t domino_count() const { return partner_.size() / 2; }

  Domino domino_at(const Cell& c) const {
    int i = region_->index_of(c);
    if (i < 0) throw DomainError("cell not in region");
    return Domino(c, region_->cell(partner_[(size_t)i]));
  }

  // Each domino once, ordered by its scan-first cell.
  std::vector<Domino> dominoes() const {
    std::vector<Domino> out;
    out.reserve(domino_count());
    for (int i = 0; i < (int)partner_.size(); ++i)
      if (i < partner_[(size_t)i])
        out.push_back(Domino(region_->cell(i), region_->cell(partner_[(size_t)i])));
    return out;
  }

  friend bool operator==(const Tiling& s, const Tiling& t) {
    return s.region_->cells() == t.region_->cells() && s.partner_ == t.partner_;
  }

  // ------------------------------------------------------------- file format
  //
  // Same grid layout as region files with each '#' replaced by the marker of
  // its partner's direction:  '<' x-1   '>' x+1   '^' y-1   'v' y+1
  //                           'F' z+1   'B' z-1
  std::string serialize() const {
    const Region& r = *region_;
    if (r.bbox_lo().x < 0 || r.bbox_lo().y < 0 || r.bbox_lo().z < 0)
      throw DomainError("tiling with negative coordinates has no file form");
    std::string out;
    for (int z = 0; z <= r.bbox_hi().z; ++z) {
      if (z) out += '\n';
      for (int y = 0; y <= r.bbox_hi().y; ++y) {
        for (int x = 0; x <= r.bbox_hi().x; ++x) {
          int i = r.index_of({x, y, z});
          if (i < 0) {
            out += '.';
            continue;
          }
          Cell p = r.cell(partner_[(size_t)i]);
          if (p.x == x - 1) out += '<';
          else if (p.x == x + 1) out += '>';
          else if (p.y == y - 1) out += '^';
          else if (p.y == y + 1) out += 'v';
          else if (p.z == z + 1) out += 'F';
          else out += 'B';
        }
        out += '\n';
      }
    }
    return out;
  }

  // Canonical encoding used for hashing and component representatives.
  std::string canonical_encoding() const { return serialize(); }

  static Tiling parse(const std::string& text) {
    struct Mark {
      Cell cell;
      Vec3 to;
      int line, col;
    };
    std::vector<Mark> marks;
    int z = 0, y = 0, width = -1;
    int lineno = 0, blank_run = 0;
    bool in_floor = false;
    size_t pos = 0;
    std::string line;
    auto next_line = [&]() {
      if (pos >= text.size()) return false;
      size_t e = text.find('\n', pos);
      if (e == std::string::npos) e = text.size();
      line = text.substr(pos, e - pos);
      pos = e + (e < text.size() ? 1 : 0);
      lineno++;
      return true;
    };
    while (next_line()) {
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
          blank_run++;
        }
        continue;
      }
      if (!in_floor) {
        if (!marks.empty() && blank_run != 1)
          throw ParseError("floors must be separated by exactly one blank line", lineno, 1);
        in_floor = true;
        blank_run = 0;
      }
      if (width < 0)
        width = (int)line.size();
      else if ((int)line.size() != width)
        throw ParseError("ragged row", lineno, (int)line.size() + 1);
      for (int x = 0; x < (int)line.size(); ++x) {
        Vec3 to{};
        switch (line[(size_t)x]) {
          case '.': continue;
          case '<': to = {-1, 0, 0}; break;
          case '>': to = {1, 0, 0}; break;
          case '^': to = {0, -1, 0}; break;
          case 'v': to = {0, 1, 0}; break;
          case 'F': to = {0, 0, 1}; break;
          case 'B': to = {0, 0, -1}; break;
          default:
            throw ParseError(std::string("illegal character '") + line[(size_t)x] + "'",
                             lineno, x + 1);
        }
        marks.push_back({{x, y, z}, to, lineno, x + 1});
      }
      y++;
    }
    if (marks.empty()) throw ParseError("tiling has no cells", lineno, 1);
    std::vector<Cell> cells;
    cells.reserve(marks.size());
    for (const Mark& m : marks) cells.push_back(m.cell);
    auto region = std::make_shared<Region>(std::move(cells));
    std::vector<int> partner(region->size(), -1);
    for (const Mark& m : marks) {
      int i = region->index_of(m.cell);
      int j = region->index_of(m.cell + m.to);
      if (j < 0)
        throw ParseError("marker points outside the region", m.line, m.col);
      partner[(size_t)i] = j;
    }
    for (const Mark& m : marks) {
      int i = region->index_of(m.cell);
      if (partner[(size_t)partner[(size_t)i]] != i)
        throw ParseError("markers do not pair up", m.line, m.col);
    }
    return Tiling(std::move(region), std::move(partner));
  }

 private:
  std::shared_ptr<const Region> region_;
  std::vector<int> partner_;
};

struct TilingHash {
  size_t operator()(const Tiling& t) const {
    return std::hash<std::string>{}(t.canonical_encoding());
  }
};

}  // namespace twistkit
