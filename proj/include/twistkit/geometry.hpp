#pragma once

#include <array>
#include <cassert>
#include <compare>
#include <cstdint>
#include <functional>
#include <tuple>

namespace twistkit {

// Unit cube with minimal corner (x,y,z); occupies (x,y,z) + [0,1]^3.
struct Cell {
  int x = 0, y = 0, z = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Canonical order is (z,y,x) lexicographic: floor by floor, then row, then
// column.  All serialization, enumeration and hashing use this order.
inline bool canon_less(const Cell& a, const Cell& b) {
  return std::tie(a.z, a.y, a.x) < std::tie(b.z, b.y, b.x);
}
struct CanonLess {
  bool operator()(const Cell& a, const Cell& b) const { return canon_less(a, b); }
};

// +1 = black, -1 = white.
inline int color(const Cell& c) { return ((c.x + c.y + c.z) & 1) ? +1 : -1; }

struct CellHash {
  size_t operator()(const Cell& c) const {
    uint64_t h = (uint64_t)(uint32_t)c.x * 0x9E3779B97F4A7C15ull;
    h ^= (uint64_t)(uint32_t)c.y * 0xC2B2AE3D27D4EB4Full;
    h ^= (uint64_t)(uint32_t)c.z * 0x165667B19E3779F9ull;
    h ^= h >> 29;
    return (size_t)h;
  }
};

struct Vec3 {
  int x = 0, y = 0, z = 0;
  friend bool operator==(const Vec3&, const Vec3&) = default;
  Vec3 operator-() const { return {-x, -y, -z}; }
  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(int k, Vec3 a) { return {k * a.x, k * a.y, k * a.z}; }
};

inline Cell operator+(Cell c, Vec3 v) { return {c.x + v.x, c.y + v.y, c.z + v.z}; }
inline Cell operator-(Cell c, Vec3 v) { return {c.x - v.x, c.y - v.y, c.z - v.z}; }

enum class Axis : int { X = 0, Y = 1, Z = 2 };
constexpr std::array<Axis, 3> kAxes = {Axis::X, Axis::Y, Axis::Z};

inline Vec3 unit(Axis a) {
  switch (a) {
    case Axis::X: return {1, 0, 0};
    case Axis::Y: return {0, 1, 0};
    default: return {0, 0, 1};
  }
}

inline int comp(const Vec3& v, Axis a) {
  return a == Axis::X ? v.x : a == Axis::Y ? v.y : v.z;
}
inline int comp(const Cell& c, Axis a) {
  return a == Axis::X ? c.x : a == Axis::Y ? c.y : c.z;
}
inline Cell with_comp(Cell c, Axis a, int value) {
  (a == Axis::X ? c.x : a == Axis::Y ? c.y : c.z) = value;
  return c;
}

inline int dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline int det3(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  // Determinant of the matrix with columns c0, c1, c2.
  return c0.x * (c1.y * c2.z - c1.z * c2.y) - c1.x * (c0.y * c2.z - c0.z * c2.y) +
         c2.x * (c0.y * c1.z - c0.z * c1.y);
}

// Positively oriented orthonormal basis drawn from {±e_x, ±e_y, ±e_z}.
struct Basis {
  Vec3 b1, b2, b3;
  Basis(Vec3 v1, Vec3 v2, Vec3 v3) : b1(v1), b2(v2), b3(v3) {
    assert(det3(b1, b2, b3) == 1);
  }
  static Basis around(Vec3 b3) {
    // A canonical right-handed completion of the given third vector.
    for (Axis a1 : kAxes)
      for (int s1 : {1, -1})
        for (Axis a2 : kAxes)
          for (int s2 : {1, -1}) {
            Vec3 v1 = s1 * unit(a1), v2 = s2 * unit(a2);
            if (det3(v1, v2, b3) == 1) return Basis(v1, v2, b3);
          }
    assert(false && "b3 must be a signed unit axis vector");
    return Basis({1, 0, 0}, {0, 1, 0}, {0, 0, 1});
  }
};

// Planar lattice square, also used as a lattice vertex for 2D cycle work.
struct Sq {
  int x = 0, y = 0;
  friend bool operator==(const Sq&, const Sq&) = default;
  friend auto operator<=>(const Sq& a, const Sq& b) {
    return std::tie(a.y, a.x) <=> std::tie(b.y, b.x);
  }
};

inline int color(const Sq& s) { return ((s.x + s.y) & 1) ? +1 : -1; }

struct SqHash {
  size_t operator()(const Sq& s) const {
    return std::hash<uint64_t>()(((uint64_t)(uint32_t)s.x << 32) | (uint32_t)s.y);
  }
};

}  // namespace twistkit
