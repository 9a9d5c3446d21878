#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_map>
#include <vector>

#include "twistkit/errors.hpp"
#include "twistkit/numbers.hpp"
#include "twistkit/region.hpp"
#include "twistkit/tiling.hpp"

namespace twistkit {

// Perfect-matching feasibility on the adjacency graph of black vs white
// cells, by repeated augmenting-path search.
inline bool is_tileable(const Region& r) {
  if (r.size() % 2 || r.blacks() != r.whites()) return false;
  int n = (int)r.size();
  std::vector<int> blacks;
  for (int i = 0; i < n; ++i)
    if (color(r.cell(i)) > 0) blacks.push_back(i);
  std::vector<std::vector<int>> adj(blacks.size());
  for (size_t b = 0; b < blacks.size(); ++b) {
    Cell c = r.cell(blacks[b]);
    for (Axis a : kAxes)
      for (int s : {1, -1}) {
        int j = r.index_of(c + s * unit(a));
        if (j >= 0) adj[b].push_back(j);
      }
  }
  std::vector<int> match_white(n, -1);  // cell index -> black slot
  std::vector<int> seen(n, -1);
  std::function<bool(int, int)> try_augment = [&](int b, int stamp) {
    for (int w : adj[(size_t)b]) {
      if (seen[(size_t)w] == stamp) continue;
      seen[(size_t)w] = stamp;
      if (match_white[(size_t)w] < 0 || try_augment(match_white[(size_t)w], stamp)) {
        match_white[(size_t)w] = b;
        return true;
      }
    }
    return false;
  };
  int matched = 0;
  for (size_t b = 0; b < blacks.size(); ++b)
    if (try_augment((int)b, (int)b)) matched++;
  return matched == (int)blacks.size();
}

constexpr uint64_t kDefaultEnumCap = 100'000'000;

// Visits every tiling exactly once, in the canonical order: repeatedly pair
// the scan-first uncovered cell with its free +x, then +y, then +z neighbor.
// Returns the number of tilings visited.  Throws CapacityError past `cap`
// unless `unbounded`.
inline uint64_t for_each_tiling(std::shared_ptr<const Region> region,
                                const std::function<void(const Tiling&)>& visit,
                                uint64_t cap = kDefaultEnumCap, bool unbounded = false) {
  const Region& r = *region;
  int n = (int)r.size();
  if (n % 2) return 0;
  // Forward neighbors only: earlier scan positions are always covered first.
  std::vector<std::array<int, 3>> fwd((size_t)n);
  for (int i = 0; i < n; ++i) {
    Cell c = r.cell(i);
    fwd[(size_t)i] = {r.index_of(c + unit(Axis::X)), r.index_of(c + unit(Axis::Y)),
                      r.index_of(c + unit(Axis::Z))};
  }
  std::vector<int> partner((size_t)n, -1);
  uint64_t count = 0;
  std::function<void(int)> go = [&](int from) {
    int i = from;
    while (i < n && partner[(size_t)i] >= 0) i++;
    if (i == n) {
      if (++count > cap && !unbounded)
        throw CapacityError("tiling enumeration exceeded cap of " + std::to_string(cap));
      if (visit) visit(Tiling(region, partner));
      return;
    }
    for (int j : fwd[(size_t)i]) {
      if (j < 0 || partner[(size_t)j] >= 0) continue;
      partner[(size_t)i] = j;
      partner[(size_t)j] = i;
      go(i + 1);
      partner[(size_t)i] = -1;
      partner[(size_t)j] = -1;
    }
  };
  go(0);
  return count;
}

inline uint64_t count_by_enumeration(const Region& r, uint64_t cap = kDefaultEnumCap,
                                     bool unbounded = false) {
  return for_each_tiling(std::make_shared<Region>(r), nullptr, cap, unbounded);
}

// Exact box count by broken-profile dynamic programming.  The scan window
// covers one full interface of the two smallest dimensions; each bit of the
// profile says whether a scan cell is already covered by an earlier domino.
inline BigInt count_tilings_box(int L, int M, int N) {
  if (L < 1 || M < 1 || N < 1) throw DomainError("box dimensions must be positive");
  if ((int64_t)L * M > 24)
    throw CapacityError("profile width " + std::to_string((int64_t)L * M) +
                        " exceeds cap 24");
  int d[3] = {L, M, N};
  std::sort(d, d + 3);  // scan along the largest dimension
  const int X = d[0], Y = d[1], Z = d[2], W = X * Y;
  const int64_t V = (int64_t)W * Z;
  if (V % 2) return 0;
  std::unordered_map<uint32_t, BigInt> cur, next;
  cur.reserve(1u << std::min(W, 20));
  cur[0] = 1;
  auto add = [&](uint32_t mask, const BigInt& c) { next[mask] += c; };
  for (int64_t k = 0; k < V; ++k) {
    int x = (int)(k % X), y = (int)((k / X) % Y);
    int z = (int)(k / W);
    next.clear();
    for (const auto& [mask, c] : cur) {
      if (mask & 1) {
        add(mask >> 1, c);
        continue;
      }
      if (x + 1 < X && !(mask & 2)) add((mask | 2u) >> 1, c);
      if (y + 1 < Y && !(mask & (1u << X))) add((mask | (1u << X)) >> 1, c);
      if (z + 1 < Z) add((mask >> 1) | (1u << (W - 1)), c);
    }
    std::swap(cur, next);
  }
  auto it = cur.find(0);
  return it == cur.end() ? BigInt(0) : it->second;
}

}  // namespace twistkit
