// Flip-connectivity structure of a tiling space: partition all tilings into
// classes reachable from one another by flips alone, then record how trit
// moves hop between the classes.
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "twistkit/drawing.hpp"
#include "twistkit/effects.hpp"
#include "twistkit/enumerate.hpp"
#include "twistkit/errors.hpp"
#include "twistkit/laurent.hpp"
#include "twistkit/moves.hpp"
#include "twistkit/threads.hpp"
#include "twistkit/tiling.hpp"

namespace twistkit {

// 64-bit FNV-1a, used to stamp reports with the region they describe.
inline uint64_t fnv1a(std::string_view bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

struct Component {
  uint64_t size = 0;
  // Lexicographically least tiling encoding in the class; doubles as the
  // deterministic representative.
  std::string representative;
  std::optional<long long> twist;  // set when the region is a cylinder
  std::optional<Laurent> poly;     // set when the region is two floors tall
};

// Trit transitions between components a and b.  `up` counts sign +1 moves
// from a-tilings landing in b; `down` counts sign -1 moves from a into b.
// Move inversion guarantees up(a,b) == down(b,a), so the two fields describe
// both directions.
struct TritEdge {
  int a = 0, b = 0;  // a < b, indices into `components`
  uint64_t up = 0, down = 0;
};

struct ComponentDecomposition {
  uint64_t region_hash = 0;
  uint64_t tiling_count = 0;
  std::vector<Component> components;  // largest first, ties by representative
  std::vector<TritEdge> trit_edges;   // sorted by (a, b)
};

constexpr uint64_t kDefaultComponentCap = 2'000'000;

// Enumerates the full tiling space (CapacityError past `cap`), floods it with
// flips, and tests every trit of every tiling to build the component graph.
// Output is deterministic regardless of worker count.
inline ComponentDecomposition flip_components(std::shared_ptr<const Region> region,
                                              uint64_t cap = kDefaultComponentCap) {
  ComponentDecomposition out;
  out.region_hash = fnv1a(region->serialize());

  std::vector<std::string> all;
  for_each_tiling(region, [&](const Tiling& t) { all.push_back(t.canonical_encoding()); },
                  cap);
  out.tiling_count = all.size();
  if (all.empty()) return out;
  std::sort(all.begin(), all.end());

  auto materialize = [&](const std::string& text) {
    return Tiling(region, Tiling::parse(text).partners());
  };

  // Flood fill in encoding order, so each component is discovered at its
  // lexicographically least member.
  std::unordered_map<std::string_view, int> comp_of;
  comp_of.reserve(all.size() * 2);
  for (const std::string& enc : all) comp_of.emplace(enc, -1);
  std::vector<Component> comps;
  for (const std::string& seed : all) {
    if (comp_of.at(seed) >= 0) continue;
    int id = (int)comps.size();
    Component c;
    c.representative = seed;
    std::deque<Tiling> frontier;
    frontier.push_back(materialize(seed));
    comp_of.at(seed) = id;
    c.size = 1;
    while (!frontier.empty()) {
      Tiling t = std::move(frontier.front());
      frontier.pop_front();
      for (const FlipMove& m : list_flips(t)) {
        Tiling next = apply_flip(t, m);
        auto it = comp_of.find(std::string_view(next.canonical_encoding()));
        if (it == comp_of.end())
          throw InternalError("flip left the enumerated tiling space");
        if (it->second >= 0) continue;
        it->second = id;
        c.size++;
        frontier.push_back(std::move(next));
      }
    }
    comps.push_back(std::move(c));
  }

  // Reorder: largest class first, ties broken by representative.
  std::vector<int> order((size_t)comps.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (comps[(size_t)x].size != comps[(size_t)y].size)
      return comps[(size_t)x].size > comps[(size_t)y].size;
    return comps[(size_t)x].representative < comps[(size_t)y].representative;
  });
  std::vector<int> new_id((size_t)comps.size());
  for (size_t i = 0; i < order.size(); ++i) new_id[(size_t)order[i]] = (int)i;
  for (int old : order) out.components.push_back(std::move(comps[(size_t)old]));

  const Classification& cls = region->classify();
  bool cylinder = cls.axes[0].cylinder || cls.axes[1].cylinder || cls.axes[2].cylinder;
  for (Component& c : out.components) {
    Tiling rep = materialize(c.representative);
    if (cylinder) c.twist = twist(rep);
    if (cls.two_story_axis) c.poly = invariant_poly(rep);
  }

  // Trit census: count every (tiling, trit) instance by source component,
  // target component, and sign.  Chunked across workers; merging per-thread
  // tallies keeps the totals independent of scheduling.
  using Key = std::pair<int, int>;
  std::map<Key, std::pair<uint64_t, uint64_t>> tally;  // (a,b) -> (up, down)
  {
    unsigned workers = worker_count();
    std::vector<std::map<Key, std::pair<uint64_t, uint64_t>>> local(workers);
    size_t chunk = (all.size() + workers - 1) / workers;
    parallel_for(workers, [&](size_t w) {
      size_t lo = w * chunk, hi = std::min(all.size(), lo + chunk);
      for (size_t i = lo; i < hi; ++i) {
        Tiling t = materialize(all[i]);
        int a = new_id[(size_t)comp_of.at(std::string_view(all[i]))];
        for (const TritMove& m : list_trits(t)) {
          Tiling next = apply_trit(t, m);
          auto it = comp_of.find(std::string_view(next.canonical_encoding()));
          if (it == comp_of.end())
            throw InternalError("trit left the enumerated tiling space");
          int b = new_id[(size_t)it->second];
          auto& cell = local[w][{a, b}];
          (m.sign > 0 ? cell.first : cell.second)++;
        }
      }
    });
    for (const auto& part : local)
      for (const auto& [key, counts] : part) {
        tally[key].first += counts.first;
        tally[key].second += counts.second;
      }
  }
  for (const auto& [key, counts] : tally) {
    auto [a, b] = key;
    if (a > b) continue;  // mirrored by the (b, a) entry
    auto back = tally.find({b, a});
    uint64_t rev_up = back == tally.end() ? 0 : back->second.first;
    uint64_t rev_down = back == tally.end() ? 0 : back->second.second;
    if (counts.first != rev_down || counts.second != rev_up)
      throw InternalError("trit census is not symmetric under move inversion");
    if (a == b && (counts.first || counts.second))
      throw InternalError("trit stayed inside a flip class");
    out.trit_edges.push_back({a, b, counts.first, counts.second});
  }
  return out;
}

}  // namespace twistkit
