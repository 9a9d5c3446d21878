#include <catch2/catch_amalgamated.hpp>
#include <set>
#include <vector>

#include "helpers.hpp"
#include "twistkit/drawing.hpp"
#include "twistkit/effects.hpp"
#include "twistkit/enumerate.hpp"
#include "twistkit/moves.hpp"

using namespace twistkit;
using testutil::make_tiling;

// Independent winding oracle: accumulate quadrant transitions of the vertex
// vectors around the probe point, resolving antipodal jumps with the cross
// product.  Counts mathematically counterclockwise laps as positive, i.e. the
// opposite sign of the library's screen-oriented convention.
static int winding_oracle_ccw(const std::vector<Sq>& cycle, int x2, int y2) {
  // y2 is odd, so relative y never vanishes; a vertex straight above or
  // below the probe goes to the quadrant on its counterclockwise side.
  auto quadrant = [](long long rx, long long ry) {
    if (ry > 0) return rx > 0 ? 0 : 1;
    return rx < 0 ? 2 : 3;
  };
  long long total = 0;
  size_t n = cycle.size();
  for (size_t i = 0; i < n; ++i) {
    long long ax = 2LL * cycle[i].x - x2, ay = 2LL * cycle[i].y - y2;
    long long bx = 2LL * cycle[(i + 1) % n].x - x2,
              by = 2LL * cycle[(i + 1) % n].y - y2;
    int dq = (quadrant(bx, by) - quadrant(ax, ay) + 4) % 4;
    long long cross = ax * by - ay * bx;
    if (dq == 1) total += 1;
    else if (dq == 3) total -= 1;
    else if (dq == 2) total += cross > 0 ? 2 : -2;
  }
  REQUIRE(total % 4 == 0);
  return (int)(total / 4);
}

// Tiling of a 7x4x2 box built to project onto two nested structures: a
// 12-cycle wrapping one dark square, a 10-cycle ring with a trivial cycle
// inside, a second trivial cycle, and a light square outside everything.
static Tiling box742() {
  std::vector<Cell> cells;
  for (int z = 0; z < 2; ++z)
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 7; ++x) cells.push_back({x, y, z});
  return make_tiling(
      cells,
      {
          // 12-cycle around square (2,1)
          {{0, 0, 0}, {0, 1, 0}}, {{0, 1, 1}, {1, 1, 1}}, {{1, 1, 0}, {1, 2, 0}},
          {{1, 2, 1}, {1, 3, 1}}, {{1, 3, 0}, {2, 3, 0}}, {{2, 3, 1}, {2, 2, 1}},
          {{2, 2, 0}, {3, 2, 0}}, {{3, 2, 1}, {3, 1, 1}}, {{3, 1, 0}, {3, 0, 0}},
          {{3, 0, 1}, {2, 0, 1}}, {{2, 0, 0}, {1, 0, 0}}, {{1, 0, 1}, {0, 0, 1}},
          // 10-cycle ring over the right block
          {{4, 0, 0}, {4, 1, 0}}, {{4, 1, 1}, {4, 2, 1}}, {{4, 2, 0}, {4, 3, 0}},
          {{4, 3, 1}, {5, 3, 1}}, {{5, 3, 0}, {6, 3, 0}}, {{6, 3, 1}, {6, 2, 1}},
          {{6, 2, 0}, {6, 1, 0}}, {{6, 1, 1}, {6, 0, 1}}, {{6, 0, 0}, {5, 0, 0}},
          {{5, 0, 1}, {4, 0, 1}},
          // trivial cycles
          {{5, 1, 0}, {5, 2, 0}}, {{5, 2, 1}, {5, 1, 1}},
          {{0, 2, 0}, {0, 3, 0}}, {{0, 3, 1}, {0, 2, 1}},
          // jewels
          {{2, 1, 0}, {2, 1, 1}}, {{3, 3, 0}, {3, 3, 1}},
      });
}

// Two unequal simply connected floors over a 4x3 footprint: the lower floor
// misses (0,2), the upper floor misses (2,0).  One source, one sink.
static std::shared_ptr<Region> unequal_floors_region() {
  std::vector<Cell> cells;
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 4; ++x) {
      if (!(x == 0 && y == 2)) cells.push_back({x, y, 0});
      if (!(x == 2 && y == 0)) cells.push_back({x, y, 1});
    }
  return std::make_shared<Region>(std::move(cells));
}

static Tiling unequal_floors_tiling() {
  auto region = unequal_floors_region();
  std::vector<int> partner((size_t)region->size(), -1);
  auto pair_up = [&](Cell a, Cell b) {
    partner[(size_t)region->index_of(a)] = region->index_of(b);
    partner[(size_t)region->index_of(b)] = region->index_of(a);
  };
  pair_up({2, 1, 0}, {2, 1, 1});  // the lone jewel, on a dark square
  pair_up({0, 0, 0}, {1, 0, 0});
  pair_up({2, 0, 0}, {3, 0, 0});
  pair_up({0, 1, 0}, {1, 1, 0});
  pair_up({1, 2, 0}, {2, 2, 0});
  pair_up({3, 1, 0}, {3, 2, 0});
  pair_up({0, 0, 1}, {0, 1, 1});
  pair_up({1, 0, 1}, {1, 1, 1});
  pair_up({3, 0, 1}, {3, 1, 1});
  pair_up({0, 2, 1}, {1, 2, 1});
  pair_up({2, 2, 1}, {3, 2, 1});
  return Tiling(region, partner);
}

TEST_CASE("winding by ray casting") {
  // Screen-counterclockwise square: +1 inside, 0 outside.
  std::vector<Sq> square = {{1, 0}, {1, 2}, {3, 2}, {3, 0}};
  REQUIRE(winding(square, {2, 1}) == 1);
  REQUIRE(winding(square, {0, 1}) == 0);
  REQUIRE(winding(square, {4, 1}) == 0);
  REQUIRE(winding(square, {2, 3}) == 0);
  REQUIRE_THROWS_AS(winding(square, {1, 2}), DomainError);

  // Spiral passing the probe twice, checked against the quadrant oracle.
  std::vector<Sq> spiral = {{0, 0}, {4, 0}, {4, 4}, {0, 4}, {0, 1},
                            {3, 1}, {3, 3}, {1, 3}, {1, 2}, {1, 0}};
  REQUIRE(winding(spiral, {2, 2}) == -2);
  auto on_polyline = [](const std::vector<Sq>& cyc, Sq p) {
    for (size_t i = 0; i < cyc.size(); ++i) {
      Sq a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      if (a.x == b.x && p.x == a.x && p.y >= std::min(a.y, b.y) &&
          p.y <= std::max(a.y, b.y))
        return true;
      if (a.y == b.y && p.y == a.y && p.x >= std::min(a.x, b.x) &&
          p.x <= std::max(a.x, b.x))
        return true;
    }
    return false;
  };
  for (const auto& cyc : {square, spiral})
    for (int x = -1; x <= 5; ++x)
      for (int y = -1; y <= 5; ++y) {
        if (on_polyline(cyc, {x, y})) continue;
        int ccw = winding_oracle_ccw(cyc, 2 * x, 2 * y + 1);
        REQUIRE(winding(cyc, {x, y}) == -ccw);
      }
}

TEST_CASE("projected picture of a box tiling") {
  Tiling t = box742();
  Drawing d = drawing(t);
  REQUIRE(d.paths.empty());
  REQUIRE(d.jewels.size() == 2);
  REQUIRE(d.cycles.size() == 4);
  int trivial = 0;
  size_t covered = d.jewels.size();
  for (const auto& c : d.cycles) {
    trivial += c.size() == 2;
    covered += c.size();
  }
  REQUIRE(trivial == 2);
  REQUIRE(covered == 28);
  REQUIRE(d.jewels[0].second + d.jewels[1].second == 0);  // opposite colors

  REQUIRE(invariant_poly(t) == Laurent::parse("q - 1"));
  REQUIRE(twist_from_poly(t) == 1);
  REQUIRE(twist(t) == 1);
}

TEST_CASE("pinwheel polynomials and reflections") {
  Tiling pin = testutil::pinwheel_332();
  REQUIRE(invariant_poly(pin) == Laurent::parse("-q^-1"));
  REQUIRE(twist_from_poly(pin) == 1);
  Tiling mirrored = reflected(pin, Axis::X);
  REQUIRE(invariant_poly(mirrored) == Laurent::parse("-q"));
  REQUIRE(twist_from_poly(mirrored) == -1);
}

TEST_CASE("derivative at one matches the interaction sum") {
  auto r332 = std::make_shared<Region>(Region::box(3, 3, 2));
  std::map<Laurent, uint64_t> census;
  for_each_tiling(r332, [&](const Tiling& t) {
    Laurent p = invariant_poly(t);
    REQUIRE(p.derivative_at_one() == twist(t));
    REQUIRE(p.at_one() == -1);  // 4 dark vs 5 light base squares
    census[p]++;
  });
  std::map<Laurent, uint64_t> expected = {
      {Laurent::parse("-1"), 227},
      {Laurent::parse("-q"), 1},
      {Laurent::parse("-q^-1"), 1},
  };
  REQUIRE(census == expected);

  // A box that is two floors along x exercises the rotated frame.
  auto r224 = std::make_shared<Region>(Region::box(2, 2, 4));
  REQUIRE(r224->classify().two_story_axis == Axis::X);
  for_each_tiling(r224, [&](const Tiling& t) {
    REQUIRE(twist_from_poly(t) == twist(t));
  });
}

TEST_CASE("flips fix the polynomial, trits slide one term") {
  auto region = std::make_shared<Region>(Region::box(3, 3, 2));
  uint64_t trits = 0;
  for_each_tiling(region, [&](const Tiling& t) {
    Laurent p = invariant_poly(t);
    for (const FlipMove& m : list_flips(t))
      REQUIRE(invariant_poly(apply_flip(t, m)) == p);
    for (const TritMove& m : list_trits(t)) {
      Laurent d = invariant_poly(apply_trit(t, m)) - p;
      trits++;
      // d == sign * q^k (q - 1) for some k
      REQUIRE(d.max_degree() == d.min_degree() + 1);
      REQUIRE(d.coeff(d.max_degree()) == m.sign);
      REQUIRE(d.coeff(d.min_degree()) == -m.sign);
    }
  });
  REQUIRE(trits > 0);
}

TEST_CASE("all-vertical duplex tilings draw as pure jewels") {
  auto region = std::make_shared<Region>(Region::box(3, 3, 2));
  std::vector<int> partner((size_t)region->size(), -1);
  for (int i = 0; i < (int)region->size(); ++i) {
    if (partner[(size_t)i] >= 0) continue;
    int j = region->index_of(region->cell(i) + unit(Axis::Z));
    partner[(size_t)i] = j;
    partner[(size_t)j] = i;
  }
  Tiling t(region, partner);
  Drawing d = drawing(t);
  REQUIRE(d.cycles.empty());
  REQUIRE(d.paths.empty());
  REQUIRE(d.jewels.size() == 9);
  REQUIRE(invariant_poly(t) == Laurent::parse("-1"));
}

TEST_CASE("regions that are not two floors are rejected") {
  auto column = std::make_shared<Region>(Region::box(1, 1, 4));
  std::vector<int> partner = {1, 0, 3, 2};
  Tiling t(column, partner);
  REQUIRE_THROWS_AS(drawing(t), DomainError);
  REQUIRE_THROWS_AS(invariant_poly(t), DomainError);
  REQUIRE_THROWS_AS(route_ghosts(*column), DomainError);

  // Two disconnected floor stacks are not a two-story region either.
  Region split({{0, 0, 0}, {0, 0, 1}, {5, 0, 0}, {5, 0, 1}});
  REQUIRE_THROWS_AS(route_ghosts(split), DomainError);
}

TEST_CASE("ghost curves close the loose ends of unequal floors") {
  auto region = unequal_floors_region();
  GhostRouting g = route_ghosts(*region);
  REQUIRE(g.pairs.size() == 1);
  REQUIRE(g.pairs[0] == std::pair<Sq, Sq>{{0, 2}, {2, 0}});
  REQUIRE(g.curves.size() == 1);
  REQUIRE(g.curves[0].front() == Sq{0, 2});
  REQUIRE(g.curves[0].back() == Sq{2, 0});
  // The curve must stay off every square common to both floors.
  std::set<Sq> common;
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 4; ++x)
      if (!(x == 0 && y == 2) && !(x == 2 && y == 0)) common.insert({x, y});
  for (const Sq& s : g.curves[0]) REQUIRE_FALSE(common.count(s));

  // Equal floors need no curves at all.
  REQUIRE(route_ghosts(Region::box(3, 3, 2)).pairs.empty());

  // The pictured tiling's polynomial is a bare q^k with coefficient one.
  Laurent p = invariant_poly(unequal_floors_tiling());
  REQUIRE(p.min_degree() == p.max_degree());
  REQUIRE(p.coeff(p.min_degree()) == 1);
}

// Invariance against the routing choice: any two routings shift every
// tiling's polynomial by one and the same power of q.
TEST_CASE("rerouting shifts all polynomials equally") {
  auto region = unequal_floors_region();
  GhostRouting detour = route_ghosts(*region);
  detour.curves[0] = {{0, 2}, {0, 3}, {1, 3}, {2, 3}, {3, 3}, {4, 3},
                      {4, 2},  {4, 1}, {4, 0}, {4, -1}, {3, -1}, {2, -1},
                      {2, 0}};
  auto poly_with = [&](const Tiling& t, const GhostRouting& g) {
    Drawing d = drawing(t);
    auto cycles = detail::closed_cycles(d, g);
    Laurent p;
    for (const auto& [s, c] : d.jewels) {
      long long k = 0;
      for (const auto& cyc : cycles) k += winding(cyc, s);
      p.add_term(c, (int)k);
    }
    return p;
  };

  std::optional<int> shift;
  uint64_t tilings = 0, flips = 0, trit_moves = 0;
  for_each_tiling(region, [&](const Tiling& t) {
    tilings++;
    Laurent a = invariant_poly(t);
    Laurent b = poly_with(t, detour);
    REQUIRE(a.at_one() == 1);  // one more dark jewel than light, always
    REQUIRE(equal_up_to_shift(a, b));
    int k = a.min_degree() - b.min_degree();
    if (!shift) shift = k;
    REQUIRE(*shift == k);
    for (const FlipMove& m : list_flips(t)) {
      REQUIRE(invariant_poly(apply_flip(t, m)) == a);
      flips++;
    }
    for (const TritMove& m : list_trits(t)) {
      Laurent d = invariant_poly(apply_trit(t, m)) - a;
      trit_moves++;
      REQUIRE(d.max_degree() == d.min_degree() + 1);
      REQUIRE(d.coeff(d.max_degree()) == m.sign);
    }
  });
  REQUIRE(tilings > 1);
  REQUIRE(flips > 0);
  REQUIRE(trit_moves > 0);
}

TEST_CASE("every square is drawn exactly once") {
  auto audit = [](const Tiling& t, size_t squares) {
    Drawing d = drawing(t);
    size_t covered = d.jewels.size();
    for (const auto& c : d.cycles) covered += c.size();
    for (const auto& p : d.paths) covered += p.size();
    REQUIRE(covered == squares);
  };
  auto r = std::make_shared<Region>(Region::box(4, 3, 2));
  for_each_tiling(r, [&](const Tiling& t) { audit(t, 12); });
  for_each_tiling(unequal_floors_region(),
                  [&](const Tiling& t) { audit(t, 12); });
}

TEST_CASE("boundary and interior charges coincide") {
  // Trivial 2-cycle: no turns that matter, nothing enclosed.
  ChargePair flat = charge_check({{0, 0}, {1, 0}});
  REQUIRE(flat.boundary == Rat(0));
  REQUIRE(flat.interior == Rat(0));

  // Screen-counterclockwise square around one dark point.
  std::vector<Sq> ring = {{1, 0}, {1, 1}, {1, 2}, {2, 2},
                          {3, 2}, {3, 1}, {3, 0}, {2, 0}};
  ChargePair c = charge_check(ring);
  REQUIRE(c.boundary == Rat(1));
  REQUIRE(c.interior == Rat(1));

  REQUIRE_THROWS_AS(charge_check({{0, 0}, {1, 0}, {1, 1}, {1, 0}}), DomainError);
  REQUIRE_THROWS_AS(charge_check({{0, 0}, {2, 0}, {2, 2}, {0, 2}}), DomainError);

  // Fuzz with real cycles: harvest them from a full tiling space.
  auto region = std::make_shared<Region>(Region::box(4, 3, 2));
  uint64_t cycles_seen = 0;
  for_each_tiling(region, [&](const Tiling& t) {
    for (const auto& cyc : drawing(t).cycles) {
      cycles_seen++;
      ChargePair pair = charge_check(cyc);
      REQUIRE(pair.boundary == pair.interior);

      // Weight lemmas behind the identity: metric weights cancel against the
      // colors, and topological minus metric weight is the vertex angle.
      Sq lo = cyc[0], hi = cyc[0];
      for (const Sq& s : cyc) {
        lo = {std::min(lo.x, s.x), std::min(lo.y, s.y)};
        hi = {std::max(hi.x, s.x), std::max(hi.y, s.y)};
      }
      Rat metric_sum(0);
      for (int y = lo.y - 1; y <= hi.y + 1; ++y)
        for (int x = lo.x - 1; x <= hi.x + 1; ++x) {
          Sq v{x, y};
          metric_sum += metric_weight(cyc, v) * color(v);
          Rat diff = topological_weight(cyc, v) - metric_weight(cyc, v);
          auto it = std::find(cyc.begin(), cyc.end(), v);
          if (it == cyc.end()) {
            REQUIRE(diff == Rat(0));
          } else if (cyc.size() > 2) {
            REQUIRE(diff == vertex_angle(cyc, (size_t)(it - cyc.begin())));
          }
        }
      REQUIRE(metric_sum == Rat(0));
    }
  });
  REQUIRE(cycles_seen > 0);
}
