#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "gridscatter/grid.hpp"
#include "support.hpp"

using namespace gridscatter;

TEST_CASE("row_index counts rows south from the north bound") {
  CHECK(row_index({3, 5}, 5) == 1);
  CHECK(row_index({0, 2}, 5) == 4);
  CHECK(row_index({-7, -7}, 0) == 8);
  CHECK_THROWS_AS(row_index({0, 6}, 5), std::invalid_argument);
}

TEST_CASE("row_index is a bijection from y <= y_max onto positive rows") {
  std::set<Coord> seen;
  for (Coord y = 10; y >= -40; --y) {
    const Coord j = row_index({0, y}, 10);
    CHECK(j >= 1);
    CHECK(seen.insert(j).second);
    if (y < 10) CHECK(j == row_index({0, y + 1}, 10) + 1);
  }
}

TEST_CASE("occupied") {
  CHECK(occupied(Snapshot({{0, 0}}, {0, 0}), {0, 0}));
  CHECK_FALSE(occupied(Snapshot({{0, 0}}, {0, 0}), {0, 1}));
  CHECK(occupied(Snapshot({{1, 1}, {2, 1}}, {1, 1}), {2, 1}));
}

TEST_CASE("robots_in_row returns the row sorted west to east") {
  using V = std::vector<Position>;
  CHECK(robots_in_row(Snapshot({{4, 0}, {1, 0}, {2, 5}}, {4, 0}), 0) == V{{1, 0}, {4, 0}});
  CHECK(robots_in_row(Snapshot({{0, 0}}, {0, 0}), 3).empty());
  CHECK(robots_in_row(Snapshot({{-2, 1}, {-5, 1}}, {-2, 1}), 1) == V{{-5, 1}, {-2, 1}});
}

TEST_CASE("rows partition the snapshot") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto ps = testing_support::random_positions(rng, 1 + trial % 20, 5);
    Snapshot s(ps, ps.front());
    std::vector<Position> joined;
    for (Coord y = -5; y <= 5; ++y) {
      auto row = robots_in_row(s, y);
      CHECK(std::ranges::is_sorted(row));
      joined.insert(joined.end(), row.begin(), row.end());
    }
    std::ranges::sort(joined);
    CHECK(joined == s.others());
  }
}

TEST_CASE("Snapshot preconditions") {
  CHECK_THROWS_AS(Snapshot({{0, 0}, {0, 0}}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Snapshot({{0, 0}}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Snapshot({}, {0, 0}), std::invalid_argument);
  Snapshot s({{3, 1}, {0, 0}}, {3, 1});
  CHECK(s.others() == std::vector<Position>{{0, 0}, {3, 1}});
  CHECK(s.with_me({0, 0}).me() == Position{0, 0});
}

TEST_CASE("Configuration keeps positions distinct") {
  CHECK_THROWS_AS(Configuration({{1, {0, 0}}, {2, {0, 0}}}), std::invalid_argument);
  Configuration c = Configuration::from_positions({{0, 0}, {0, -1}});
  CHECK(c.at(1) == Position{0, 0});
  CHECK(c.at(2) == Position{0, -1});
  CHECK_THROWS_AS(c.move(2, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(c.at(3), std::out_of_range);
  c.move(2, {1, -1});
  CHECK(c.positions() == std::vector<Position>{{0, 0}, {1, -1}});
  CHECK(Snapshot::of(c, 2) == Snapshot({{0, 0}, {1, -1}}, {1, -1}));
}
