#include <random>

#include "doctest.h"
#include "gridscatter/sim.hpp"
#include "gridscatter/verifier.hpp"
#include "support.hpp"

using namespace gridscatter;
using V = std::vector<Position>;

namespace {

/// Round record in which every listed robot is activated, decides to go
/// along `path`, and is applied.
RoundRecord moving(std::vector<std::pair<RobotId, V>> moves, std::uint64_t round = 1) {
  RoundRecord rec;
  rec.round = round;
  for (auto& [id, path] : moves) {
    rec.activated.push_back(id);
    rec.applied.emplace(id, path.back());
    rec.decisions.emplace(id, MoveDecision::go(std::move(path), CaseLabel::kPsi1));
  }
  std::ranges::sort(rec.activated);
  return rec;
}

std::vector<ViolationKind> kinds(const std::vector<ViolationEvent>& vs) {
  std::vector<ViolationKind> out;
  for (const auto& v : vs) out.push_back(v.kind);
  return out;
}

}  // namespace

TEST_CASE("is_final") {
  CHECK(is_final(V{{0, 0}, {2, 0}}));
  CHECK_FALSE(is_final(V{{0, 0}, {1, 0}}));
  CHECK(is_final(V{{0, 0}, {2, 0}, {4, 0}, {0, -2}, {2, -2}, {4, -2}, {0, -4}, {2, -4}}));
  CHECK(is_final(V{{7, -3}}));
  // Partial row must be west-packed and last.
  CHECK_FALSE(is_final(V{{0, 0}, {2, 0}, {4, 0}, {0, -2}, {2, -2}, {4, -2}, {2, -4}, {4, -4}}));
  CHECK_FALSE(is_final(V{{0, 0}, {2, 0}, {0, -2}, {2, -2}, {4, -2}, {0, -4}, {2, -4}, {4, -4}}));
}

TEST_CASE("final_formation agrees with a row-by-row construction") {
  for (std::size_t n = 1; n <= 120; ++n) REQUIRE(final_formation(n, -3, 4) == testing_support::naive_formation(n, -3, 4));
}

TEST_CASE("is_final is invariant under translation") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Coord> shift(-1000, 1000);
  for (std::size_t n = 1; n <= 40; ++n) {
    auto f = final_formation(n, 0, 0);
    for (int k = 0; k < 5; ++k) {
      const Coord dx = shift(rng), dy = shift(rng);
      V moved;
      for (auto p : f) moved.push_back({p.x + dx, p.y + dy});
      CHECK(is_final(moved));
    }
    if (n > 1) {
      f.back().x += 1;
      CHECK_FALSE(is_final(f));
    }
  }
}

TEST_CASE("expected_final") {
  CHECK(expected_final(Configuration::from_positions({{0, 0}, {0, -1}})) == V{{0, 0}, {2, 0}});
  CHECK(expected_final(Configuration::from_positions({{7, -3}})) == V{{7, -3}});
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    auto ps = testing_support::random_positions(rng, 7, 4);
    // Pin the bounds at x_min = 0, y_max = 0.
    ps.push_back({0, 5});
    ps.push_back({-5, -9});
    V shifted;
    for (auto p : ps) shifted.push_back({p.x + 5, p.y - 5});
    std::ranges::sort(shifted);
    shifted.erase(std::unique(shifted.begin(), shifted.end()), shifted.end());
    if (shifted.size() != 9) continue;
    CHECK(expected_final(Configuration::from_positions(shifted)) ==
          V{{0, -4}, {0, -2}, {0, 0}, {2, -4}, {2, -2}, {2, 0}, {4, -4}, {4, -2}, {4, 0}});
  }
}

TEST_CASE("a real run has no violations") {
  const auto c = Configuration::from_positions({{0, 0}, {0, -1}});
  const auto result = run(c, FsyncStrategy{}, {});
  Configuration cur = c;
  for (const auto& rec : result.records) {
    auto [next, replayed] = step(cur, rec.activated, rec.round);
    CHECK(check_round(cur, replayed, next).empty());
    cur = next;
  }
  CHECK(check_progress(result.records, 4));
}

TEST_CASE("synthetic violations") {
  const Configuration c({{1, {0, 0}}, {2, {1, 0}}, {3, {3, 2}}, {4, {4, 3}}});

  SUBCASE("two east is off-lattice") {
    auto v = check_round(c, moving({{3, {{4, 2}, {5, 2}}}}));
    CHECK(kinds(v) == std::vector{ViolationKind::kOffLatticeMove});
    CHECK(v[0].robots == std::vector<RobotId>{3});
  }
  SUBCASE("diagonal step is off-lattice") {
    CHECK(kinds(check_round(c, moving({{3, {{4, 1}}}}))) == std::vector{ViolationKind::kOffLatticeMove});
  }
  SUBCASE("two claims on one node") {
    RoundRecord rec = moving({{3, {{3, 3}}}});
    rec.activated.push_back(4);
    rec.decisions.emplace(4, MoveDecision::go({{3, 3}}, CaseLabel::kPsi3West));
    auto v = check_round(c, rec);
    CHECK(kinds(v) == std::vector{ViolationKind::kTargetConflict});
    CHECK(v[0].nodes == V{{3, 3}});
    CHECK(v[0].robots == std::vector<RobotId>{3, 4});
  }
  SUBCASE("both applied: duplicate occupancy as well") {
    auto v = check_round(c, moving({{3, {{3, 3}}}, {4, {{3, 3}}}}));
    CHECK(std::ranges::count(kinds(v), ViolationKind::kDuplicateOccupancy) == 1);
    CHECK(std::ranges::count(kinds(v), ViolationKind::kTargetConflict) == 1);
  }
  SUBCASE("swap crosses paths") {
    auto v = check_round(c, moving({{1, {{1, 0}}}, {2, {{0, 0}}}}));
    CHECK(kinds(v) == std::vector{ViolationKind::kPathCrossViolation});
  }
  SUBCASE("two-step move through an occupied node") {
    const Configuration stacked({{1, {0, 0}}, {2, {0, -1}}, {3, {0, -2}}, {4, {5, 5}}});
    auto v = check_round(stacked, moving({{3, {{0, -1}, {0, 0}}}}));
    CHECK(std::ranges::count(kinds(v), ViolationKind::kIntermediateOccupied) == 1);
  }
  SUBCASE("two-step move through a node claimed this round") {
    const Configuration open({{1, {1, 1}}, {2, {0, -2}}, {3, {9, 9}}});
    auto v = check_round(open, moving({{1, {{0, 1}}}, {2, {{0, -1}, {0, 0}}}}));
    CHECK(kinds(v).empty());
    const Configuration beside({{1, {1, -1}}, {2, {0, -2}}, {3, {9, 9}}});
    RoundRecord rec = moving({{2, {{0, -1}, {0, 0}}}});
    rec.activated.push_back(1);
    rec.decisions.emplace(1, MoveDecision::go({{0, -1}}, CaseLabel::kPsi3West));
    CHECK(std::ranges::count(kinds(check_round(beside, rec)), ViolationKind::kIntermediateOccupied) == 1);
  }
  SUBCASE("bound drift") {
    CHECK(kinds(check_round(c, moving({{1, {{-1, 0}}}}))) == std::vector{ViolationKind::kBoundDrift});
    CHECK(kinds(check_round(c, moving({{4, {{4, 4}}}}))) == std::vector{ViolationKind::kBoundDrift});
  }
  SUBCASE("leaving the odd band") {
    const Configuration band({{1, {0, 0}}, {2, {2, 0}}, {3, {0, -2}}});
    auto v = check_round(band, moving({{3, {{0, -3}}}}));
    CHECK(kinds(v) == std::vector{ViolationKind::kEvenRowReentry});
    CHECK(v[0].nodes == V{{0, -3}});
  }
  SUBCASE("records that do not belong to the configuration") {
    CHECK_THROWS_AS(check_round(c, moving({{9, {{0, 1}}}})), std::invalid_argument);
    RoundRecord rec = moving({{1, {{0, 1}}}});
    rec.applied.at(1) = {0, 5};
    CHECK_THROWS_AS(check_round(c, rec), std::invalid_argument);
    CHECK_THROWS_AS(check_round(c, moving({{1, {{0, 1}}}}), c), std::invalid_argument);
  }
}

TEST_CASE("check_progress") {
  RoundRecord idle;
  CHECK(check_progress({}, 4));
  RoundRecord settled;
  settled.final_before = true;
  CHECK(check_progress(std::vector{settled, settled, settled}, 1));
  CHECK_FALSE(check_progress(std::vector{idle, idle, idle, idle}, 4));
  CHECK(check_progress(std::vector{idle, idle, idle}, 4));
  RoundRecord busy = moving({{1, {{0, 1}}}});
  CHECK(check_progress(std::vector{idle, idle, idle, busy, idle, idle, idle}, 4));
  CHECK_THROWS_AS(check_progress({}, 0), std::invalid_argument);
}

TEST_CASE("count_revisits") {
  const auto c = Configuration::from_positions({{0, 0}, {5, 0}});
  auto recs = std::vector{moving({{2, {{4, 0}}}}, 1), moving({{2, {{5, 0}}}}, 2)};
  auto r = count_revisits(c, recs);
  CHECK(r.at(1) == 0);
  CHECK(r.at(2) == 1);
}

TEST_CASE("violation kinds round-trip through their names") {
  for (int k = 0; k <= static_cast<int>(ViolationKind::kTargetConflict); ++k) {
    auto kind = static_cast<ViolationKind>(k);
    CHECK(parse_violation_kind(to_string(kind)) == kind);
  }
  CHECK(to_string(ViolationKind::kEvenRowReentry) == "EvenRowReentry");
}
