#pragma once

// Shared helpers for the unit and acceptance tests: seeded random
// configurations, snapshots drawn from real trajectories, and naive oracles
// that do not reuse the library's own formulas.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "gridscatter/grid.hpp"
#include "gridscatter/sim.hpp"

namespace testing_support {

using gridscatter::Configuration;
using gridscatter::Coord;
using gridscatter::Position;
using gridscatter::Snapshot;

inline std::vector<Position> random_positions(std::mt19937_64& rng, std::size_t n, Coord box) {
  std::uniform_int_distribution<Coord> coord(-box, box);
  std::set<Position> picked;
  while (picked.size() < n) picked.insert({coord(rng), coord(rng)});
  std::vector<Position> out(picked.begin(), picked.end());
  std::ranges::shuffle(out, rng);
  return out;
}

/// Smallest r with r*r >= n, by counting up.
inline Coord naive_rc(Coord n) {
  Coord r = 0;
  while (r * r < n) ++r;
  return r;
}

/// Formation built row by row: fill rc slots two columns apart, then drop
/// two rows.
inline std::vector<Position> naive_formation(std::size_t n, Coord x_min, Coord y_max) {
  const Coord rc = naive_rc(static_cast<Coord>(n));
  std::vector<Position> out;
  Coord y = y_max;
  while (out.size() < n) {
    for (Coord k = 0; k < rc && out.size() < n; ++k) out.push_back({x_min + 2 * k, y});
    y -= 2;
  }
  std::ranges::sort(out);
  return out;
}

/// Configurations visited by an fsync run from a random start, so snapshots
/// cover every protocol phase rather than mostly the opening one.
inline std::vector<Configuration> trajectory(std::size_t n, Coord box, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto initial = Configuration::from_positions(random_positions(rng, n, box));
  auto result = gridscatter::run(initial, gridscatter::FsyncStrategy{}, {10000, seed, false});
  std::vector<Configuration> out{initial};
  Configuration c = initial;
  for (const auto& rec : result.records) {
    auto robots = c.robots();
    for (const auto& [id, p] : rec.applied) robots[id] = p;
    c = Configuration(robots);
    out.push_back(c);
  }
  return out;
}

/// Mix of uniformly random snapshots and snapshots sampled along trajectories.
inline std::vector<Snapshot> sample_snapshots(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Snapshot> out;
  while (out.size() < count) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 25)(rng);
    if (out.size() % 2 == 0) {
      auto ps = random_positions(rng, n, 8);
      Position me = ps[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)];
      out.emplace_back(ps, me);
    } else {
      auto configs = trajectory(n, 8, rng());
      const auto& c = configs[std::uniform_int_distribution<std::size_t>(0, configs.size() - 1)(rng)];
      auto ps = c.positions();
      out.emplace_back(ps, ps[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)]);
    }
  }
  return out;
}

inline Snapshot translated(const Snapshot& s, Coord dx, Coord dy) {
  std::vector<Position> ps;
  for (auto p : s.others()) ps.push_back({p.x + dx, p.y + dy});
  return Snapshot(ps, {s.me().x + dx, s.me().y + dy});
}

}  // namespace testing_support
