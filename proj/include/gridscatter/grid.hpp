#pragma once

// Grid coordinates, robot configurations and per-robot snapshots.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <vector>

namespace gridscatter {

using Coord = std::int64_t;
using RobotId = std::uint32_t;

struct Position {
  Coord x = 0;
  Coord y = 0;

  friend constexpr auto operator<=>(const Position&, const Position&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Position& p) {
  return os << '(' << p.x << ',' << p.y << ')';
}

/// Robot placement on the grid. Ids are simulator bookkeeping only; the
/// protocol never sees them. Positions are kept pairwise distinct.
class Configuration {
 public:
  Configuration() = default;
  Configuration(std::initializer_list<std::pair<const RobotId, Position>> robots);
  explicit Configuration(std::map<RobotId, Position> robots);

  /// Ids 1..n in the order of `positions`.
  static Configuration from_positions(const std::vector<Position>& positions);

  const std::map<RobotId, Position>& robots() const { return robots_; }
  std::size_t size() const { return robots_.size(); }
  bool contains(RobotId id) const { return robots_.contains(id); }
  const Position& at(RobotId id) const;

  /// Positions sorted ascending.
  std::vector<Position> positions() const;

  /// Moves one robot. Throws if the destination is already taken by
  /// another robot.
  void move(RobotId id, Position to);

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::map<RobotId, Position> robots_;
};

/// What one robot sees during Look: every robot position (itself included)
/// and its own position.
class Snapshot {
 public:
  Snapshot(std::vector<Position> others, Position me);

  static Snapshot of(const Configuration& c, RobotId id);

  const std::vector<Position>& others() const { return others_; }
  const Position& me() const { return me_; }
  std::size_t size() const { return others_.size(); }

  Snapshot with_me(Position me) const;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;

 private:
  std::vector<Position> others_;  // sorted, distinct
  Position me_;
};

/// 1-based row number counted southward from the north bound.
Coord row_index(Position p, Coord y_max);

bool occupied(const Snapshot& s, Position p);

/// Robots of row `y`, ascending x.
std::vector<Position> robots_in_row(const Snapshot& s, Coord y);

}  // namespace gridscatter
