#include "gridscatter/grid.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gridscatter {

namespace {

void require_distinct(const std::map<RobotId, Position>& robots) {
  std::vector<Position> seen;
  seen.reserve(robots.size());
  for (const auto& [id, p] : robots) seen.push_back(p);
  std::ranges::sort(seen);
  auto dup = std::ranges::adjacent_find(seen);
  if (dup != seen.end()) {
    std::ostringstream msg;
    msg << "duplicate robot position " << *dup;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

Configuration::Configuration(std::initializer_list<std::pair<const RobotId, Position>> robots)
    : Configuration(std::map<RobotId, Position>(robots)) {}

Configuration::Configuration(std::map<RobotId, Position> robots) : robots_(std::move(robots)) {
  require_distinct(robots_);
}

Configuration Configuration::from_positions(const std::vector<Position>& positions) {
  std::map<RobotId, Position> robots;
  RobotId id = 1;
  for (const auto& p : positions) robots.emplace(id++, p);
  return Configuration(std::move(robots));
}

const Position& Configuration::at(RobotId id) const {
  auto it = robots_.find(id);
  if (it == robots_.end()) throw std::out_of_range("unknown robot id " + std::to_string(id));
  return it->second;
}

std::vector<Position> Configuration::positions() const {
  std::vector<Position> out;
  out.reserve(robots_.size());
  for (const auto& [id, p] : robots_) out.push_back(p);
  std::ranges::sort(out);
  return out;
}

void Configuration::move(RobotId id, Position to) {
  auto it = robots_.find(id);
  if (it == robots_.end()) throw std::out_of_range("unknown robot id " + std::to_string(id));
  for (const auto& [other, p] : robots_) {
    if (other != id && p == to) {
      std::ostringstream msg;
      msg << "robot " << id << " cannot move onto occupied node " << to;
      throw std::invalid_argument(msg.str());
    }
  }
  it->second = to;
}

Snapshot::Snapshot(std::vector<Position> others, Position me) : others_(std::move(others)), me_(me) {
  std::ranges::sort(others_);
  if (std::ranges::adjacent_find(others_) != others_.end())
    throw std::invalid_argument("snapshot positions are not distinct");
  if (!std::ranges::binary_search(others_, me_))
    throw std::invalid_argument("snapshot does not contain the observing robot");
}

Snapshot Snapshot::of(const Configuration& c, RobotId id) { return Snapshot(c.positions(), c.at(id)); }

Snapshot Snapshot::with_me(Position me) const { return Snapshot(others_, me); }

Coord row_index(Position p, Coord y_max) {
  if (p.y > y_max) throw std::invalid_argument("position lies north of the north bound");
  return y_max - p.y + 1;
}

bool occupied(const Snapshot& s, Position p) { return std::ranges::binary_search(s.others(), p); }

std::vector<Position> robots_in_row(const Snapshot& s, Coord y) {
  std::vector<Position> row;
  for (const auto& p : s.others())
    if (p.y == y) row.push_back(p);
  // others() is ordered by x first, so the row is already ascending in x.
  return row;
}

}  // namespace gridscatter
