#include "gridscatter/verifier.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

#include "gridscatter/compute.hpp"

namespace gridscatter {

namespace {

constexpr std::array<std::pair<ViolationKind, std::string_view>, 7> kKindNames{{
    {ViolationKind::kDuplicateOccupancy, "DuplicateOccupancy"},
    {ViolationKind::kOffLatticeMove, "OffLatticeMove"},
    {ViolationKind::kPathCrossViolation, "PathCrossViolation"},
    {ViolationKind::kIntermediateOccupied, "IntermediateOccupied"},
    {ViolationKind::kBoundDrift, "BoundDrift"},
    {ViolationKind::kEvenRowReentry, "EvenRowReentry"},
    {ViolationKind::kTargetConflict, "TargetConflict"},
}};

bool unit_step(Position a, Position b) {
  Coord dx = b.x - a.x;
  Coord dy = b.y - a.y;
  return (dx == 0 && (dy == 1 || dy == -1)) || (dy == 0 && (dx == 1 || dx == -1));
}

// One unit edge, or two unit edges in the same vertical direction.
bool lattice_path(Position from, const std::vector<Position>& path) {
  if (path.size() == 1) return unit_step(from, path[0]);
  if (path.size() == 2) {
    if (!unit_step(from, path[0]) || !unit_step(path[0], path[1])) return false;
    return from.x == path[0].x && path[0].x == path[1].x && (path[0].y - from.y) == (path[1].y - path[0].y);
  }
  return false;
}

Bounds bounds_of(std::span<const Position> ps) {
  Bounds b{ps.front().y, ps.front().x};
  for (const auto& p : ps) {
    b.y_max = std::max(b.y_max, p.y);
    b.x_min = std::min(b.x_min, p.x);
  }
  return b;
}

bool in_band(Position p, Coord y_max, Coord d) {
  Coord j = y_max - p.y + 1;
  return j >= 1 && j <= d && j % 2 != 0;
}

bool band_holds(std::span<const Position> ps) {
  Bounds b = bounds_of(ps);
  Coord d = find_dimension(static_cast<Coord>(ps.size())).d;
  return std::ranges::all_of(ps, [&](const Position& p) { return in_band(p, b.y_max, d); });
}

}  // namespace

std::string_view to_string(ViolationKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "?";
}

std::optional<ViolationKind> parse_violation_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames)
    if (name == text) return k;
  return std::nullopt;
}

std::vector<Position> final_formation(std::size_t n, Coord x_min, Coord y_max) {
  if (n == 0) return {};
  const Coord rc = find_dimension(static_cast<Coord>(n)).rc;
  std::vector<Position> out;
  out.reserve(n);
  for (Coord k = 0; k < static_cast<Coord>(n); ++k) out.push_back({x_min + 2 * (k % rc), y_max - 2 * (k / rc)});
  std::ranges::sort(out);
  return out;
}

bool is_final(std::span<const Position> positions) {
  if (positions.empty()) return false;
  Bounds b = bounds_of(positions);
  std::vector<Position> sorted(positions.begin(), positions.end());
  std::ranges::sort(sorted);
  return sorted == final_formation(sorted.size(), b.x_min, b.y_max);
}

bool is_final(const Configuration& c) {
  auto ps = c.positions();
  return is_final(ps);
}

std::vector<Position> expected_final(const Configuration& initial) {
  auto ps = initial.positions();
  if (ps.empty()) return {};
  Bounds b = bounds_of(ps);
  return final_formation(ps.size(), b.x_min, b.y_max);
}

std::vector<ViolationEvent> check_round(const Configuration& prev, const RoundRecord& rec) {
  const auto& before = prev.robots();
  for (RobotId id : rec.activated)
    if (!before.contains(id)) throw std::invalid_argument("round record activates an unknown robot");
  for (const auto& [id, d] : rec.decisions)
    if (!before.contains(id)) throw std::invalid_argument("round record decides for an unknown robot");
  for (const auto& [id, to] : rec.applied) {
    auto it = rec.decisions.find(id);
    if (it == rec.decisions.end() || !it->second.moves() || it->second.target != to)
      throw std::invalid_argument("applied move does not match a decision of the round record");
  }

  std::vector<ViolationEvent> out;
  auto emit = [&](ViolationKind kind, std::vector<RobotId> robots, std::vector<Position> nodes) {
    out.push_back({kind, rec.round, std::move(robots), std::move(nodes)});
  };

  // Post-round placement, which may contain duplicates.
  std::map<RobotId, Position> after = before;
  for (const auto& [id, to] : rec.applied) after[id] = to;

  std::map<Position, std::vector<RobotId>> by_node;
  for (const auto& [id, p] : after) by_node[p].push_back(id);
  for (const auto& [p, ids] : by_node)
    if (ids.size() > 1) emit(ViolationKind::kDuplicateOccupancy, ids, {p});

  for (const auto& [id, to] : rec.applied) {
    const auto& path = rec.decisions.at(id).path;
    if (!lattice_path(before.at(id), path)) {
      std::vector<Position> nodes{before.at(id)};
      nodes.insert(nodes.end(), path.begin(), path.end());
      emit(ViolationKind::kOffLatticeMove, {id}, std::move(nodes));
    }
  }

  std::map<Position, std::vector<RobotId>> claims;
  for (const auto& [id, d] : rec.decisions)
    if (d.moves()) claims[d.target].push_back(id);
  for (const auto& [p, ids] : claims)
    if (ids.size() > 1) emit(ViolationKind::kTargetConflict, ids, {p});

  // Directed edges traversed by applied moves.
  std::map<std::pair<Position, Position>, RobotId> edges;
  for (const auto& [id, to] : rec.applied) {
    Position at = before.at(id);
    for (const auto& next : rec.decisions.at(id).path) {
      edges.emplace(std::pair{at, next}, id);
      at = next;
    }
  }
  std::set<std::pair<RobotId, RobotId>> crossed;
  for (const auto& [edge, id] : edges) {
    auto rev = edges.find({edge.second, edge.first});
    if (rev == edges.end()) continue;
    auto key = std::minmax(id, rev->second);
    if (crossed.insert(key).second) emit(ViolationKind::kPathCrossViolation, {key.first, key.second}, {edge.first, edge.second});
  }

  std::set<Position> occupied_before;
  for (const auto& [id, p] : before) occupied_before.insert(p);
  for (const auto& [id, to] : rec.applied) {
    const auto& path = rec.decisions.at(id).path;
    if (path.size() != 2) continue;
    const Position mid = path[0];
    bool claimed = false;
    for (const auto& [other, d] : rec.decisions)
      if (other != id && d.moves() && d.target == mid) claimed = true;
    if (occupied_before.contains(mid) || claimed) emit(ViolationKind::kIntermediateOccupied, {id}, {before.at(id), mid});
  }

  std::vector<Position> prev_ps;
  std::vector<Position> next_ps;
  for (const auto& [id, p] : before) prev_ps.push_back(p);
  for (const auto& [id, p] : after) next_ps.push_back(p);
  if (!prev_ps.empty()) {
    Bounds b0 = bounds_of(prev_ps);
    Bounds b1 = bounds_of(next_ps);
    if (b0 != b1) emit(ViolationKind::kBoundDrift, {}, {{b0.x_min, b0.y_max}, {b1.x_min, b1.y_max}});
    if (band_holds(prev_ps) && !band_holds(next_ps)) {
      const Coord d = find_dimension(static_cast<Coord>(next_ps.size())).d;
      std::vector<RobotId> leavers;
      std::vector<Position> outside;
      for (const auto& [id, p] : after) {
        if (!in_band(p, b1.y_max, d)) {
          leavers.push_back(id);
          outside.push_back(p);
        }
      }
      emit(ViolationKind::kEvenRowReentry, std::move(leavers), std::move(outside));
    }
  }
  return out;
}

std::vector<ViolationEvent> check_round(const Configuration& prev, const RoundRecord& rec, const Configuration& next) {
  auto out = check_round(prev, rec);
  for (const auto& [id, p] : prev.robots()) {
    auto it = rec.applied.find(id);
    Position expected = it == rec.applied.end() ? p : it->second;
    if (!next.contains(id) || next.at(id) != expected)
      throw std::invalid_argument("next configuration does not follow from the round record");
  }
  if (next.size() != prev.size()) throw std::invalid_argument("next configuration has a different robot set");
  return out;
}

bool check_progress(std::span<const RoundRecord> records, std::uint64_t window) {
  if (window == 0) throw std::invalid_argument("progress window must be positive");
  std::uint64_t stalled = 0;
  for (const auto& rec : records) {
    if (!rec.final_before && rec.applied.empty()) {
      if (++stalled >= window) return false;
    } else {
      stalled = 0;
    }
  }
  return true;
}

std::map<RobotId, std::uint64_t> count_revisits(const Configuration& initial, std::span<const RoundRecord> records) {
  std::map<RobotId, std::set<Position>> visited;
  std::map<RobotId, std::uint64_t> revisits;
  for (const auto& [id, p] : initial.robots()) {
    visited[id].insert(p);
    revisits[id] = 0;
  }
  for (const auto& rec : records)
    for (const auto& [id, to] : rec.applied)
      if (!visited[id].insert(to).second) ++revisits[id];
  return revisits;
}

}  // namespace gridscatter
