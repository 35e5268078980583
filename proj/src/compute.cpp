#include "gridscatter/compute.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "gridscatter/verifier.hpp"

namespace gridscatter {

namespace {

constexpr std::array<std::pair<CaseLabel, std::string_view>, 9> kLabelNames{{
    {CaseLabel::kPsi1, "PSI1"},
    {CaseLabel::kPsi2, "PSI2"},
    {CaseLabel::kPsi3West, "PSI3_WEST"},
    {CaseLabel::kPsi3East, "PSI3_EAST"},
    {CaseLabel::kPsi4, "PSI4"},
    {CaseLabel::kPsi5North, "PSI5_NORTH"},
    {CaseLabel::kPsi5South, "PSI5_SOUTH"},
    {CaseLabel::kWait, "WAIT"},
    {CaseLabel::kSettled, "SETTLED"},
}};

bool is_odd(Coord v) { return v % 2 != 0; }

Position offset(Position p, Coord dx, Coord dy) { return {p.x + dx, p.y + dy}; }

bool every_robot_settled(const Snapshot& s, Coord x_min) {
  return std::ranges::all_of(s.others(), [&](const Position& p) { return settled_in_row(s, p, x_min); });
}

// Column a robot occupies once its row is densely packed from `x_min`.
// Robots never pass each other inside a row, so this stays fixed while the
// row compacts.
Coord packed_slot(const Snapshot& s, Position p, Coord x_min) { return x_min + 2 * west_count(s, p); }

bool hops_west(const Snapshot& s, Position p, Coord x_min) {
  return p.x > packed_slot(s, p, x_min) && westward_movable(s, p, x_min);
}

// Row compaction for a robot that is not yet settled in its row. Hops only
// ever head toward the robot's packed slot.
CaseLabel compaction_case(const Snapshot& s, Position me, Coord x_min) {
  if (hops_west(s, me, x_min)) return CaseLabel::kPsi3West;
  for (const auto& q : s.others()) {
    if (q.y == me.y && q.x < me.x && hops_west(s, q, x_min)) return CaseLabel::kWait;
  }
  if (me.x < packed_slot(s, me, x_min) && !occupied(s, offset(me, 1, 0)) && !occupied(s, offset(me, 2, 0)))
    return CaseLabel::kPsi3East;
  return CaseLabel::kWait;
}

}  // namespace

std::string_view to_string(CaseLabel label) {
  for (const auto& [l, name] : kLabelNames)
    if (l == label) return name;
  return "?";
}

std::optional<CaseLabel> parse_case_label(std::string_view text) {
  for (const auto& [l, name] : kLabelNames)
    if (name == text) return l;
  return std::nullopt;
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::kWest: return "west";
    case Direction::kEast: return "east";
    case Direction::kSouth: return "south";
    case Direction::kNorth: return "north";
  }
  return "?";
}

MoveDecision MoveDecision::stay(CaseLabel label) {
  MoveDecision m;
  m.kind = Kind::kStay;
  m.label = label;
  return m;
}

MoveDecision MoveDecision::go(std::vector<Position> path, CaseLabel label) {
  if (path.empty()) throw std::invalid_argument("a move needs a non-empty path");
  MoveDecision m;
  m.kind = Kind::kGo;
  m.target = path.back();
  m.path = std::move(path);
  m.label = label;
  return m;
}

Direction direction_of(Position from, Position to) {
  if (to.x < from.x) return Direction::kWest;
  if (to.x > from.x) return Direction::kEast;
  if (to.y < from.y) return Direction::kSouth;
  return Direction::kNorth;
}

bool has_priority(Position a_from, const MoveDecision& a, Position b_from, const MoveDecision& b) {
  auto da = direction_of(a_from, a.target);
  auto db = direction_of(b_from, b.target);
  if (da != db) return da < db;
  return std::pair{a_from.y, a_from.x} < std::pair{b_from.y, b_from.x};
}

Dimensions find_dimension(Coord n) {
  if (n <= 0) throw std::invalid_argument("find_dimension needs at least one robot");
  auto rc = static_cast<Coord>(std::sqrt(static_cast<double>(n)));
  while (rc * rc < n) ++rc;
  while (rc > 1 && (rc - 1) * (rc - 1) >= n) --rc;
  return {rc, 2 * rc - 1};
}

Coord find_y_max(const Snapshot& s) {
  if (s.others().empty()) throw std::invalid_argument("empty snapshot");
  return std::ranges::max(s.others(), {}, &Position::y).y;
}

Coord find_x_min(const Snapshot& s) {
  if (s.others().empty()) throw std::invalid_argument("empty snapshot");
  return std::ranges::min(s.others(), {}, &Position::x).x;
}

bool westward_movable(const Snapshot& s, Position p, Coord x_min) {
  return p.x > x_min && !occupied(s, offset(p, -1, 0)) && !occupied(s, offset(p, -2, 0));
}

bool settled_in_row(const Snapshot& s, Position p, Coord x_min) {
  Coord gap = p.x - x_min;
  return gap % 2 == 0 && west_count(s, p) * 2 == gap;
}

bool all_in_odd_band(const Snapshot& s, Coord y_max, Coord d) {
  return std::ranges::all_of(s.others(), [&](const Position& p) {
    if (p.y > y_max) return false;
    Coord j = row_index(p, y_max);
    return j <= d && is_odd(j);
  });
}

Coord west_count(const Snapshot& s, Position p) {
  return std::ranges::count_if(s.others(), [&](const Position& q) { return q.y == p.y && q.x < p.x; });
}

bool deficient_odd_row_above(const Snapshot& s, Position p, Coord y_max, Coord rc) {
  Coord j = row_index(p, y_max);
  for (Coord above = 1; above < j; above += 2) {
    Coord y = y_max - above + 1;
    auto count = std::ranges::count_if(s.others(), [&](const Position& q) { return q.y == y; });
    if (count < rc) return true;
  }
  return false;
}

CaseLabel classify(const Snapshot& s) { return RoundView(s.others()).classify(s.me()); }

MoveDecision compute_move(const Snapshot& s) { return RoundView(s.others()).decide(s.me()); }

RoundView::RoundView(std::vector<Position> positions) : RoundView(std::move(positions), true) {}

RoundView::RoundView(std::vector<Position> positions, bool allow_lift)
    : world_([&] {
        if (positions.empty()) throw std::invalid_argument("a round needs at least one robot");
        Position first = positions.front();
        return Snapshot(std::move(positions), first);
      }()) {
  const auto n = static_cast<Coord>(world_.size());
  dims_ = find_dimension(n);
  bounds_ = {find_y_max(world_), find_x_min(world_)};
  settled_all_ = n == 1 || is_final(world_.others());
  in_band_ = all_in_odd_band(world_, bounds_.y_max, dims_.d);
  rows_packed_ = in_band_ && every_robot_settled(world_, bounds_.x_min);
  if (allow_lift) lift_ = find_lift();
}

std::optional<Position> RoundView::lifting_robot() const {
  if (!lift_) return std::nullopt;
  return lift_->robot;
}

CaseLabel RoundView::classify(Position me) const {
  if (!occupied(world_, me)) throw std::invalid_argument("classify: robot is not part of the snapshot");
  if (lift_ && lift_->robot == me) {
    if (me.x < lift_->column) return occupied(world_, offset(me, 1, 0)) ? CaseLabel::kWait : CaseLabel::kPsi3East;
    return occupied(world_, offset(me, 0, 2)) ? CaseLabel::kWait : CaseLabel::kPsi4;
  }
  return classify_rows(me);
}

CaseLabel RoundView::classify_rows(Position me) const {
  if (settled_all_) return CaseLabel::kSettled;

  const Coord j = row_index(me, bounds_.y_max);
  if (j > dims_.d) return CaseLabel::kPsi2;
  if (!is_odd(j)) return CaseLabel::kPsi1;
  if (!in_band_) return CaseLabel::kWait;

  if (!settled_in_row(world_, me, bounds_.x_min)) return compaction_case(world_, me, bounds_.x_min);
  if (!rows_packed_) return CaseLabel::kWait;

  const Coord west = west_count(world_, me);
  if (west < dims_.rc && j != 1 && !occupied(world_, offset(me, 0, 2))) return CaseLabel::kPsi4;
  if (west >= dims_.rc) {
    const bool south_free = !occupied(world_, offset(me, 0, -2));
    if (j == 1) return south_free ? CaseLabel::kPsi5South : CaseLabel::kWait;
    if (deficient_odd_row_above(world_, me, bounds_.y_max, dims_.rc))
      return occupied(world_, offset(me, 0, 2)) ? CaseLabel::kWait : CaseLabel::kPsi5North;
    return south_free ? CaseLabel::kPsi5South : CaseLabel::kWait;
  }
  return CaseLabel::kSettled;
}

MoveDecision RoundView::intent(Position me) const { return move_for(me, classify(me)); }

MoveDecision RoundView::move_for(Position me, CaseLabel label) const {
  switch (label) {
    case CaseLabel::kPsi1:
    case CaseLabel::kPsi2: {
      if (auto north = offset(me, 0, 1); !occupied(world_, north)) return MoveDecision::go({north}, label);
      if (auto east = offset(me, 1, 0); !occupied(world_, east)) return MoveDecision::go({east}, label);
      return MoveDecision::stay(label);
    }
    case CaseLabel::kPsi3West: return MoveDecision::go({offset(me, -1, 0)}, label);
    case CaseLabel::kPsi3East: return MoveDecision::go({offset(me, 1, 0)}, label);
    case CaseLabel::kPsi4:
    case CaseLabel::kPsi5North: return MoveDecision::go({offset(me, 0, 1), offset(me, 0, 2)}, label);
    case CaseLabel::kPsi5South: return MoveDecision::go({offset(me, 0, -1), offset(me, 0, -2)}, label);
    case CaseLabel::kWait:
    case CaseLabel::kSettled: return MoveDecision::stay(label);
  }
  return MoveDecision::stay(label);
}

bool RoundView::stuck() const {
  if (!rows_packed_ || settled_all_) return false;
  return std::ranges::none_of(world_.others(),
                              [&](const Position& p) { return move_for(p, classify_rows(p)).moves(); });
}

std::optional<RoundView::Lift> RoundView::find_lift() const {
  if (settled_all_ || !in_band_) return std::nullopt;

  if (rows_packed_) {
    if (!stuck()) return std::nullopt;
    // Northmost deficient odd row with robots somewhere south of it.
    const Coord southmost = std::ranges::min(world_.others(), {}, &Position::y).y;
    for (Coord j = 1; j <= dims_.d; j += 2) {
      const Coord y = bounds_.y_max - j + 1;
      if (y <= southmost) break;
      const auto count = static_cast<Coord>(robots_in_row(world_, y).size());
      if (count >= dims_.rc) continue;
      const auto below = robots_in_row(world_, y - 2);
      if (below.empty()) return std::nullopt;
      return Lift{below.back(), bounds_.x_min + 2 * count};
    }
    return std::nullopt;
  }

  // Mid-walk: the walker is the only robot off its packed slot, it is the
  // east-most robot of its row, and putting it back on its slot gives a
  // stuck configuration whose lift it carries.
  std::optional<Position> walker;
  for (const auto& p : world_.others()) {
    if (settled_in_row(world_, p, bounds_.x_min)) continue;
    if (walker) return std::nullopt;
    walker = p;
  }
  if (!walker) return std::nullopt;
  const auto row = robots_in_row(world_, walker->y);
  if (row.back() != *walker) return std::nullopt;
  const Position slot{bounds_.x_min + 2 * west_count(world_, *walker), walker->y};
  if (slot.x >= walker->x || occupied(world_, slot)) return std::nullopt;

  std::vector<Position> packed = world_.others();
  std::ranges::replace(packed, *walker, slot);
  const RoundView home(std::move(packed), false);
  auto lift = home.find_lift();
  if (!lift || lift->robot != slot || walker->x > lift->column) return std::nullopt;
  return Lift{*walker, lift->column};
}

MoveDecision RoundView::decide(Position me) const {
  MoveDecision mine = intent(me);
  if (!mine.moves()) return mine;

  // Every robot that could possibly claim the same node: one or two steps
  // away along an axis.
  const Position t = mine.target;
  const std::array<Position, 8> sources{offset(t, 1, 0), offset(t, -1, 0), offset(t, 0, 1), offset(t, 0, 2),
                                        offset(t, 0, -1), offset(t, 0, -2), offset(t, 2, 0), offset(t, -2, 0)};
  for (const auto& other : sources) {
    if (other == me || !occupied(world_, other)) continue;
    MoveDecision theirs = intent(other);
    if (theirs.moves() && theirs.target == t && has_priority(other, theirs, me, mine))
      return MoveDecision::stay(mine.label);
  }
  return mine;
}

}  // namespace gridscatter
