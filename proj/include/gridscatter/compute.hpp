#pragma once

// The Compute phase of the scattering protocol: a pure function from one
// robot's snapshot to its move decision.

#include <optional>
#include <string_view>
#include <vector>

#include "gridscatter/grid.hpp"

namespace gridscatter {

/// Extent of the target formation. `rc` robots per full row, `d` grid rows
/// (and columns) including the empty alternate ones.
struct Dimensions {
  Coord rc = 1;
  Coord d = 1;

  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

struct Bounds {
  Coord y_max = 0;  // north
  Coord x_min = 0;  // west

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

enum class CaseLabel {
  kPsi1,       // even row inside the band: go north (or east around a blocker)
  kPsi2,       // below the band: same moves as kPsi1
  kPsi3West,   // row compaction, hop west
  kPsi3East,   // row compaction, parity fix east
  kPsi4,       // fill the odd row above
  kPsi5North,  // excess robot moves up to a deficient row
  kPsi5South,  // excess robot spills down
  kWait,
  kSettled,
};

std::string_view to_string(CaseLabel label);
std::optional<CaseLabel> parse_case_label(std::string_view text);

/// Movement direction classes, ordered by arbitration priority (west wins).
enum class Direction { kWest = 0, kEast = 1, kSouth = 2, kNorth = 3 };

std::string_view to_string(Direction d);

struct MoveDecision {
  enum class Kind { kStay, kGo };

  Kind kind = Kind::kStay;
  Position target{};
  /// Nodes entered after leaving the current node; back() == target.
  std::vector<Position> path;
  CaseLabel label = CaseLabel::kSettled;

  static MoveDecision stay(CaseLabel label);
  static MoveDecision go(std::vector<Position> path, CaseLabel label);

  bool moves() const { return kind == Kind::kGo; }

  friend bool operator==(const MoveDecision&, const MoveDecision&) = default;
};

/// Direction of an axis-aligned move from `from` to `to`.
Direction direction_of(Position from, Position to);

/// True when `a` (moving from `a_from`) beats `b` (moving from `b_from`) for
/// the same target: west > east > south > north, then smaller (y, x) origin.
bool has_priority(Position a_from, const MoveDecision& a, Position b_from, const MoveDecision& b);

Dimensions find_dimension(Coord n);
Coord find_y_max(const Snapshot& s);
Coord find_x_min(const Snapshot& s);

bool westward_movable(const Snapshot& s, Position p, Coord x_min);
/// Dense west packing on alternate columns starting at `x_min`.
bool settled_in_row(const Snapshot& s, Position p, Coord x_min);
bool all_in_odd_band(const Snapshot& s, Coord y_max, Coord d);
Coord west_count(const Snapshot& s, Position p);
/// Some odd row strictly above `p`'s row holds fewer than `rc` robots.
bool deficient_odd_row_above(const Snapshot& s, Position p, Coord y_max, Coord rc);

CaseLabel classify(const Snapshot& s);
MoveDecision compute_move(const Snapshot& s);

/// One frozen snapshot shared by every robot activated in a round. The
/// configuration-wide phase tests are evaluated once, so deciding for all
/// robots costs far less than calling compute_move per robot. Results are
/// identical to compute_move on the corresponding Snapshot.
class RoundView {
 public:
  explicit RoundView(std::vector<Position> positions);

  const Snapshot& snapshot() const { return world_; }
  const Dimensions& dimensions() const { return dims_; }
  const Bounds& bounds() const { return bounds_; }

  CaseLabel classify(Position me) const;
  /// The move a robot at `me` would make ignoring same-target contention.
  MoveDecision intent(Position me) const;
  /// intent() after yielding to any higher-priority robot claiming the same
  /// target.
  MoveDecision decide(Position me) const;

  /// Robot currently carrying a row lift, if any (see classify()).
  std::optional<Position> lifting_robot() const;

 private:
  /// A packed but non-final configuration in which no robot can move: every
  /// robot of the row below the northmost deficient row sits under an
  /// occupied node. The east-most robot of that row walks east along its
  /// row to the deficient row's first vacant column, then hops north.
  struct Lift {
    Position robot;
    Coord column = 0;
  };

  RoundView(std::vector<Position> positions, bool allow_lift);

  CaseLabel classify_rows(Position me) const;
  MoveDecision move_for(Position me, CaseLabel label) const;
  bool stuck() const;
  std::optional<Lift> find_lift() const;

  Snapshot world_;
  Dimensions dims_;
  Bounds bounds_;
  bool settled_all_ = false;  // n == 1 or already the final formation
  bool in_band_ = false;
  bool rows_packed_ = false;
  std::optional<Lift> lift_;
};

}  // namespace gridscatter
