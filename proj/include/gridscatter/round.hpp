#pragma once

// Records produced by one synchronous round.

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "gridscatter/compute.hpp"
#include "gridscatter/grid.hpp"

namespace gridscatter {

enum class ViolationKind {
  kDuplicateOccupancy,
  kOffLatticeMove,
  kPathCrossViolation,
  kIntermediateOccupied,
  kBoundDrift,
  kEvenRowReentry,
  kTargetConflict,
};

std::string_view to_string(ViolationKind kind);
std::optional<ViolationKind> parse_violation_kind(std::string_view text);

struct ViolationEvent {
  ViolationKind kind{};
  std::uint64_t round = 0;
  std::vector<RobotId> robots;
  std::vector<Position> nodes;

  friend bool operator==(const ViolationEvent&, const ViolationEvent&) = default;
};

/// Two or more movers claimed the same node; `winner` was applied.
struct ConflictEvent {
  Position target{};
  std::vector<RobotId> claimants;
  RobotId winner = 0;

  friend bool operator==(const ConflictEvent&, const ConflictEvent&) = default;
};

struct RoundRecord {
  std::uint64_t round = 0;  // 1-based
  std::vector<RobotId> activated;  // ascending
  std::map<RobotId, MoveDecision> decisions;
  std::map<RobotId, Position> applied;  // post-round positions of robots that moved
  std::vector<ConflictEvent> conflicts;
  std::vector<ViolationEvent> violations;
  bool final_before = false;  // configuration entering the round was already final

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

}  // namespace gridscatter
