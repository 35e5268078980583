#pragma once

// Per-round safety checks and the target-formation predicate.

#include <cstdint>
#include <span>
#include <vector>

#include "gridscatter/grid.hpp"
#include "gridscatter/round.hpp"

namespace gridscatter {

/// Rows of `rc` robots on alternate columns from (x_min, y_max) southward on
/// alternate rows; the last row is west-packed and may be partial. Sorted.
std::vector<Position> final_formation(std::size_t n, Coord x_min, Coord y_max);

bool is_final(std::span<const Position> positions);
bool is_final(const Configuration& c);

/// Formation anchored at the initial configuration's bounds.
std::vector<Position> expected_final(const Configuration& initial);

/// Violations of one round, deriving the post-round placement from `prev`
/// and `rec.applied`. Throws std::invalid_argument when `rec` does not
/// belong to `prev`.
std::vector<ViolationEvent> check_round(const Configuration& prev, const RoundRecord& rec);

/// Same, additionally requiring `next` to be the post-round configuration.
std::vector<ViolationEvent> check_round(const Configuration& prev, const RoundRecord& rec, const Configuration& next);

/// False when `window` consecutive rounds start from a non-final
/// configuration and none of them moves a robot.
bool check_progress(std::span<const RoundRecord> records, std::uint64_t window);

/// Per-robot count of moves that land on a node the robot occupied before.
/// Statistics only; re-traversal is legitimate during row re-compaction.
std::map<RobotId, std::uint64_t> count_revisits(const Configuration& initial, std::span<const RoundRecord> records);

}  // namespace gridscatter
