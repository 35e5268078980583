#pragma once

// Trace format v1: a line-oriented record of one run.
//
//   # gridscatter-trace v1
//   meta n=<n> rc=<rc> d=<d> ymax=<y> xmin=<x> strategy=<spec> seed=<seed>
//   init <id> <x> <y>                                  (ascending id)
//   round <t> activated=<ids ascending, comma-separated>
//   move <id> <x1> <y1> -> <x2> <y2> case=<label>
//   wait <id> case=<label>
//   violation <kind> round=<t> robots=<ids|-> nodes=<x>,<y>;...|-
//   end status=<converged|maxrounds|violation> rounds=<t> moves=<m>
//
// Every activated robot gets exactly one move or wait line, in ascending id
// order, followed by the round's violation lines.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridscatter/grid.hpp"
#include "gridscatter/round.hpp"
#include "gridscatter/sim.hpp"

namespace gridscatter {

struct TraceMeta {
  std::string strategy = "fsync";
  std::uint64_t seed = 0;
};

void write_trace(std::ostream& out, const TraceMeta& meta, const Configuration& initial,
                 std::span<const RoundRecord> records, const RunOutcome& outcome);

std::string format_violation(const ViolationEvent& v);

struct TraceMove {
  RobotId id = 0;
  Position from;
  Position to;
  CaseLabel label{};
};

struct TraceWait {
  RobotId id = 0;
  CaseLabel label{};
};

struct TraceRound {
  std::uint64_t round = 0;
  std::vector<RobotId> activated;
  std::vector<TraceMove> moves;
  std::vector<TraceWait> waits;
  std::vector<std::string> violations;  // verbatim lines
};

struct Trace {
  TraceMeta meta;
  std::size_t n = 0;
  Coord rc = 0;
  Coord d = 0;
  Coord y_max = 0;
  Coord x_min = 0;
  Configuration initial;
  std::vector<TraceRound> rounds;
  RunStatus status = RunStatus::kMaxRoundsExceeded;
  std::uint64_t end_rounds = 0;
  std::uint64_t end_moves = 0;
};

/// Throws std::invalid_argument with the offending line number on malformed
/// input.
Trace read_trace(std::istream& in);

/// Configurations after each round, starting with the initial one.
std::vector<Configuration> replay_configurations(const Trace& trace);

struct ReplayReport {
  /// Disagreements between the trace and an independent re-execution.
  std::vector<std::string> problems;
  /// Violations found by re-checking every round.
  std::vector<ViolationEvent> violations;
  Configuration final;
  bool consistent() const { return problems.empty(); }
};

/// Replays a trace: reconstructs each configuration from `init` and `move`
/// lines, recomputes the round from its activation set, and re-runs every
/// verifier check. Reports any line that disagrees.
ReplayReport replay(const Trace& trace);

}  // namespace gridscatter
