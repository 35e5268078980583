#pragma once

// Semi-synchronous round engine: activation strategies, atomic application of
// simultaneous moves, and run-to-convergence.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gridscatter/grid.hpp"
#include "gridscatter/round.hpp"

namespace gridscatter {

struct FsyncStrategy {
  friend bool operator==(const FsyncStrategy&, const FsyncStrategy&) = default;
};

/// Each robot is activated independently with `activation_probability`;
/// robots idle for `fairness_window - 1` rounds are forced in.
struct RandomSubsetStrategy {
  double activation_probability = 1.0;
  std::uint64_t fairness_window = 1;
  friend bool operator==(const RandomSubsetStrategy&, const RandomSubsetStrategy&) = default;
};

struct RoundRobinStrategy {
  friend bool operator==(const RoundRobinStrategy&, const RoundRobinStrategy&) = default;
};

/// Explicit activation sets, replayed cyclically.
struct ScriptedStrategy {
  std::vector<std::vector<RobotId>> rounds;
  friend bool operator==(const ScriptedStrategy&, const ScriptedStrategy&) = default;
};

using ScheduleStrategy = std::variant<FsyncStrategy, RandomSubsetStrategy, RoundRobinStrategy, ScriptedStrategy>;

/// Parses `fsync`, `ssync:p=<p>,w=<w>`, `roundrobin` or `scripted:<path>`
/// and validates the result against `n` robots with ids 1..n.
ScheduleStrategy make_strategy(std::string_view spec, std::size_t n);

/// Parses one scripted schedule: one line per round, comma-separated ids.
ScriptedStrategy parse_script(std::string_view text);

/// Longest run of rounds any robot may be left idle, plus one.
std::uint64_t fairness_window(const ScheduleStrategy& strategy, std::size_t n);

/// Produces the activation set of each round. Owns the seeded random source.
class Scheduler {
 public:
  Scheduler(ScheduleStrategy strategy, std::vector<RobotId> ids, std::uint64_t seed);

  /// Ascending, nonempty.
  std::vector<RobotId> next();

 private:
  ScheduleStrategy strategy_;
  std::vector<RobotId> ids_;
  std::vector<std::uint64_t> idle_;  // rounds since last activation, per ids_ slot
  std::uint64_t round_ = 0;
  std::mt19937_64 rng_;
};

struct StepResult {
  Configuration next;
  RoundRecord record;
};

/// Move phase for decisions already in `rec` (one per activated robot).
/// Same-target claims are arbitrated by has_priority() and recorded as
/// ConflictEvents; moves onto a node whose occupant stays are dropped.
StepResult apply_decisions(const Configuration& c, RoundRecord rec);

/// Look, Compute and Move for one round. All activated robots decide on the
/// same frozen snapshot; surviving moves are applied simultaneously. The
/// returned record carries no violations; run() fills those in.
StepResult step(const Configuration& c, std::span<const RobotId> activated, std::uint64_t round = 1);

enum class RunStatus { kConverged, kMaxRoundsExceeded, kViolationHalt };

std::string_view to_string(RunStatus s);

struct RunOutcome {
  RunStatus status = RunStatus::kMaxRoundsExceeded;
  /// Converged: rounds before the confirming quiescence round. Otherwise the
  /// number of rounds executed.
  std::uint64_t rounds = 0;
  std::uint64_t total_moves = 0;
  Configuration final;
};

struct RunOptions {
  std::uint64_t max_rounds = 10000;
  std::uint64_t seed = 0;
  bool strict = false;  // halt on the first violation
};

struct RunResult {
  RunOutcome outcome;
  std::vector<RoundRecord> records;
};

RunResult run(const Configuration& initial, const ScheduleStrategy& strategy, const RunOptions& options);

}  // namespace gridscatter
