#pragma once

// Batches of runs over (n, seed) cells, verified and aggregated.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridscatter/round.hpp"
#include "gridscatter/sim.hpp"

namespace gridscatter {

struct SweepConfig {
  std::size_t n_min = 1;
  std::size_t n_max = 1;
  std::uint64_t seeds = 1;            // initial configurations per n: seeds 0..seeds-1
  std::uint64_t scheduler_seeds = 1;  // scheduler runs per initial configuration
  Coord box = 15;
  std::string strategy = "fsync";
  std::uint64_t max_rounds = 10000;
  unsigned jobs = 1;
};

/// Scheduler seed of the k-th run on the configuration drawn with `seed`.
std::uint64_t scheduler_seed(std::uint64_t seed, std::uint64_t k);

struct SweepRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t scheduler_seed = 0;
  std::optional<std::string> error;  // failed cell
  RunStatus status = RunStatus::kMaxRoundsExceeded;
  std::uint64_t rounds = 0;
  std::uint64_t moves = 0;
  std::uint64_t conflicts = 0;
  std::map<ViolationKind, std::uint64_t> violations;
  bool final_shape = false;     // is_final on the final configuration
  bool oracle_match = false;    // final set == expected_final(initial)
  bool progress_ok = false;     // check_progress with the strategy's fairness window

  std::uint64_t violation_total() const;
};

struct SweepSummary {
  std::uint64_t runs = 0;
  std::uint64_t converged = 0;
  std::uint64_t errors = 0;
  std::uint64_t rounds_min = 0;
  std::uint64_t rounds_median = 0;
  std::uint64_t rounds_max = 0;
  std::uint64_t total_moves = 0;
  std::uint64_t conflicts = 0;
  std::map<ViolationKind, std::uint64_t> violations;
  std::uint64_t oracle_mismatches = 0;
  std::uint64_t progress_failures = 0;
};

SweepRow run_cell(std::size_t n, std::uint64_t seed, std::uint64_t k, const SweepConfig& config);

/// Rows ordered by (n, seed, scheduler run) regardless of `jobs`.
std::vector<SweepRow> sweep(const SweepConfig& config);

SweepSummary summarize(const std::vector<SweepRow>& rows);

std::string format_row(const SweepRow& row);
std::string format_summary(const SweepSummary& summary);

}  // namespace gridscatter
