#include "gridscatter/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gridscatter/scenario.hpp"
#include "gridscatter/verifier.hpp"

namespace gridscatter {

std::uint64_t scheduler_seed(std::uint64_t seed, std::uint64_t k) { return seed ^ (k << 32); }

std::uint64_t SweepRow::violation_total() const {
  std::uint64_t total = 0;
  for (const auto& [kind, count] : violations) total += count;
  return total;
}

SweepRow run_cell(std::size_t n, std::uint64_t seed, std::uint64_t k, const SweepConfig& config) {
  SweepRow row;
  row.n = n;
  row.seed = seed;
  row.scheduler_seed = scheduler_seed(seed, k);
  try {
    const auto initial = generate_initial(n, config.box, seed);
    const auto strategy = make_strategy(config.strategy, n);
    const auto result = run(initial, strategy, {config.max_rounds, row.scheduler_seed, false});
    row.status = result.outcome.status;
    row.rounds = result.outcome.rounds;
    row.moves = result.outcome.total_moves;
    for (const auto& rec : result.records) {
      row.conflicts += rec.conflicts.size();
      for (const auto& v : rec.violations) ++row.violations[v.kind];
    }
    row.final_shape = is_final(result.outcome.final);
    row.oracle_match = result.outcome.final.positions() == expected_final(initial);
    row.progress_ok = check_progress(result.records, fairness_window(strategy, n));
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> sweep(const SweepConfig& config) {
  if (config.n_min < 1 || config.n_min > config.n_max) throw std::invalid_argument("empty robot-count range");
  if (config.seeds < 1 || config.scheduler_seeds < 1) throw std::invalid_argument("empty seed range");

  struct Cell {
    std::size_t n;
    std::uint64_t seed;
    std::uint64_t k;
  };
  std::vector<Cell> cells;
  for (std::size_t n = config.n_min; n <= config.n_max; ++n)
    for (std::uint64_t seed = 0; seed < config.seeds; ++seed)
      for (std::uint64_t k = 0; k < config.scheduler_seeds; ++k) cells.push_back({n, seed, k});

  std::vector<SweepRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) rows[i] = run_cell(cells[i].n, cells[i].seed, cells[i].k, config);
  };
  const unsigned jobs = std::max(1u, config.jobs);
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  return rows;
}

SweepSummary summarize(const std::vector<SweepRow>& rows) {
  SweepSummary s;
  std::vector<std::uint64_t> rounds;
  for (const auto& row : rows) {
    ++s.runs;
    if (row.error) {
      ++s.errors;
      continue;
    }
    if (row.status == RunStatus::kConverged) {
      ++s.converged;
      rounds.push_back(row.rounds);
      if (!row.oracle_match) ++s.oracle_mismatches;
    }
    if (!row.progress_ok) ++s.progress_failures;
    s.total_moves += row.moves;
    s.conflicts += row.conflicts;
    for (const auto& [kind, count] : row.violations) s.violations[kind] += count;
  }
  if (!rounds.empty()) {
    std::ranges::sort(rounds);
    s.rounds_min = rounds.front();
    s.rounds_max = rounds.back();
    s.rounds_median = rounds[(rounds.size() - 1) / 2];
  }
  return s;
}

std::string format_row(const SweepRow& row) {
  std::ostringstream out;
  out << "run n=" << row.n << " seed=" << row.seed << " sched=" << row.scheduler_seed;
  if (row.error) {
    out << " status=error error=\"" << *row.error << '"';
    return out.str();
  }
  out << " status=" << to_string(row.status) << " rounds=" << row.rounds << " moves=" << row.moves
      << " conflicts=" << row.conflicts << " violations=" << row.violation_total()
      << " shape=" << (row.final_shape ? "final" : "open") << " oracle=" << (row.oracle_match ? "match" : "mismatch")
      << " progress=" << (row.progress_ok ? "ok" : "stall");
  return out.str();
}

std::string format_summary(const SweepSummary& s) {
  std::ostringstream out;
  const double rate = s.runs ? static_cast<double>(s.converged) / static_cast<double>(s.runs) : 0.0;
  std::uint64_t violations = 0;
  for (const auto& [kind, count] : s.violations) violations += count;
  out << "summary runs=" << s.runs << " converged=" << s.converged << " rate=" << std::fixed << std::setprecision(3)
      << rate << " rounds_min=" << s.rounds_min << " rounds_median=" << s.rounds_median
      << " rounds_max=" << s.rounds_max << " moves=" << s.total_moves << " conflicts=" << s.conflicts
      << " violations=" << violations << " oracle_mismatches=" << s.oracle_mismatches
      << " progress_failures=" << s.progress_failures << " errors=" << s.errors;
  for (const auto& [kind, count] : s.violations) out << ' ' << to_string(kind) << '=' << count;
  return out.str();
}

}  // namespace gridscatter
