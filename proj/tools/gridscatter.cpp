// gridscatter: run, verify, render and sweep the uniform-scattering protocol.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "gridscatter/render.hpp"
#include "gridscatter/scenario.hpp"
#include "gridscatter/sim.hpp"
#include "gridscatter/sweep.hpp"
#include "gridscatter/trace.hpp"
#include "gridscatter/verifier.hpp"

using namespace gridscatter;

namespace {

struct RunArgs {
  std::optional<std::size_t> n;
  std::uint64_t seed = 0;
  Coord box = 15;
  std::string strategy = "fsync";
  std::uint64_t max_rounds = 10000;
  std::optional<std::string> initial;
  std::optional<std::string> trace;
  bool strict = true;
  bool render = false;
};

int do_run(const RunArgs& args) {
  if (args.n.has_value() == args.initial.has_value()) throw std::invalid_argument("give exactly one of --n and --initial");
  if (args.n && args.box < 1) throw std::invalid_argument("--box must be at least 1");

  const Configuration initial = args.n ? generate_initial(*args.n, args.box, args.seed) : parse_initial(*args.initial);
  const auto strategy = make_strategy(args.strategy, initial.size());
  const auto result = run(initial, strategy, {args.max_rounds, args.seed, args.strict});

  if (args.trace) {
    const TraceMeta meta{args.strategy, args.seed};
    if (*args.trace == "-") {
      write_trace(std::cout, meta, initial, result.records, result.outcome);
    } else {
      std::ofstream out(*args.trace, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + *args.trace);
      write_trace(out, meta, initial, result.records, result.outcome);
    }
  }

  std::uint64_t violations = 0;
  std::uint64_t conflicts = 0;
  for (const auto& rec : result.records) {
    violations += rec.violations.size();
    conflicts += rec.conflicts.size();
  }
  std::ostream& log = args.trace && *args.trace == "-" ? std::cerr : std::cout;
  if (args.render) {
    log << "initial\n" << render_ascii(initial) << "final\n" << render_ascii(result.outcome.final);
  }
  log << "status=" << to_string(result.outcome.status) << " rounds=" << result.outcome.rounds
      << " moves=" << result.outcome.total_moves << " conflicts=" << conflicts << " violations=" << violations
      << " oracle=" << (result.outcome.final.positions() == expected_final(initial) ? "match" : "mismatch") << '\n';
  return result.outcome.status == RunStatus::kConverged ? 0 : 1;
}

Trace load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_trace(in);
}

int do_verify(const std::string& path) {
  const auto trace = load_trace(path);
  const auto report = replay(trace);
  for (const auto& p : report.problems) std::cout << "mismatch " << p << '\n';
  std::cout << "rounds=" << trace.rounds.size() << " violations=" << report.violations.size()
            << " final=" << (is_final(report.final) ? "yes" : "no") << " replay="
            << (report.consistent() ? "consistent" : "inconsistent") << '\n';
  return report.consistent() && report.violations.empty() ? 0 : 1;
}

int do_render(const std::string& path, bool every_round) {
  const auto trace = load_trace(path);
  const auto configs = replay_configurations(trace);
  if (every_round) {
    for (std::size_t t = 0; t < configs.size(); ++t)
      std::cout << (t == 0 ? std::string("initial") : "round " + std::to_string(t)) << '\n' << render_ascii(configs[t]);
  } else {
    std::cout << "initial\n" << render_ascii(configs.front()) << "final\n" << render_ascii(configs.back());
  }
  return 0;
}

int do_sweep(const SweepConfig& config, const std::optional<std::string>& out_path) {
  const auto rows = sweep(config);
  const auto summary = summarize(rows);
  std::ofstream file;
  if (out_path) {
    file.open(*out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + *out_path);
  }
  std::ostream& out = out_path ? file : std::cout;
  for (const auto& row : rows) out << format_row(row) << '\n';
  out << format_summary(summary) << '\n';
  if (out_path) std::cout << format_summary(summary) << '\n';

  std::uint64_t violations = 0;
  for (const auto& [kind, count] : summary.violations) violations += count;
  const bool clean = summary.converged == summary.runs && violations == 0 && summary.oracle_mismatches == 0 &&
                     summary.progress_failures == 0;
  return clean ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniform scattering of oblivious robots on a grid: simulator and verifier"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run one simulation");
  auto* n_opt = run_cmd->add_option("--n", run_args.n, "Number of robots to generate")->check(CLI::PositiveNumber);
  auto* init_opt = run_cmd->add_option("--initial", run_args.initial, "Initial configuration file")->check(CLI::ExistingFile);
  n_opt->excludes(init_opt);
  run_cmd->add_option("--seed", run_args.seed, "Seed for generation and scheduling");
  run_cmd->add_option("--box", run_args.box, "Half-width of the sampling square");
  run_cmd->add_option("--strategy", run_args.strategy, "fsync | ssync:p=<p>,w=<w> | roundrobin | scripted:<path>");
  run_cmd->add_option("--max-rounds", run_args.max_rounds, "Round limit")->check(CLI::PositiveNumber);
  run_cmd->add_option("--trace", run_args.trace, "Write a v1 trace to this path ('-' for stdout)");
  run_cmd->add_flag("--strict,!--no-strict", run_args.strict, "Halt on the first violation (default on)");
  run_cmd->add_flag("--render", run_args.render, "Print the initial and final configurations");

  std::string verify_path;
  auto* verify_cmd = app.add_subcommand("verify", "Replay a trace and re-check every invariant");
  verify_cmd->add_option("trace", verify_path, "Trace file")->required()->check(CLI::ExistingFile);

  std::string render_path;
  bool render_all = false;
  auto* render_cmd = app.add_subcommand("render", "Draw the configurations of a trace");
  render_cmd->add_option("trace", render_path, "Trace file")->required()->check(CLI::ExistingFile);
  render_cmd->add_flag("--all", render_all, "Draw every round, not just the first and last");

  SweepConfig sweep_config;
  sweep_config.jobs = std::max(1u, std::thread::hardware_concurrency());
  std::optional<std::string> sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run and verify many seeded simulations");
  sweep_cmd->add_option("--n-min", sweep_config.n_min, "Smallest robot count")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--n-max", sweep_config.n_max, "Largest robot count")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seeds", sweep_config.seeds, "Initial configurations per robot count")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--scheduler-seeds", sweep_config.scheduler_seeds, "Scheduler runs per configuration")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--box", sweep_config.box, "Half-width of the sampling square")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--strategy", sweep_config.strategy, "Activation strategy");
  sweep_cmd->add_option("--max-rounds", sweep_config.max_rounds, "Round limit per run")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--jobs", sweep_config.jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", sweep_out, "Write rows and summary here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return do_run(run_args);
    if (*verify_cmd) return do_verify(verify_path);
    if (*render_cmd) return do_render(render_path, render_all);
    if (*sweep_cmd) {
      if (sweep_config.n_max < sweep_config.n_min) sweep_config.n_max = sweep_config.n_min;
      return do_sweep(sweep_config, sweep_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
