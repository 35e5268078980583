#include <sstream>

#include "doctest.h"
#include "gridscatter/scenario.hpp"
#include "gridscatter/sim.hpp"
#include "gridscatter/trace.hpp"
#include "gridscatter/verifier.hpp"

using namespace gridscatter;

namespace {

std::string trace_of(const Configuration& initial, const std::string& strategy, std::uint64_t seed) {
  const auto result = run(initial, make_strategy(strategy, initial.size()), {10000, seed, true});
  std::ostringstream out;
  write_trace(out, {strategy, seed}, initial, result.records, result.outcome);
  return out.str();
}

ReplayReport replay_text(const std::string& text) {
  std::istringstream in(text);
  return replay(read_trace(in));
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

const Configuration kStacked({{1, {0, 0}}, {2, {0, -1}}});

}  // namespace

TEST_CASE("single robot trace") {
  CHECK(trace_of(Configuration({{1, {7, -3}}}), "fsync", 0) ==
        "# gridscatter-trace v1\n"
        "meta n=1 rc=1 d=1 ymax=-3 xmin=7 strategy=fsync seed=0\n"
        "init 1 7 -3\n"
        "round 1 activated=1\n"
        "wait 1 case=SETTLED\n"
        "end status=converged rounds=0 moves=0\n");
}

TEST_CASE("two stacked robots trace") {
  CHECK(trace_of(kStacked, "fsync", 0) ==
        "# gridscatter-trace v1\n"
        "meta n=2 rc=2 d=3 ymax=0 xmin=0 strategy=fsync seed=0\n"
        "init 1 0 0\n"
        "init 2 0 -1\n"
        "round 1 activated=1,2\n"
        "wait 1 case=WAIT\n"
        "move 2 0 -1 -> 1 -1 case=PSI1\n"
        "round 2 activated=1,2\n"
        "wait 1 case=WAIT\n"
        "move 2 1 -1 -> 1 0 case=PSI1\n"
        "round 3 activated=1,2\n"
        "wait 1 case=WAIT\n"
        "move 2 1 0 -> 2 0 case=PSI3_EAST\n"
        "round 4 activated=1,2\n"
        "wait 1 case=SETTLED\n"
        "wait 2 case=SETTLED\n"
        "end status=converged rounds=3 moves=3\n");
}

TEST_CASE("traces replay consistently") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    for (const auto* strategy : {"fsync", "ssync:p=0.3,w=5", "roundrobin"}) {
      const auto initial = generate_initial(3 + seed * 3, 6, seed);
      const auto text = trace_of(initial, strategy, seed);
      std::istringstream in(text);
      const auto trace = read_trace(in);
      CHECK(trace.meta.strategy == strategy);
      CHECK(trace.initial == initial);
      const auto report = replay(trace);
      for (const auto& p : report.problems) INFO(p);
      CHECK(report.consistent());
      CHECK(report.violations.empty());
      CHECK(is_final(report.final));
      CHECK(replay_configurations(trace).back() == report.final);
    }
  }
}

TEST_CASE("replay catches edited traces") {
  const auto text = trace_of(kStacked, "fsync", 0);
  CHECK(replay_text(text).consistent());
  // Moved somewhere else.
  CHECK_FALSE(replay_text(replace(text, "-> 1 -1 case=PSI1", "-> 0 -2 case=PSI1")).consistent());
  // Wrong label.
  CHECK_FALSE(replay_text(replace(text, "case=PSI3_EAST", "case=PSI4")).consistent());
  // A waiting robot claimed to move.
  CHECK_FALSE(replay_text(replace(text, "round 1 activated=1,2\nwait 1 case=WAIT", "round 1 activated=1,2\nmove 1 0 0 -> 0 1 case=PSI1"))
                  .consistent());
  // A violation that did not happen.
  CHECK_FALSE(replay_text(replace(text, "round 2 ", "violation TargetConflict round=1 robots=1,2 nodes=0,0\nround 2 "))
                  .consistent());
  // Footer disagreeing with the rounds.
  CHECK_FALSE(replay_text(replace(text, "rounds=3 moves=3", "rounds=2 moves=3")).consistent());
  CHECK_FALSE(replay_text(replace(text, "rounds=3 moves=3", "rounds=3 moves=4")).consistent());
  // Quiescence round dropped.
  CHECK_FALSE(replay_text(replace(text, "round 4 activated=1,2\nwait 1 case=SETTLED\nwait 2 case=SETTLED\n", "")).consistent());
}

TEST_CASE("malformed traces are rejected with a line number") {
  const auto text = trace_of(kStacked, "fsync", 0);
  auto error_of = [](const std::string& t) -> std::string {
    std::istringstream in(t);
    try {
      read_trace(in);
    } catch (const std::invalid_argument& e) {
      return e.what();
    }
    return "";
  };
  CHECK(error_of(replace(text, "# gridscatter-trace v1", "# gridscatter-trace v2")).find("line 1") != std::string::npos);
  CHECK(error_of(replace(text, "init 2 0 -1", "init 2 0")).find("line 4") != std::string::npos);
  CHECK(error_of(replace(text, "case=PSI1", "case=PSI9")).find("line 7") != std::string::npos);
  CHECK(error_of(replace(text, "end status=converged rounds=3 moves=3\n", "")) != "");
  CHECK(error_of("") != "");
}

TEST_CASE("violation lines") {
  CHECK(format_violation({ViolationKind::kPathCrossViolation, 7, {1, 2}, {{0, 0}, {1, 0}}}) ==
        "violation PathCrossViolation round=7 robots=1,2 nodes=0,0;1,0");
  CHECK(format_violation({ViolationKind::kBoundDrift, 2, {}, {}}) == "violation BoundDrift round=2 robots=- nodes=-");
}
