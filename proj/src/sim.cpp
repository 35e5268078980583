#include "gridscatter/sim.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gridscatter/compute.hpp"
#include "gridscatter/verifier.hpp"

namespace gridscatter {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw std::invalid_argument("malformed " + std::string(what) + ": '" + std::string(text) + "'");
  return value;
}

RandomSubsetStrategy parse_ssync(std::string_view args) {
  // p=<decimal>,w=<int>
  auto comma = args.find(',');
  if (comma == std::string_view::npos || !args.starts_with("p=") || args.substr(comma + 1, 2) != "w=")
    throw std::invalid_argument("expected ssync:p=<probability>,w=<window>");
  RandomSubsetStrategy s;
  s.activation_probability = parse_number<double>(args.substr(2, comma - 2), "activation probability");
  s.fairness_window = parse_number<std::uint64_t>(args.substr(comma + 3), "fairness window");
  if (!(s.activation_probability > 0.0 && s.activation_probability <= 1.0))
    throw std::invalid_argument("activation probability must lie in (0,1]");
  if (s.fairness_window < 1) throw std::invalid_argument("fairness window must be at least 1");
  return s;
}

void validate_script(const ScriptedStrategy& s, std::size_t n) {
  if (s.rounds.empty()) throw std::invalid_argument("scripted schedule has no rounds");
  std::set<RobotId> seen;
  for (const auto& ids : s.rounds) {
    if (ids.empty()) throw std::invalid_argument("scripted schedule contains an empty activation set");
    for (RobotId id : ids) {
      if (id < 1 || id > n) throw std::invalid_argument("scripted schedule references unknown robot " + std::to_string(id));
      seen.insert(id);
    }
  }
  if (seen.size() != n) throw std::invalid_argument("scripted schedule never activates some robot");
}

}  // namespace

ScriptedStrategy parse_script(std::string_view text) {
  ScriptedStrategy s;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    auto line = trim(text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos));
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    if (line.empty() || line.front() == '#') continue;
    std::vector<RobotId> ids;
    std::size_t at = 0;
    while (at <= line.size()) {
      auto next = line.find(',', at);
      auto field = trim(line.substr(at, next == std::string_view::npos ? std::string_view::npos : next - at));
      ids.push_back(parse_number<RobotId>(field, "robot id"));
      if (next == std::string_view::npos) break;
      at = next + 1;
    }
    std::ranges::sort(ids);
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    s.rounds.push_back(std::move(ids));
  }
  return s;
}

ScheduleStrategy make_strategy(std::string_view spec, std::size_t n) {
  if (n == 0) throw std::invalid_argument("a schedule needs at least one robot");
  if (spec == "fsync") return FsyncStrategy{};
  if (spec == "roundrobin") return RoundRobinStrategy{};
  if (spec.starts_with("ssync:")) return parse_ssync(spec.substr(6));
  if (spec.starts_with("scripted:")) {
    std::string path(spec.substr(9));
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scripted schedule " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto s = parse_script(buf.str());
    validate_script(s, n);
    return s;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(spec) + "'");
}

std::uint64_t fairness_window(const ScheduleStrategy& strategy, std::size_t n) {
  return std::visit(overloaded{
                        [](const FsyncStrategy&) -> std::uint64_t { return 1; },
                        [](const RandomSubsetStrategy& s) -> std::uint64_t { return s.fairness_window; },
                        [n](const RoundRobinStrategy&) -> std::uint64_t { return n; },
                        [n](const ScriptedStrategy& s) -> std::uint64_t {
                          // Largest cyclic gap between activations of any robot.
                          const std::uint64_t len = s.rounds.size();
                          std::uint64_t worst = 1;
                          for (RobotId id = 1; id <= n; ++id) {
                            std::vector<std::uint64_t> at;
                            for (std::uint64_t r = 0; r < len; ++r)
                              if (std::ranges::binary_search(s.rounds[r], id)) at.push_back(r);
                            if (at.empty()) return std::numeric_limits<std::uint64_t>::max();
                            for (std::size_t k = 0; k < at.size(); ++k) {
                              std::uint64_t next = k + 1 < at.size() ? at[k + 1] : at.front() + len;
                              worst = std::max(worst, next - at[k]);
                            }
                          }
                          return worst;
                        },
                    },
                    strategy);
}

Scheduler::Scheduler(ScheduleStrategy strategy, std::vector<RobotId> ids, std::uint64_t seed)
    : strategy_(std::move(strategy)), ids_(std::move(ids)), idle_(ids_.size(), 0), rng_(seed) {
  if (ids_.empty()) throw std::invalid_argument("a scheduler needs at least one robot");
  std::ranges::sort(ids_);
}

std::vector<RobotId> Scheduler::next() {
  const std::uint64_t round = round_++;
  return std::visit(
      overloaded{
          [&](const FsyncStrategy&) { return ids_; },
          [&](const RoundRobinStrategy&) { return std::vector<RobotId>{ids_[round % ids_.size()]}; },
          [&](const ScriptedStrategy& s) { return s.rounds[round % s.rounds.size()]; },
          [&](const RandomSubsetStrategy& s) {
            std::bernoulli_distribution draw(s.activation_probability);
            std::vector<bool> chosen(ids_.size(), false);
            for (std::size_t k = 0; k < ids_.size(); ++k) {
              bool picked = draw(rng_);
              chosen[k] = picked || idle_[k] + 1 >= s.fairness_window;
            }
            if (std::ranges::none_of(chosen, [](bool b) { return b; })) {
              std::uniform_int_distribution<std::size_t> pick(0, ids_.size() - 1);
              chosen[pick(rng_)] = true;
            }
            std::vector<RobotId> out;
            for (std::size_t k = 0; k < ids_.size(); ++k) {
              if (chosen[k]) {
                out.push_back(ids_[k]);
                idle_[k] = 0;
              } else {
                ++idle_[k];
              }
            }
            return out;
          },
      },
      strategy_);
}

StepResult step(const Configuration& c, std::span<const RobotId> activated, std::uint64_t round) {
  if (activated.empty()) throw std::invalid_argument("a round must activate at least one robot");

  RoundRecord rec;
  rec.round = round;
  rec.activated.assign(activated.begin(), activated.end());
  std::ranges::sort(rec.activated);
  rec.activated.erase(std::unique(rec.activated.begin(), rec.activated.end()), rec.activated.end());
  for (RobotId id : rec.activated)
    if (!c.contains(id)) throw std::invalid_argument("unknown robot id " + std::to_string(id));

  // Look: one frozen snapshot for everybody. Compute: per activated robot.
  const RoundView view(c.positions());
  rec.final_before = is_final(view.snapshot().others());
  for (RobotId id : rec.activated) rec.decisions.emplace(id, view.decide(c.at(id)));
  return apply_decisions(c, std::move(rec));
}

StepResult apply_decisions(const Configuration& c, RoundRecord rec) {
  for (const auto& [id, d] : rec.decisions)
    if (!c.contains(id)) throw std::invalid_argument("unknown robot id " + std::to_string(id));

  // Same-target arbitration.
  std::map<Position, std::vector<RobotId>> claims;
  for (const auto& [id, d] : rec.decisions)
    if (d.moves()) claims[d.target].push_back(id);
  std::set<RobotId> movers;
  for (const auto& [target, ids] : claims) {
    RobotId winner = ids.front();
    for (RobotId id : ids)
      if (has_priority(c.at(id), rec.decisions.at(id), c.at(winner), rec.decisions.at(winner))) winner = id;
    movers.insert(winner);
    if (ids.size() > 1) rec.conflicts.push_back({target, ids, winner});
  }

  // Moves onto a node whose occupant stays put are dropped, repeatedly,
  // since dropping one move can strand another.
  std::map<Position, RobotId> occupant;
  for (const auto& [id, p] : c.robots()) occupant.emplace(p, id);
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = movers.begin(); it != movers.end();) {
      auto occ = occupant.find(rec.decisions.at(*it).target);
      if (occ != occupant.end() && !movers.contains(occ->second)) {
        it = movers.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }

  auto robots = c.robots();
  for (RobotId id : movers) {
    rec.applied.emplace(id, rec.decisions.at(id).target);
    robots[id] = rec.decisions.at(id).target;
  }
  return {Configuration(std::move(robots)), std::move(rec)};
}

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kConverged: return "converged";
    case RunStatus::kMaxRoundsExceeded: return "maxrounds";
    case RunStatus::kViolationHalt: return "violation";
  }
  return "?";
}

RunResult run(const Configuration& initial, const ScheduleStrategy& strategy, const RunOptions& options) {
  if (initial.size() == 0) throw std::invalid_argument("cannot run an empty configuration");
  if (options.max_rounds == 0) throw std::invalid_argument("max_rounds must be positive");

  std::vector<RobotId> ids;
  for (const auto& [id, p] : initial.robots()) ids.push_back(id);
  Scheduler scheduler(strategy, ids, options.seed);

  RunResult result;
  Configuration current = initial;
  std::uint64_t moves = 0;
  for (std::uint64_t t = 1; t <= options.max_rounds; ++t) {
    const bool quiescence_check = is_final(current);
    const auto activated = quiescence_check ? ids : scheduler.next();
    auto [next, rec] = step(current, activated, t);
    rec.violations = check_round(current, rec, next);
    moves += rec.applied.size();
    const bool violated = !rec.violations.empty();
    const bool quiet = rec.applied.empty();
    result.records.push_back(std::move(rec));
    current = std::move(next);

    if (options.strict && violated) {
      result.outcome = {RunStatus::kViolationHalt, t, moves, current};
      return result;
    }
    if (quiescence_check && quiet) {
      result.outcome = {RunStatus::kConverged, t - 1, moves, current};
      return result;
    }
  }
  result.outcome = {RunStatus::kMaxRoundsExceeded, options.max_rounds, moves, current};
  return result;
}

}  // namespace gridscatter
