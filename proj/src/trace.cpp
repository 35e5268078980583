#include "gridscatter/trace.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gridscatter/compute.hpp"
#include "gridscatter/verifier.hpp"

namespace gridscatter {

namespace {

constexpr std::string_view kHeader = "# gridscatter-trace v1";

std::string join_ids(std::span<const RobotId> ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {
    std::size_t pos = 0;
    while (pos < line.size()) {
      auto sp = line.find(' ', pos);
      tokens_.push_back(line.substr(pos, sp == std::string_view::npos ? std::string_view::npos : sp - pos));
      if (sp == std::string_view::npos) break;
      pos = sp + 1;
    }
  }

  std::size_t size() const { return tokens_.size(); }
  std::string_view token(std::size_t i) const {
    if (i >= tokens_.size()) fail("too few fields");
    return tokens_[i];
  }

  template <class T>
  T number(std::string_view text) const {
    T v{};
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size())
      fail("malformed number '" + std::string(text) + "'");
    return v;
  }

  template <class T>
  T number_at(std::size_t i) const {
    return number<T>(token(i));
  }

  /// Value of a `key=value` token.
  std::string_view value(std::size_t i, std::string_view key) const {
    auto t = token(i);
    if (!t.starts_with(key) || t.size() <= key.size() || t[key.size()] != '=')
      fail("expected '" + std::string(key) + "=...'");
    return t.substr(key.size() + 1);
  }

  std::vector<RobotId> ids(std::string_view list) const {
    std::vector<RobotId> out;
    if (list == "-") return out;
    std::size_t pos = 0;
    while (true) {
      auto comma = list.find(',', pos);
      out.push_back(number<RobotId>(list.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return out;
  }

  CaseLabel label(std::string_view text) const {
    auto l = parse_case_label(text);
    if (!l) fail("unknown case label '" + std::string(text) + "'");
    return *l;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("trace line " + std::to_string(line_no_) + ": " + what + " in '" + std::string(line_) + "'");
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::vector<std::string_view> tokens_;
};

RunStatus parse_status(const LineParser& p, std::string_view text) {
  for (auto s : {RunStatus::kConverged, RunStatus::kMaxRoundsExceeded, RunStatus::kViolationHalt})
    if (to_string(s) == text) return s;
  p.fail("unknown status '" + std::string(text) + "'");
}

}  // namespace

std::string format_violation(const ViolationEvent& v) {
  std::ostringstream out;
  out << "violation " << to_string(v.kind) << " round=" << v.round << " robots=";
  if (v.robots.empty()) out << '-';
  else out << join_ids(v.robots);
  out << " nodes=";
  if (v.nodes.empty()) out << '-';
  for (std::size_t i = 0; i < v.nodes.size(); ++i) out << (i ? ";" : "") << v.nodes[i].x << ',' << v.nodes[i].y;
  return out.str();
}

void write_trace(std::ostream& out, const TraceMeta& meta, const Configuration& initial,
                 std::span<const RoundRecord> records, const RunOutcome& outcome) {
  const auto positions = initial.positions();
  const auto dims = find_dimension(static_cast<Coord>(initial.size()));
  const Snapshot s(positions, positions.front());

  out << kHeader << '\n';
  out << "meta n=" << initial.size() << " rc=" << dims.rc << " d=" << dims.d << " ymax=" << find_y_max(s)
      << " xmin=" << find_x_min(s) << " strategy=" << meta.strategy << " seed=" << meta.seed << '\n';
  for (const auto& [id, p] : initial.robots()) out << "init " << id << ' ' << p.x << ' ' << p.y << '\n';

  Configuration current = initial;
  for (const auto& rec : records) {
    out << "round " << rec.round << " activated=" << join_ids(rec.activated) << '\n';
    for (RobotId id : rec.activated) {
      const auto& decision = rec.decisions.at(id);
      if (auto it = rec.applied.find(id); it != rec.applied.end()) {
        const Position from = current.at(id);
        out << "move " << id << ' ' << from.x << ' ' << from.y << " -> " << it->second.x << ' ' << it->second.y
            << " case=" << to_string(decision.label) << '\n';
      } else {
        out << "wait " << id << " case=" << to_string(decision.label) << '\n';
      }
    }
    for (const auto& v : rec.violations) out << format_violation(v) << '\n';

    auto robots = current.robots();
    for (const auto& [id, to] : rec.applied) robots[id] = to;
    current = Configuration(std::move(robots));
  }
  out << "end status=" << to_string(outcome.status) << " rounds=" << outcome.rounds << " moves=" << outcome.total_moves
      << '\n';
  if (!out) throw std::runtime_error("failed to write trace");
}

Trace read_trace(std::istream& in) {
  Trace trace;
  std::string raw;
  std::size_t line_no = 0;
  std::vector<Position> init;
  std::vector<RobotId> init_ids;
  bool saw_header = false;
  bool saw_meta = false;
  bool saw_end = false;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    LineParser p(line, line_no);
    if (!saw_header) {
      if (line != kHeader) p.fail("missing trace header");
      saw_header = true;
      continue;
    }
    if (saw_end) p.fail("content after end line");

    const auto kind = p.token(0);
    if (kind == "meta") {
      // strategy may contain spaces (scripted paths), so seed is located from the right.
      auto strat = line.find(" strategy=");
      auto seed = line.rfind(" seed=");
      if (strat == std::string_view::npos || seed == std::string_view::npos || seed < strat) p.fail("malformed meta line");
      trace.n = p.number<std::size_t>(p.value(1, "n"));
      trace.rc = p.number<Coord>(p.value(2, "rc"));
      trace.d = p.number<Coord>(p.value(3, "d"));
      trace.y_max = p.number<Coord>(p.value(4, "ymax"));
      trace.x_min = p.number<Coord>(p.value(5, "xmin"));
      trace.meta.strategy = std::string(line.substr(strat + 10, seed - strat - 10));
      trace.meta.seed = p.number<std::uint64_t>(line.substr(seed + 6));
      saw_meta = true;
    } else if (kind == "init") {
      if (!saw_meta || !trace.rounds.empty()) p.fail("init line out of place");
      init_ids.push_back(p.number_at<RobotId>(1));
      init.push_back({p.number_at<Coord>(2), p.number_at<Coord>(3)});
    } else if (kind == "round") {
      TraceRound r;
      r.round = p.number_at<std::uint64_t>(1);
      r.activated = p.ids(p.value(2, "activated"));
      trace.rounds.push_back(std::move(r));
    } else if (kind == "move") {
      if (trace.rounds.empty()) p.fail("move before first round");
      if (p.token(4) != "->") p.fail("expected '->'");
      trace.rounds.back().moves.push_back({p.number_at<RobotId>(1),
                                           {p.number_at<Coord>(2), p.number_at<Coord>(3)},
                                           {p.number_at<Coord>(5), p.number_at<Coord>(6)},
                                           p.label(p.value(7, "case"))});
    } else if (kind == "wait") {
      if (trace.rounds.empty()) p.fail("wait before first round");
      trace.rounds.back().waits.push_back({p.number_at<RobotId>(1), p.label(p.value(2, "case"))});
    } else if (kind == "violation") {
      if (trace.rounds.empty()) p.fail("violation before first round");
      trace.rounds.back().violations.emplace_back(line);
    } else if (kind == "end") {
      trace.status = parse_status(p, p.value(1, "status"));
      trace.end_rounds = p.number<std::uint64_t>(p.value(2, "rounds"));
      trace.end_moves = p.number<std::uint64_t>(p.value(3, "moves"));
      saw_end = true;
    } else {
      p.fail("unknown record");
    }
  }
  if (!saw_header || !saw_meta) throw std::invalid_argument("trace is missing its header or meta line");
  if (!saw_end) throw std::invalid_argument("trace is truncated: no end line");

  std::map<RobotId, Position> robots;
  for (std::size_t i = 0; i < init.size(); ++i)
    if (!robots.emplace(init_ids[i], init[i]).second) throw std::invalid_argument("trace repeats an init id");
  trace.initial = Configuration(std::move(robots));
  if (trace.initial.size() != trace.n) throw std::invalid_argument("trace init count does not match meta n");
  return trace;
}

std::vector<Configuration> replay_configurations(const Trace& trace) {
  std::vector<Configuration> out{trace.initial};
  for (const auto& r : trace.rounds) {
    auto robots = out.back().robots();
    for (const auto& m : r.moves) {
      if (!robots.contains(m.id)) throw std::invalid_argument("trace moves unknown robot " + std::to_string(m.id));
      robots[m.id] = m.to;
    }
    out.emplace_back(std::move(robots));
  }
  return out;
}

ReplayReport replay(const Trace& trace) {
  ReplayReport report;
  auto problem = [&](std::uint64_t round, const std::string& what) {
    report.problems.push_back("round " + std::to_string(round) + ": " + what);
  };

  const auto dims = find_dimension(static_cast<Coord>(trace.initial.size()));
  const Snapshot s0(trace.initial.positions(), trace.initial.positions().front());
  if (dims.rc != trace.rc || dims.d != trace.d || find_y_max(s0) != trace.y_max || find_x_min(s0) != trace.x_min)
    problem(0, "meta line does not match the initial configuration");

  Configuration current = trace.initial;
  std::uint64_t moves = 0;
  std::uint64_t expected_round = 1;
  for (const auto& tr : trace.rounds) {
    if (tr.round != expected_round++) problem(tr.round, "rounds are not numbered consecutively");

    StepResult recomputed;
    try {
      recomputed = step(current, tr.activated, tr.round);
    } catch (const std::exception& e) {
      problem(tr.round, std::string("cannot re-execute: ") + e.what());
      break;
    }
    const RoundRecord& rec = recomputed.record;
    if (rec.activated != tr.activated) problem(tr.round, "activation set is not ascending and unique");

    std::map<RobotId, const TraceMove*> moved;
    for (const auto& m : tr.moves) moved.emplace(m.id, &m);
    std::map<RobotId, CaseLabel> waited;
    for (const auto& w : tr.waits) waited.emplace(w.id, w.label);
    if (moved.size() + waited.size() != tr.moves.size() + tr.waits.size() ||
        moved.size() + waited.size() != rec.activated.size())
      problem(tr.round, "expected exactly one move or wait line per activated robot");

    for (RobotId id : rec.activated) {
      const auto& decision = rec.decisions.at(id);
      auto applied = rec.applied.find(id);
      if (auto m = moved.find(id); m != moved.end()) {
        if (applied == rec.applied.end())
          problem(tr.round, "robot " + std::to_string(id) + " moved in the trace but stays on re-execution");
        else if (m->second->from != current.at(id) || m->second->to != applied->second || m->second->label != decision.label)
          problem(tr.round, "move line of robot " + std::to_string(id) + " differs from re-execution");
      } else if (auto w = waited.find(id); w != waited.end()) {
        if (applied != rec.applied.end())
          problem(tr.round, "robot " + std::to_string(id) + " waits in the trace but moves on re-execution");
        else if (w->second != decision.label)
          problem(tr.round, "wait label of robot " + std::to_string(id) + " differs from re-execution");
      } else {
        problem(tr.round, "no line for activated robot " + std::to_string(id));
      }
    }

    const auto violations = check_round(current, rec);
    std::vector<std::string> lines;
    for (const auto& v : violations) lines.push_back(format_violation(v));
    if (lines != tr.violations) problem(tr.round, "violation lines differ from re-checked verdicts");
    report.violations.insert(report.violations.end(), violations.begin(), violations.end());

    // Rebuild from the trace's own move lines, not from re-execution.
    auto robots = current.robots();
    for (const auto& m : tr.moves) {
      if (!robots.contains(m.id)) {
        problem(tr.round, "move of unknown robot " + std::to_string(m.id));
        continue;
      }
      robots[m.id] = m.to;
    }
    moves += tr.moves.size();
    try {
      current = Configuration(std::move(robots));
    } catch (const std::exception& e) {
      problem(tr.round, e.what());
      break;
    }
  }

  const auto executed = static_cast<std::uint64_t>(trace.rounds.size());
  if (moves != trace.end_moves) problem(executed, "end line move count differs from move lines");
  switch (trace.status) {
    case RunStatus::kConverged:
      if (!is_final(current) || trace.rounds.empty() || !trace.rounds.back().moves.empty() ||
          trace.end_rounds + 1 != executed)
        problem(executed, "converged status is not supported by the replayed rounds");
      break;
    case RunStatus::kMaxRoundsExceeded:
    case RunStatus::kViolationHalt:
      if (trace.end_rounds != executed) problem(executed, "end line round count differs from round lines");
      break;
  }
  report.final = current;
  return report;
}

}  // namespace gridscatter
