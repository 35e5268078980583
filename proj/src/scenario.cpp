#include "gridscatter/scenario.hpp"

#include <charconv>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace gridscatter {

namespace {

std::invalid_argument line_error(std::size_t line_no, const std::string& what) {
  return std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
}

Coord parse_coord(std::string_view field, std::size_t line_no) {
  Coord v{};
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || end != field.data() + field.size())
    throw line_error(line_no, "malformed coordinate '" + std::string(field) + "'");
  return v;
}

}  // namespace

Configuration generate_initial(std::size_t n, Coord box, std::uint64_t seed) {
  if (box < 0) throw std::invalid_argument("box half-width must be non-negative");
  const auto side = static_cast<std::uint64_t>(2 * box + 1);
  const std::uint64_t nodes = side * side;
  if (n == 0 || n > nodes)
    throw std::invalid_argument("cannot place " + std::to_string(n) + " distinct robots in a box of " +
                                std::to_string(nodes) + " nodes");

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(box)};
  std::mt19937_64 rng(seq);

  // Partial Fisher-Yates over the node indices, with only touched slots stored.
  std::unordered_map<std::uint64_t, std::uint64_t> swapped;
  auto slot = [&](std::uint64_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<Position> drawn;
  drawn.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::uint64_t> pick(i, nodes - 1);
    const std::uint64_t j = pick(rng);
    const std::uint64_t chosen = slot(j);
    swapped[j] = slot(i);
    drawn.push_back({static_cast<Coord>(chosen % side) - box, static_cast<Coord>(chosen / side) - box});
  }
  return Configuration::from_positions(drawn);
}

Configuration parse_initial_text(std::string_view text) {
  std::vector<Position> robots;
  std::set<Position> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    auto space = line.find(' ');
    if (space == std::string_view::npos) throw line_error(line_no, "expected 'x y'");
    Position p{parse_coord(line.substr(0, space), line_no), parse_coord(line.substr(space + 1), line_no)};
    if (!seen.insert(p).second) {
      std::ostringstream msg;
      msg << "duplicate position " << p;
      throw line_error(line_no, msg.str());
    }
    robots.push_back(p);
  }
  if (robots.empty()) throw std::invalid_argument("initial configuration contains no robots");
  return Configuration::from_positions(robots);
}

Configuration parse_initial(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_initial_text(buf.str());
}

}  // namespace gridscatter
