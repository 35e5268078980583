#include "gridscatter/render.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gridscatter {

std::string render_ascii(const Configuration& c, std::optional<Viewport> viewport) {
  const auto positions = c.positions();
  if (!viewport) {
    if (positions.empty()) return {};
    Viewport v{positions.front().x, positions.front().x, positions.front().y, positions.front().y};
    for (const auto& p : positions) {
      v.x_lo = std::min(v.x_lo, p.x);
      v.x_hi = std::max(v.x_hi, p.x);
      v.y_lo = std::min(v.y_lo, p.y);
      v.y_hi = std::max(v.y_hi, p.y);
    }
    viewport = v;
  }
  const Viewport& v = *viewport;
  if (v.x_lo > v.x_hi || v.y_lo > v.y_hi) throw std::invalid_argument("empty viewport");

  const std::set<Position> robots(positions.begin(), positions.end());
  const auto width = std::max(std::to_string(v.y_lo).size(), std::to_string(v.y_hi).size());
  std::ostringstream out;
  for (Coord y = v.y_hi; y >= v.y_lo; --y) {
    out << std::setw(static_cast<int>(width)) << y << ' ';
    for (Coord x = v.x_lo; x <= v.x_hi; ++x) {
      if (x != v.x_lo) out << ' ';
      out << (robots.contains({x, y}) ? 'R' : '.');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace gridscatter
