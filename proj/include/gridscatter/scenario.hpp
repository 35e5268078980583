#pragma once

// Initial configurations: seeded generation and the text file format.
//
// File format: one robot per line as "x y" (two signed decimal integers
// separated by one space). Lines starting with '#' are comments. Ids are
// assigned 1..n in line order.

#include <cstdint>
#include <filesystem>
#include <string_view>

#include "gridscatter/grid.hpp"

namespace gridscatter {

/// `n` distinct nodes drawn uniformly without replacement from
/// [-box, box]^2; ids follow draw order.
Configuration generate_initial(std::size_t n, Coord box, std::uint64_t seed);

Configuration parse_initial_text(std::string_view text);
Configuration parse_initial(const std::filesystem::path& path);

}  // namespace gridscatter
