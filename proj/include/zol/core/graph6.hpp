#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "zol/core/graph.hpp"

namespace zol::graph6 {

/// Header-less graph6 encoding (upper triangle, column-major, 6 bits per
/// printable byte offset by 63).
std::string encode(const Graph& g);

/// Accepts an optional ">>graph6<<" header and trailing whitespace.
Graph decode(std::string_view line);

/// Reads one graph per non-empty line.
std::vector<Graph> read_all(std::istream& in);

}  // namespace zol::graph6
