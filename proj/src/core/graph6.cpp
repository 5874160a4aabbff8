#include "zol/core/graph6.hpp"

#include <cstdint>

#include "zol/core/error.hpp"

namespace zol::graph6 {
namespace {

constexpr int kOffset = 63;

void encode_size(std::uint64_t n, std::string& out) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kOffset));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(((n >> shift) & 0x3f) + kOffset));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(((n >> shift) & 0x3f) + kOffset));
  }
}

int sextet(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) throw InvalidArgument("graph6: truncated input");
  int v = static_cast<unsigned char>(s[pos]) - kOffset;
  if (v < 0 || v > 63) throw InvalidArgument("graph6: byte out of range at " + std::to_string(pos));
  return v;
}

}  // namespace

std::string encode(const Graph& g) {
  std::string out;
  const auto n = static_cast<std::uint64_t>(g.size());
  encode_size(n, out);
  int acc = 0, filled = 0;
  for (int j = 1; j < g.size(); ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + kOffset));
        acc = filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + kOffset));
  return out;
}

Graph decode(std::string_view line) {
  constexpr std::string_view header = ">>graph6<<";
  if (line.substr(0, header.size()) == header) line.remove_prefix(header.size());
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r' || line.back() == ' '))
    line.remove_suffix(1);
  if (line.empty()) throw InvalidArgument("graph6: empty input");

  std::size_t pos = 0;
  std::uint64_t n = 0;
  if (static_cast<unsigned char>(line[0]) != 126) {
    n = static_cast<std::uint64_t>(sextet(line, 0));
    pos = 1;
  } else if (line.size() > 1 && static_cast<unsigned char>(line[1]) != 126) {
    for (std::size_t k = 1; k <= 3; ++k) n = (n << 6) | static_cast<std::uint64_t>(sextet(line, k));
    pos = 4;
  } else {
    for (std::size_t k = 2; k <= 7; ++k) n = (n << 6) | static_cast<std::uint64_t>(sextet(line, k));
    pos = 8;
  }
  if (n > (1u << 20)) throw InvalidArgument("graph6: graph too large");

  Graph g(static_cast<int>(n));
  const std::uint64_t bits = n * (n > 0 ? n - 1 : 0) / 2;
  const std::size_t need = pos + static_cast<std::size_t>((bits + 5) / 6);
  if (line.size() != need) throw InvalidArgument("graph6: expected " + std::to_string(need) + " bytes");
  std::uint64_t k = 0;
  for (int j = 1; j < static_cast<int>(n); ++j)
    for (int i = 0; i < j; ++i, ++k) {
      int byte = sextet(line, pos + static_cast<std::size_t>(k / 6));
      if ((byte >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  return g;
}

std::vector<Graph> read_all(std::istream& in) {
  std::vector<Graph> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    out.push_back(decode(line));
  }
  return out;
}

}  // namespace zol::graph6
