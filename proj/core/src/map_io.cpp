#include "agriroute/map_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace agriroute
{

MapParseError::MapParseError(const std::string& what, int line, int column)
  : std::runtime_error(what), line_(line), column_(column)
{
}

std::string format_double(double value)
{
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) {
    throw std::runtime_error("cannot format number");
  }
  return std::string(buf.data(), end);
}

namespace
{
std::vector<std::string> split_lines(const std::string& text)
{
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') {
        cur.pop_back();
      }
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) {
    lines.push_back(cur);
  }
  return lines;
}

template <typename T>
T parse_number(const std::string& token, const char* name)
{
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw MapParseError(std::string("header: invalid ") + name + " '" + token + "'", 1, 0);
  }
  return value;
}
}  // namespace

GridMap parse_map(const std::string& text)
{
  const auto lines = split_lines(text);
  if (lines.empty()) {
    throw MapParseError("empty map file", 1, 0);
  }
  std::istringstream header(lines[0]);
  std::vector<std::string> tokens;
  for (std::string t; header >> t;) {
    tokens.push_back(t);
  }
  if (tokens.size() != 5) {
    throw MapParseError("header must be 'W H CELL_SIDE ORIGIN_X ORIGIN_Y'", 1, 0);
  }
  const int w = parse_number<int>(tokens[0], "width");
  const int h = parse_number<int>(tokens[1], "height");
  const double cell = parse_number<double>(tokens[2], "cell side");
  const double ox = parse_number<double>(tokens[3], "origin x");
  const double oy = parse_number<double>(tokens[4], "origin y");
  if (w <= 0 || h <= 0 || !(cell > 0.0)) {
    throw MapParseError("header: dimensions and cell side must be positive", 1, 0);
  }
  if (lines.size() != static_cast<std::size_t>(h) + 1) {
    throw MapParseError("expected " + std::to_string(h) + " rows, found " +
                          std::to_string(lines.size() - 1),
                        static_cast<int>(lines.size()), 0);
  }
  GridMap map(w, h, cell, {ox, oy});
  for (int row = 0; row < h; ++row) {
    const std::string& line = lines[static_cast<std::size_t>(row) + 1];
    const int line_no = row + 2;
    if (line.size() != static_cast<std::size_t>(w)) {
      throw MapParseError("row " + std::to_string(row + 1) + " has " + std::to_string(line.size()) +
                            " cells, expected " + std::to_string(w),
                          line_no, 0);
    }
    const int v = h - 1 - row;
    for (int u = 0; u < w; ++u) {
      const auto s = cell_state_from_char(line[static_cast<std::size_t>(u)]);
      if (!s) {
        throw MapParseError("invalid cell character '" + std::string(1, line[static_cast<std::size_t>(u)]) +
                              "' at row " + std::to_string(row + 1) + ", column " +
                              std::to_string(u + 1),
                            line_no, u + 1);
      }
      map.set({u, v}, *s);
    }
  }
  return map;
}

std::string format_map(const GridMap& map)
{
  std::string out = std::to_string(map.width()) + " " + std::to_string(map.height()) + " " +
                    format_double(map.cell_side()) + " " + format_double(map.origin().x) + " " +
                    format_double(map.origin().y) + "\n";
  out.reserve(out.size() + static_cast<std::size_t>(map.height()) * (map.width() + 1));
  for (int v = map.height() - 1; v >= 0; --v) {
    for (int u = 0; u < map.width(); ++u) {
      out.push_back(to_char(map.at({u, v})));
    }
    out.push_back('\n');
  }
  return out;
}

GridMap load_map(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open map file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_map(ss.str());
}

void save_map(const GridMap& map, const std::string& path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write map file '" + path + "'");
  }
  out << format_map(map);
}

}  // namespace agriroute
