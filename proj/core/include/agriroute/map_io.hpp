#pragma once
// Text map format:
//   W H CELL_SIDE ORIGIN_X ORIGIN_Y
//   H rows of W characters from {P,F,U,S,O}; the first row is v = H-1 (top view).
// Numbers are written in shortest round-trip form, so save(load(text)) == text
// for any file produced by save().

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "agriroute/occupancy.hpp"

namespace agriroute
{

class MapParseError : public std::runtime_error
{
public:
  MapParseError(const std::string& what, int line, int column);

  int line() const { return line_; }      ///< 1-based text line, 0 if not applicable
  int column() const { return column_; }  ///< 1-based column, 0 if not applicable

private:
  int line_;
  int column_;
};

GridMap parse_map(const std::string& text);
std::string format_map(const GridMap& map);

GridMap load_map(const std::string& path);
void save_map(const GridMap& map, const std::string& path);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace agriroute
