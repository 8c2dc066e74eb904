#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infodyn/matrix.hpp"

namespace infodyn::io {

enum class TableFormat { csv, octave };

TableFormat parse_format(std::string_view name);

/// Named columns of finite reals; symbol columns hold integral values.
/// Invariants: names.size() == values.cols(), names are unique.
struct DataTable {
  std::vector<std::string> names;
  RealMatrix values;

  /// Index of the column called `name`, or of a 0-based index written in decimal.
  std::size_t column_index(std::string_view name_or_index) const;
  /// Columns selected by a comma-separated list of names or indices.
  RealMatrix select(std::string_view colspec) const;
};

/// CSV: comma separated, '.' decimal point, optional header row (detected
/// when any first-row cell is not a number), double-quoted fields allowed.
/// Without a header the columns are named "0", "1", ...
/// Octave text: blocks of "# name:", "# type: matrix", "# rows:", "# columns:"
/// each followed by its rows. A block with one column keeps its name;
/// wider blocks give "name.0", "name.1", ...
DataTable read_table(std::istream& in, TableFormat format);
DataTable read_table(const std::filesystem::path& path, TableFormat format);

/// Reals are written as the shortest decimal that reads back to the same double.
void write_table(std::ostream& out, const DataTable& table, TableFormat format);
void write_table(const std::filesystem::path& path, const DataTable& table, TableFormat format);

/// Shortest round-trip decimal rendering of a double.
std::string format_real(double value);

}  // namespace infodyn::io
