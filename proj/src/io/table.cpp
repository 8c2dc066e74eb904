#include "infodyn/io/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "infodyn/errors.hpp"

namespace infodyn::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

double parse_cell(std::string_view s, std::size_t line) {
  double v = 0.0;
  if (!parse_number(s, v))
    throw DataError("line " + std::to_string(line) + ": '" + std::string(trim(s)) + "' is not a number");
  if (!std::isfinite(v)) throw DataError("line " + std::to_string(line) + ": non-finite value '" +
                                         std::string(trim(s)) + "'");
  return v;
}

/// Splits one CSV record; a quoted field may contain commas and doubled quotes.
std::vector<std::string> split_csv(std::string_view line, std::size_t line_no) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false, was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = was_quoted = true;
    } else if (c == ',') {
      cells.push_back(was_quoted ? cur : std::string(trim(cur)));
      cur.clear();
      was_quoted = false;
    } else {
      cur += c;
    }
  }
  if (quoted) throw DataError("line " + std::to_string(line_no) + ": unterminated quoted field");
  cells.push_back(was_quoted ? cur : std::string(trim(cur)));
  return cells;
}

void check_names(const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) throw DataError("duplicate column name '" + n + "'");
}

DataTable read_csv(std::istream& in) {
  DataTable t;
  std::string line;
  std::size_t line_no = 0, width = 0;
  bool first = true;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line, line_no);
    if (first) {
      first = false;
      width = cells.size();
      bool header = false;
      double v = 0.0;
      for (const auto& c : cells) header = header || !parse_number(c, v);
      if (header) {
        t.names = cells;
        continue;
      }
      for (std::size_t j = 0; j < width; ++j) t.names.push_back(std::to_string(j));
    }
    if (cells.size() != width)
      throw DataError("line " + std::to_string(line_no) + ": ragged row with " + std::to_string(cells.size()) +
                      " cells, expected " + std::to_string(width));
    row.clear();
    for (const auto& c : cells) row.push_back(parse_cell(c, line_no));
    if (t.values.rows() == 0) t.values = RealMatrix(0, width);
    t.values.append_row(row);
  }
  if (first) throw DataError("empty CSV input");
  if (t.values.rows() == 0) t.values = RealMatrix(0, width);
  check_names(t.names);
  return t;
}

DataTable read_octave(std::istream& in) {
  DataTable t;
  std::string line;
  std::size_t line_no = 0;
  std::string name, type;
  long rows = -1, cols = -1;
  auto header_value = [](std::string_view l, std::string_view key, std::string& out) {
    l = trim(l.substr(1));
    if (l.substr(0, key.size()) != key || l.size() <= key.size() || l[key.size()] != ':') return false;
    out = std::string(trim(l.substr(key.size() + 1)));
    return true;
  };
  auto as_count = [&](const std::string& v, std::string_view key) {
    double d = 0.0;
    if (!parse_number(v, d) || d < 0 || d != std::floor(d))
      throw DataError("line " + std::to_string(line_no) + ": bad " + std::string(key) + " '" + v + "'");
    return static_cast<long>(d);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto l = trim(line);
    if (l.empty()) continue;
    if (l.front() == '#') {
      std::string v;
      if (header_value(l, "name", v)) {
        name = v;
        type.clear();
        rows = cols = -1;
      } else if (header_value(l, "type", v)) {
        if (v != "matrix") throw DataError("line " + std::to_string(line_no) + ": unknown type tag '" + v + "'");
        type = v;
      } else if (header_value(l, "rows", v)) {
        rows = as_count(v, "rows");
      } else if (header_value(l, "columns", v)) {
        cols = as_count(v, "columns");
      }
      if (name.empty() || type.empty() || rows < 0 || cols < 0) continue;
      // header complete: read the body
      RealMatrix block(0, static_cast<std::size_t>(cols));
      std::vector<double> row;
      while (block.rows() < static_cast<std::size_t>(rows) && std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::istringstream cells{std::string(trim(line))};
        std::string cell;
        row.clear();
        while (cells >> cell) row.push_back(parse_cell(cell, line_no));
        if (row.size() != static_cast<std::size_t>(cols))
          throw DataError("line " + std::to_string(line_no) + ": ragged row with " + std::to_string(row.size()) +
                          " cells, expected " + std::to_string(cols));
        if (block.rows() == 0) block = RealMatrix(0, row.size());
        block.append_row(row);
      }
      if (block.rows() != static_cast<std::size_t>(rows))
        throw DataError("matrix '" + name + "' ends after " + std::to_string(block.rows()) + " of " +
                        std::to_string(rows) + " rows");
      if (!t.names.empty() && block.rows() != t.values.rows())
        throw DataError("matrix '" + name + "' has " + std::to_string(block.rows()) + " rows, expected " +
                        std::to_string(t.values.rows()));
      const bool first_block = t.names.empty();
      if (cols == 1) {
        t.names.push_back(name);
      } else {
        for (long j = 0; j < cols; ++j) t.names.push_back(name + "." + std::to_string(j));
      }
      t.values = first_block ? block : hstack(t.values, block);
      name.clear();
      type.clear();
      rows = cols = -1;
      continue;
    }
    throw DataError("line " + std::to_string(line_no) + ": data outside a matrix block");
  }
  if (t.names.empty()) throw DataError("no matrix blocks in Octave text input");
  check_names(t.names);
  return t;
}

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

TableFormat parse_format(std::string_view name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "octave") return TableFormat::octave;
  throw UsageError("unknown table format '" + std::string(name) + "' (expected csv or octave)");
}

std::size_t DataTable::column_index(std::string_view key) const {
  for (std::size_t j = 0; j < names.size(); ++j)
    if (names[j] == key) return j;
  std::size_t idx = 0;
  const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), idx);
  if (ec == std::errc{} && ptr == key.data() + key.size() && idx < names.size()) return idx;
  throw UsageError("no column '" + std::string(key) + "'");
}

RealMatrix DataTable::select(std::string_view colspec) const {
  std::vector<std::size_t> cols;
  std::size_t start = 0;
  while (start <= colspec.size()) {
    const auto end = std::min(colspec.find(',', start), colspec.size());
    const auto key = trim(colspec.substr(start, end - start));
    if (key.empty()) throw UsageError("empty column name in '" + std::string(colspec) + "'");
    cols.push_back(column_index(key));
    start = end + 1;
  }
  return values.select_columns(cols);
}

DataTable read_table(std::istream& in, TableFormat format) {
  return format == TableFormat::csv ? read_csv(in) : read_octave(in);
}

DataTable read_table(const std::filesystem::path& path, TableFormat format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_table(in, format);
}

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_table(std::ostream& out, const DataTable& table, TableFormat format) {
  if (table.names.size() != table.values.cols()) throw UsageError("table has mismatched names and columns");
  if (format == TableFormat::csv) {
    for (std::size_t j = 0; j < table.names.size(); ++j) out << (j ? "," : "") << quote_csv(table.names[j]);
    out << '\n';
    for (std::size_t r = 0; r < table.values.rows(); ++r) {
      for (std::size_t j = 0; j < table.values.cols(); ++j) out << (j ? "," : "") << format_real(table.values(r, j));
      out << '\n';
    }
    return;
  }
  for (std::size_t j = 0; j < table.names.size(); ++j) {
    out << "# name: " << table.names[j] << "\n# type: matrix\n# rows: " << table.values.rows()
        << "\n# columns: 1\n";
    for (std::size_t r = 0; r < table.values.rows(); ++r) out << ' ' << format_real(table.values(r, j)) << '\n';
    out << "\n\n";
  }
}

void write_table(const std::filesystem::path& path, const DataTable& table, TableFormat format) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_table(out, table, format);
}

}  // namespace infodyn::io
