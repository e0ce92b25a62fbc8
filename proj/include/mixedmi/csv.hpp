#ifndef MIXEDMI_CSV_HPP
#define MIXEDMI_CSV_HPP

#include <charconv>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mixedmi/dataset.hpp"

namespace mixedmi {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch != '\r') {
      field.push_back(ch);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& s, std::size_t row,
                           std::size_t col) {
  const std::string t = trim(s);
  double value{};
  const char* begin = t.data();
  const char* end = begin + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ValidationError("csv: cell at row " + std::to_string(row) +
                          ", column " + std::to_string(col) +
                          " is not a number: '" + s + "'");
  }
  return value;
}

}  // namespace detail

/// Parses a comma-separated kind list like "cont,disc,cat".
inline std::vector<ColumnKind> parse_kind_list(const std::string& spec) {
  std::vector<ColumnKind> kinds;
  for (const std::string& tok : detail::split_csv_line(spec)) {
    kinds.push_back(column_kind_from_string(detail::trim(tok)));
  }
  return kinds;
}

/// Reads the CSV contract: optional "# types: ..." comment, then a header
/// row, then data rows. An explicit kinds argument overrides the comment.
inline Dataset read_csv(std::istream& in,
                        std::optional<std::vector<ColumnKind>> kinds = {}) {
  std::string line;
  std::optional<std::vector<ColumnKind>> file_kinds;
  // Leading comment lines; "# types:" declares the schema.
  while (in.peek() == '#') {
    std::getline(in, line);
    const std::string t = detail::trim(line.substr(1));
    if (t.rfind("types:", 0) == 0) {
      file_kinds = parse_kind_list(t.substr(6));
    }
  }
  if (!std::getline(in, line)) throw ValidationError("csv: missing header row");
  const std::vector<std::string> header = detail::split_csv_line(line);

  const std::vector<ColumnKind> resolved = [&] {
    if (kinds) return *kinds;
    if (file_kinds) return *file_kinds;
    throw ValidationError(
        "csv: no column kinds declared (need a '# types:' line, a sidecar "
        "schema, or --types)");
  }();
  if (resolved.size() != header.size()) {
    throw ValidationError("csv: " + std::to_string(resolved.size()) +
                          " kinds declared for " +
                          std::to_string(header.size()) + " columns");
  }

  std::vector<std::pair<std::string, ColumnKind>> columns;
  for (std::size_t j = 0; j < header.size(); ++j) {
    columns.emplace_back(detail::trim(header[j]), resolved[j]);
  }

  std::vector<std::vector<MixedValue>> rows;
  std::size_t row_index = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = detail::split_csv_line(line);
    if (fields.size() != header.size()) {
      throw ValidationError("csv: row " + std::to_string(row_index) + " has " +
                            std::to_string(fields.size()) +
                            " cells, expected " +
                            std::to_string(header.size()));
    }
    std::vector<MixedValue> row;
    row.reserve(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (resolved[j] == ColumnKind::Categorical) {
        row.push_back(MixedValue::symbol(detail::trim(fields[j])));
      } else {
        row.push_back(MixedValue::number(
            detail::parse_number(fields[j], row_index, j)));
      }
    }
    rows.push_back(std::move(row));
    ++row_index;
  }
  return build_dataset(columns, rows);
}

/// Shortest round-tripping decimal representation of a double.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

/// Writes the CSV contract with a "# types:" schema comment.
inline void write_csv(const Dataset& ds, std::ostream& out) {
  out << "# types: ";
  for (std::size_t j = 0; j < ds.n_cols(); ++j) {
    out << (j ? "," : "") << to_string(ds.column(j).kind);
  }
  out << "\n";
  for (std::size_t j = 0; j < ds.n_cols(); ++j) {
    out << (j ? "," : "") << ds.column(j).name;
  }
  out << "\n";
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    for (std::size_t j = 0; j < ds.n_cols(); ++j) {
      if (j) out << ",";
      const MixedValue v = ds.cell(i, j);
      if (v.is_symbol) {
        out << v.sym;
      } else {
        out << format_double(v.num);
      }
    }
    out << "\n";
  }
}

}  // namespace mixedmi

#endif  // MIXEDMI_CSV_HPP
