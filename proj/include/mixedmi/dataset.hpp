#ifndef MIXEDMI_DATASET_HPP
#define MIXEDMI_DATASET_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mixedmi {

/// Metric semantics of a column. Continuous and DiscreteNumeric both use
/// absolute difference per coordinate; Categorical uses the 0/1 metric.
enum class ColumnKind { Continuous, DiscreteNumeric, Categorical };

inline bool is_numeric(ColumnKind k) { return k != ColumnKind::Categorical; }

inline const char* to_string(ColumnKind k) {
  switch (k) {
    case ColumnKind::Continuous: return "cont";
    case ColumnKind::DiscreteNumeric: return "disc";
    case ColumnKind::Categorical: return "cat";
  }
  return "?";
}

inline ColumnKind column_kind_from_string(const std::string& s) {
  if (s == "cont" || s == "continuous") return ColumnKind::Continuous;
  if (s == "disc" || s == "discrete") return ColumnKind::DiscreteNumeric;
  if (s == "cat" || s == "categorical") return ColumnKind::Categorical;
  throw std::invalid_argument("unknown column kind: '" + s + "'");
}

/// One cell: either a finite real or a categorical token.
struct MixedValue {
  bool is_symbol = false;
  double num = 0.0;
  std::string sym;

  static MixedValue number(double v) { return MixedValue{false, v, {}}; }
  static MixedValue symbol(std::string s) {
    return MixedValue{true, 0.0, std::move(s)};
  }

  friend bool operator==(const MixedValue& a, const MixedValue& b) {
    if (a.is_symbol != b.is_symbol) return false;
    return a.is_symbol ? a.sym == b.sym : a.num == b.num;
  }
};

/// Raised for malformed input data (ragged rows, NaN cells, bad kinds, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable column-typed table. Columns share storage across projections,
/// so projecting is cheap and a Dataset is safe to read concurrently.
class Dataset {
 public:
  struct ColumnData {
    std::vector<double> numeric;        // numeric kinds
    std::vector<std::int32_t> codes;    // categorical, index into alphabet
    std::vector<std::string> alphabet;  // in order of first appearance
  };

  struct Column {
    std::string name;
    ColumnKind kind;
    std::shared_ptr<const ColumnData> data;
  };

  Dataset(std::vector<Column> columns, std::size_t n_rows)
      : columns_(std::move(columns)), n_rows_(n_rows) {
    if (n_rows_ == 0 || columns_.empty()) {
      throw ValidationError("Dataset requires n >= 1 and d >= 1");
    }
  }

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return columns_.size(); }
  const Column& column(std::size_t j) const { return columns_.at(j); }
  const std::vector<Column>& columns() const { return columns_; }

  MixedValue cell(std::size_t i, std::size_t j) const {
    const Column& c = columns_.at(j);
    if (i >= n_rows_) throw std::out_of_range("Dataset::cell: row index");
    if (c.kind == ColumnKind::Categorical) {
      return MixedValue::symbol(c.data->alphabet[c.data->codes[i]]);
    }
    return MixedValue::number(c.data->numeric[i]);
  }

  /// Numeric value of a numeric cell (no bounds check on i).
  double numeric_at(std::size_t i, std::size_t j) const {
    return columns_[j].data->numeric[i];
  }
  /// Alphabet code of a categorical cell (no bounds check on i).
  std::int32_t code_at(std::size_t i, std::size_t j) const {
    return columns_[j].data->codes[i];
  }

 private:
  std::vector<Column> columns_;
  std::size_t n_rows_;
};

/// Builds a validated Dataset from raw cells, row-major.
inline Dataset build_dataset(
    const std::vector<std::pair<std::string, ColumnKind>>& columns,
    const std::vector<std::vector<MixedValue>>& rows) {
  if (columns.empty()) throw ValidationError("build_dataset: no columns");
  if (rows.empty()) throw ValidationError("build_dataset: no rows");
  const std::size_t d = columns.size();
  const std::size_t n = rows.size();

  std::vector<Dataset::ColumnData> data(d);
  std::vector<std::unordered_map<std::string, std::int32_t>> lookup(d);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != d) {
      throw ValidationError("build_dataset: ragged row " + std::to_string(i) +
                            " has " + std::to_string(rows[i].size()) +
                            " cells, expected " + std::to_string(d));
    }
    for (std::size_t j = 0; j < d; ++j) {
      const MixedValue& v = rows[i][j];
      const bool want_symbol = columns[j].second == ColumnKind::Categorical;
      if (v.is_symbol != want_symbol) {
        throw ValidationError("build_dataset: kind mismatch at row " +
                              std::to_string(i) + ", column " +
                              std::to_string(j) + " ('" + columns[j].first +
                              "')");
      }
      if (want_symbol) {
        auto [it, inserted] = lookup[j].try_emplace(
            v.sym, static_cast<std::int32_t>(data[j].alphabet.size()));
        if (inserted) data[j].alphabet.push_back(v.sym);
        data[j].codes.push_back(it->second);
      } else {
        if (!std::isfinite(v.num)) {
          throw ValidationError("build_dataset: non-finite numeric at row " +
                                std::to_string(i) + ", column " +
                                std::to_string(j) + " ('" + columns[j].first +
                                "')");
        }
        data[j].numeric.push_back(v.num);
      }
    }
  }

  std::vector<Dataset::Column> cols;
  cols.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    cols.push_back({columns[j].first, columns[j].second,
                    std::make_shared<const Dataset::ColumnData>(
                        std::move(data[j]))});
  }
  return Dataset(std::move(cols), n);
}

/// Column-typed construction straight from numeric/code vectors; used by the
/// simulators, which know their alphabets up front.
inline Dataset make_numeric_dataset(
    const std::vector<std::pair<std::string, ColumnKind>>& columns,
    const std::vector<std::vector<double>>& column_values) {
  if (columns.size() != column_values.size() || columns.empty()) {
    throw ValidationError("make_numeric_dataset: column mismatch");
  }
  const std::size_t n = column_values.front().size();
  std::vector<Dataset::Column> cols;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (!is_numeric(columns[j].second)) {
      throw ValidationError("make_numeric_dataset: numeric kinds only");
    }
    if (column_values[j].size() != n) {
      throw ValidationError("make_numeric_dataset: ragged columns");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(column_values[j][i])) {
        throw ValidationError("make_numeric_dataset: non-finite value at row " +
                              std::to_string(i) + ", column " +
                              std::to_string(j));
      }
    }
    auto data = std::make_shared<Dataset::ColumnData>();
    data->numeric = column_values[j];
    cols.push_back({columns[j].first, columns[j].second, std::move(data)});
  }
  return Dataset(std::move(cols), n);
}

/// View over a column subset; row order preserved, storage shared.
inline Dataset project(const Dataset& ds, const std::vector<std::size_t>& cols) {
  if (cols.empty()) throw std::invalid_argument("project: empty column set");
  std::vector<Dataset::Column> selected;
  selected.reserve(cols.size());
  for (std::size_t j : cols) {
    if (j >= ds.n_cols()) {
      throw std::out_of_range("project: column index " + std::to_string(j));
    }
    selected.push_back(ds.column(j));
  }
  return Dataset(std::move(selected), ds.n_rows());
}

/// Assignment of column indices to the X, Y, Z groups. Empty z means MI.
struct RoleAssignment {
  std::vector<std::size_t> x_cols;
  std::vector<std::size_t> y_cols;
  std::vector<std::size_t> z_cols;
};

inline void validate_roles(const Dataset& ds, const RoleAssignment& roles) {
  if (roles.x_cols.empty() || roles.y_cols.empty()) {
    throw ValidationError("roles: x and y column sets must be nonempty");
  }
  std::vector<int> seen(ds.n_cols(), 0);
  auto mark = [&](const std::vector<std::size_t>& group, const char* name) {
    for (std::size_t j : group) {
      if (j >= ds.n_cols()) {
        throw ValidationError(std::string("roles: ") + name +
                              " column index out of range: " +
                              std::to_string(j));
      }
      if (seen[j]++) {
        throw ValidationError("roles: column " + std::to_string(j) +
                              " assigned to more than one group");
      }
    }
  };
  mark(roles.x_cols, "x");
  mark(roles.y_cols, "y");
  mark(roles.z_cols, "z");
}

}  // namespace mixedmi

#endif  // MIXEDMI_DATASET_HPP
