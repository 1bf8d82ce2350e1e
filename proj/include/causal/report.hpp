#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace causal::report {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

using Cell = std::optional<double>;

/// Rows of numbers under named columns; empty cells stay empty in CSV and
/// become null in JSON.
struct Table {
  std::string title;
  std::vector<std::string> notes;  // one '#' line each
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::string config_hash;
  /// Column the rows must be ordered by; empty for none.
  std::string axis;

  /// Throws InputError on ragged rows or rows out of axis order.
  void validate() const;
  int column(const std::string& name) const;
};

/// A scan over one parameter: (params..., value, closed_form, rel_deviation).
/// Complex observables get _re and _im columns.
struct ScanRow {
  std::vector<double> params;
  std::complex<double> value;
  std::optional<std::complex<double>> closed_form;
  std::optional<double> rel_deviation;
};

struct ScanReport {
  std::string axis;
  std::vector<std::string> param_names;
  std::vector<ScanRow> rows;
  bool complex_values = false;

  /// Enforces axis ordering and closed_form <=> rel_deviation.
  void validate() const;
  Table to_table(const std::string& title, std::vector<std::string> notes,
                 const std::string& config_hash) const;
};

/// `timestamp` adds a "# generated" line.
std::string to_csv(const Table& t, bool timestamp);
nlohmann::json to_json(const Table& t);

/// Plain-text plot recipe: data file, x column and the y columns with labels.
std::string plot_script(const Table& t, const std::string& data_file, const std::string& x,
                        const std::vector<std::string>& ys);

}  // namespace causal::report
