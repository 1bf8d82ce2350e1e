#include "causal/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "causal/errors.hpp"

namespace causal::report {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

void Table::validate() const {
  for (const auto& r : rows) {
    if (r.size() != columns.size()) throw InputError("table row width does not match the header");
  }
  if (axis.empty()) return;
  const int c = column(axis);
  if (c < 0) throw InputError("axis column missing: " + axis);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][c].value_or(0.0) < rows[i - 1][c].value_or(0.0)) {
      throw InputError("rows not ordered by " + axis);
    }
  }
}

void ScanReport::validate() const {
  const auto it = std::find(param_names.begin(), param_names.end(), axis);
  if (it == param_names.end()) throw InputError("scan axis is not a parameter: " + axis);
  const auto ax = static_cast<std::size_t>(it - param_names.begin());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.params.size() != param_names.size()) throw InputError("scan row has wrong parameter count");
    if (r.closed_form.has_value() != r.rel_deviation.has_value()) {
      throw InputError("rel_deviation must be present exactly when closed_form is");
    }
    if (i > 0 && r.params[ax] < rows[i - 1].params[ax]) throw InputError("scan rows out of order");
  }
}

Table ScanReport::to_table(const std::string& title, std::vector<std::string> notes,
                           const std::string& config_hash) const {
  validate();
  Table t;
  t.title = title;
  t.notes = std::move(notes);
  t.config_hash = config_hash;
  t.axis = axis;
  t.columns = param_names;
  if (complex_values) {
    for (const char* c : {"numeric_re", "numeric_im", "closed_form_re", "closed_form_im"}) {
      t.columns.emplace_back(c);
    }
  } else {
    t.columns.emplace_back("numeric");
    t.columns.emplace_back("closed_form");
  }
  t.columns.emplace_back("rel_deviation");
  for (const auto& r : rows) {
    std::vector<Cell> row(r.params.begin(), r.params.end());
    row.emplace_back(r.value.real());
    if (complex_values) row.emplace_back(r.value.imag());
    if (r.closed_form) {
      row.emplace_back(r.closed_form->real());
      if (complex_values) row.emplace_back(r.closed_form->imag());
    } else {
      row.emplace_back();
      if (complex_values) row.emplace_back();
    }
    row.emplace_back(r.rel_deviation ? Cell(*r.rel_deviation) : Cell());
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string to_csv(const Table& t, bool timestamp) {
  t.validate();
  std::ostringstream out;
  out << "# " << t.title << "\n";
  for (const auto& n : t.notes) out << "# " << n << "\n";
  out << "# version " << kVersion << ", config " << t.config_hash << "\n";
  if (timestamp) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out << "# generated " << buf << "\n";
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << ",";
      if (r[i]) out << format_double(*r[i]);
    }
    out << "\n";
  }
  return out.str();
}

nlohmann::json to_json(const Table& t) {
  t.validate();
  nlohmann::json j;
  j["title"] = t.title;
  j["notes"] = t.notes;
  j["version"] = kVersion;
  j["config_hash"] = t.config_hash;
  j["columns"] = t.columns;
  auto rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    auto row = nlohmann::json::array();
    for (const auto& c : r) {
      if (c && std::isfinite(*c)) {
        row.push_back(*c);
      } else {
        row.push_back(nullptr);
      }
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string plot_script(const Table& t, const std::string& data_file, const std::string& x,
                        const std::vector<std::string>& ys) {
  if (t.column(x) < 0) throw InputError("plot column missing: " + x);
  std::ostringstream out;
  out << "# plot recipe: comma-separated data, '#' lines are comments\n";
  out << "title: " << t.title << "\n";
  out << "data: " << data_file << "\n";
  out << "x: column " << t.column(x) + 1 << " (" << x << ")\n";
  for (const auto& y : ys) {
    if (t.column(y) < 0) throw InputError("plot column missing: " + y);
    out << "y: column " << t.column(y) + 1 << " (" << y << ")\n";
  }
  return out.str();
}

}  // namespace causal::report
