#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace causal::verify {

/// One invariant: measured deviation against its threshold.
struct Record {
  std::string suite;
  std::string name;
  double deviation = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::vector<Record> records;
  double seconds = 0.0;

  bool passed() const;
  nlohmann::json to_json() const;
};

struct Options {
  /// Replaces every threshold when set.
  std::optional<double> threshold_override;
};

/// A named group of records.
struct Check {
  std::string name;
  std::string suite;
  std::function<std::vector<Record>()> run;
};

/// The twelve acceptance groups, in order.
const std::vector<Check>& acceptance_checks();

/// Supplementary invariants beyond the acceptance groups.
const std::vector<Check>& extra_checks();

std::vector<std::string> suite_names();

/// Runs every group belonging to `suite` ("all" runs everything). Throws
/// InputError for an unknown suite. Groups that throw are reported as a
/// failed record carrying the message.
Report run_suite(const std::string& suite, const Options& opt = {});

/// Runs one group with threshold override and exception capture applied.
std::vector<Record> run_check(const Check& c, const Options& opt = {});

/// R^2 of the least-squares fit a + b mu2 + c L + d L^2 with L = log mu2.
double sunset_fit_r2(const std::vector<double>& mu2, const std::vector<double>& values);

}  // namespace causal::verify
