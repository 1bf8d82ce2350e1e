#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace causal::cli {

enum ExitCode { kOk = 0, kBadConfig = 2, kNumericFailure = 3, kVerificationFailure = 4 };

/// Keys use '_' separators; flags, config file and env are all folded into
/// `params` before dispatch.
struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> params;
};

std::vector<std::string> subcommands();

/// "a:b:step" (inclusive), a comma list, or a single value. Throws
/// InputError("empty scan") when nothing is left.
std::vector<double> parse_grid(const std::string& text);

/// key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Every CAUSAL_* variable, key lowercased without the prefix.
std::map<std::string, std::string> env_params();

/// Later maps win.
std::map<std::string, std::string> merge(
    const std::vector<std::map<std::string, std::string>>& layers);

/// Hash of the subcommand and every resolved parameter except output paths.
std::string config_hash(const RunConfig& cfg);

/// Runs the subcommand. Results go to the configured output file or `out`;
/// failures print one JSON error record to `err`. Returns the exit code.
int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace causal::cli
