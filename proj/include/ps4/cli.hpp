#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace ps4::cli {

enum class Command { Sieve, Solve, Gamma, Ternary, Expsum, Kernel, Bounds, Stats };
enum class Format { Json, Csv };

struct RunConfig {
  Command command = Command::Sieve;
  std::string sub;  ///< subcommand of bounds / stats
  std::map<std::string, std::string> flags;  ///< long name without dashes
  Format output = Format::Json;
  std::filesystem::path cache_dir;  ///< empty: no cache
  unsigned threads = 0;
  std::optional<std::string> help;  ///< set when --help was requested
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// argv without the program name. Throws UsageError naming the offending
/// flag or command.
RunConfig parse_args(const std::vector<std::string>& args);

/// Executes the command; returns 0, 1 (usage) or 2 (domain error, with a
/// JSON error object on `out`).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full entry point used by the executable.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

using Json = nlohmann::ordered_json;

/// JSON text with doubles printed as %.17g and non-finite values as null.
std::string emit_json(const Json& value);
/// CSV with a header row from the keys of the first row; rows must be flat
/// objects with the same keys.
std::string emit_csv(const std::vector<Json>& rows);

}  // namespace ps4::cli
