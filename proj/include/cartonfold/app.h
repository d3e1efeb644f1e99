#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cartonfold/metrics.h"
#include "cartonfold/planner.h"

namespace cartonfold {

enum class OutputFormat { kTable, kCsv, kStructured };

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kUsage = 1;
inline constexpr int kNoSequences = 2;  // also: --explain sequence invalid
inline constexpr int kInvalidSpec = 3;
inline constexpr int kLimit = 4;
}  // namespace exit_code

struct RunConfig {
  std::filesystem::path spec_path;
  OutputFormat format = OutputFormat::kTable;
  std::optional<std::size_t> top_n = 20;  // nullopt: every sequence
  SearchMode mode = SearchMode::kMemoized;
  std::optional<double> tolerance_angle_deg;
  std::optional<double> penetration_mm;
  std::optional<double> support_mm;
  std::optional<int> subset_cap;
  bool allow_naive_fallback = true;
  std::optional<std::filesystem::path> dump_states;
  std::optional<FoldSequence> explain;
};

enum class LogLevel { kQuiet, kWarn, kInfo, kDebug };
/// Reads CARTONFOLD_LOG (quiet|warn|info|debug); warn when unset or unknown.
LogLevel LogLevelFromEnv();

/// Loads the spec, enumerates, ranks and writes the report to `out`.
/// Diagnostics go to `err`. Returns one of exit_code::*.
int Run(const RunConfig& config, std::ostream& out, std::ostream& err,
        LogLevel log = LogLevel::kWarn);

/// Parses "2,1,7" or "[2, 1, 7]". Throws ValidationError on bad tokens.
FoldSequence ParseSequenceList(std::string_view text);

/// Applies RunConfig overrides to the spec's planner block (ValidationError
/// when an override is out of bounds).
void ApplyOverrides(const RunConfig& config, CartonSpec& spec);

// Report writers. Machine-readable numbers use fixed 6-decimal formatting.
std::string FormatTable(const RankedReport& report, std::size_t total,
                        std::size_t rows);
std::string FormatCsv(const RankedReport& report, std::size_t rows);
std::string FormatStructured(const RankedReport& report,
                             const std::string& carton, std::size_t total,
                             std::size_t rows);

/// Writes one JSON-lines file per ranked row into `dir`, one record per state
/// S_0 .. S_k with every panel pose, the state bounds and the aerial flag.
/// Poses are written at full precision.
void DumpStates(const KinematicTree& tree, const RankedReport& report,
                std::size_t rows, const std::filesystem::path& dir);

}  // namespace cartonfold
