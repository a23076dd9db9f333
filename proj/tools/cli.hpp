#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coverage/environment.hpp"
#include "coverage/harness.hpp"

namespace coverage::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;

/// Bad flags or flag values. Maps to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The bench corpus holds no map file.
class EmptyCorpus : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenSpec {
  int width = 0;
  int height = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
};

/// "WxH:density:seed", e.g. "8x8:0.2:42".
GenSpec parse_gen_spec(const std::string& text);

/// A budget is either a plain integer or "<k>l", meaning k times the longer
/// side of the map.
Energy parse_budget(const std::string& token, const Environment& env);

enum class RenderMode { Svg, Ascii, None };

RenderMode parse_render_mode(const std::string& text);

struct RunConfig {
  std::optional<std::string> map_path;
  std::optional<GenSpec> gen;
  std::vector<std::string> budgets;
  std::filesystem::path out_dir = ".";
  RenderMode render = RenderMode::Svg;
  bool oracle = false;
};

/// Exactly one of map_path / gen must be set.
Environment load_environment(const RunConfig& config);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

struct BenchRow {
  std::string map;
  Energy budget = 0;
  std::size_t n = 0;
  int k = 0;
  long long total_length = 0;
  long long min_bound = 0;
  double ratio_paths = 0.0;
  double ratio_length = 0.0;
  double wall_ms = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;                              ///< sorted by map, then budget
  std::vector<std::pair<std::string, std::string>> skipped;  ///< file, reason
};

/// Runs every "*.map" file in `corpus` under every budget, `threads` at a time
/// (0 = hardware concurrency). Throws EmptyCorpus when there is nothing to run.
BenchReport run_bench(const std::filesystem::path& corpus, const std::vector<std::string>& budgets,
                      unsigned threads = 0);

std::string bench_csv(const BenchReport& report);
std::string bench_table(const BenchReport& report);

int cmd_bench(const std::filesystem::path& corpus, const std::vector<std::string>& budgets,
              const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

/// Exit 0 iff every check passes, 1 on a failed check, 2 on schema or input errors.
int cmd_validate(const std::filesystem::path& result_path, const std::filesystem::path& map_path,
                 std::optional<Energy> budget, std::ostream& out, std::ostream& err);

int cmd_render(const std::filesystem::path& result_path, const std::filesystem::path& map_path, RenderMode mode,
               const std::optional<std::filesystem::path>& out_file, std::ostream& out, std::ostream& err);

int cmd_generate(const GenSpec& spec, const std::optional<std::filesystem::path>& out_file, std::ostream& out,
                 std::ostream& err);

/// Full command line, argv[0] included.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coverage::cli
