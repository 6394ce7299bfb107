#pragma once

// Method x seed experiment matrices, per-metric statistics and ordinal verdicts.

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "roadgen/evo.hpp"
#include "roadgen/fitness.hpp"
#include "roadgen/grid.hpp"
#include "roadgen/metrics.hpp"
#include "roadgen/stats.hpp"
#include "roadgen/swarm.hpp"
#include "roadgen/wfc.hpp"

namespace roadgen {

enum class Method { Wfc, Pso, Gwo, Ea, MapElites };

inline constexpr std::array<Method, 5> kAllMethods = {Method::Wfc, Method::Pso, Method::Gwo, Method::Ea,
                                                      Method::MapElites};

/// "wfc", "pso", "gwo", "ea", "map-elites".
std::string to_string(Method m);
/// Throws std::invalid_argument for unknown names.
Method parse_method(std::string_view name);
std::vector<Method> parse_methods(std::string_view comma_list);

struct ExperimentSpec {
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  std::vector<std::pair<int, int>> sizes{{12, 12}};
  int runs = 4;
  FitnessWeights weights;
  WfcConfig wfc;
  SwarmConfig swarm;
  EvoConfig evo;  // map_elites is set per method
  std::uint64_t master_seed = 0;
  /// When set, each record is written to `<dir>/records/` as soon as it completes.
  std::optional<std::filesystem::path> record_dir;
};

void validate(const ExperimentSpec& spec);

/// Seed for run `run` of `method`; independent of which other methods are in the spec.
std::uint64_t run_seed(std::uint64_t master, Method method, int run);

struct RunRecord {
  Method method = Method::Wfc;
  int run = 0;
  std::uint64_t seed = 0;
  int height = 0;
  int width = 0;
  bool success = true;
  std::string failure;  // diagnostic when !success
  bool hard_boundary = false;
  Grid grid;
  MetricReport report;
  double fitness = 0.0;
  /// Cyclomatic IQR of the final population (EA) or archive (MAP-Elites).
  std::optional<double> cyclomatic_spread;
  int archive_size = 0;
  double wall_time = 0.0;  // seconds
  std::vector<double> trace;

  /// Equality ignoring wall time.
  bool same_outcome(const RunRecord& other) const;
};

nlohmann::json to_json(const RunRecord& r);
RunRecord record_from_json(const nlohmann::json& doc);

/// File name of a persisted record, e.g. "ea_12x12_run03.json".
std::string record_file_name(const RunRecord& r);
std::vector<RunRecord> load_records(const std::filesystem::path& records_dir);

RunRecord run_single(Method method, int height, int width, int run, const ExperimentSpec& spec);

using RunCallback = std::function<void(const RunRecord&)>;

/// Methods x sizes x runs in that nesting order.
std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, const RunCallback& on_record = {});

/// Metric columns, ordered as connectivity, constraint and layout groups.
enum class Metric {
  Components,
  DeadEnds,
  Cyclomatic,
  BoundaryViolations,
  AdjacentCrossings,
  Coverage,
  Crossings,
  StraightRuns,
  AdjacentTurns,
  Fitness,
  WallTime,
};

inline constexpr std::array<Metric, 11> kAllMetrics = {
    Metric::Components, Metric::DeadEnds,     Metric::Cyclomatic,    Metric::BoundaryViolations,
    Metric::AdjacentCrossings, Metric::Coverage, Metric::Crossings, Metric::StraightRuns,
    Metric::AdjacentTurns, Metric::Fitness, Metric::WallTime};

std::string to_string(Metric m);
double metric_value(const RunRecord& r, Metric m);

struct MethodStats {
  Method method = Method::Wfc;
  int runs = 0;
  int successes = 0;
  bool hard_boundary = false;
  std::map<Metric, Summary> metrics;
  /// False for tables entered from means and deviations only.
  bool has_quartiles = true;

  double success_rate() const { return runs == 0 ? 0.0 : static_cast<double>(successes) / runs; }
};

struct StatTable {
  int height = 0;
  int width = 0;
  std::vector<MethodStats> rows;  // in first-seen method order

  const MethodStats* find(Method m) const;
};

/// One table per grid size. Throws std::invalid_argument on empty input or when a method has
/// no successful run.
std::vector<StatTable> summarize(const std::vector<RunRecord>& records);

std::string to_csv(const std::vector<StatTable>& tables);
std::string to_markdown(const std::vector<StatTable>& tables);

enum class VerdictStatus { Pass, Fail, ExpectedFail, NotApplicable };

std::string to_string(VerdictStatus s);

struct Verdict {
  std::string id;  // "i" .. "v"
  std::string claim;
  VerdictStatus status = VerdictStatus::NotApplicable;
  std::string detail;
};

struct RankCheck {
  std::vector<Verdict> verdicts;
  std::vector<std::string> warnings;

  bool all_applicable_pass() const;
};

inline constexpr int kRecommendedRuns = 10;

/// Throws std::invalid_argument unless all five methods are present.
RankCheck rank_check(const StatTable& table);

std::string format_verdicts(const RankCheck& check);

}  // namespace roadgen
