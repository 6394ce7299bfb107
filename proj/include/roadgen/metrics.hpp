#pragma once

#include <json.hpp>

#include "roadgen/grid.hpp"

namespace roadgen {

/// Structural quality measures of one grid. Field names double as JSON keys.
struct MetricReport {
  int connected_components = 0;
  int cyclomatic_complexity = 0;
  int dead_ends = 0;
  int boundary_violations = 0;
  int bridges = 0;
  int adjacent_crossing_violation_score = 0;
  int adjacent_crossing_pairs = 0;
  int adjacent_turns = 0;
  int straight_run_score = 0;
  int crossings = 0;
  double coverage = 0.0;
  int edges = 0;
  int nodes = 0;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

/// Niching signature: components, cyclomatic, dangling ends, adjacent crossing pairs, adjacent turns.
struct BehaviorDescriptor {
  int components = 0;
  int cyclomatic = 0;
  int dangling = 0;
  int adjacent_crossings = 0;
  int adjacent_turns = 0;

  friend bool operator==(const BehaviorDescriptor&, const BehaviorDescriptor&) = default;
};

int connected_components(const NetworkGraph& g);
int cyclomatic_complexity(const NetworkGraph& g);
int bridges(const NetworkGraph& g);

int dead_ends(const Grid& g);
int boundary_violations(const Grid& g);
int adjacent_crossing_violation_score(const Grid& g);
int adjacent_crossing_pairs(const Grid& g);
int adjacent_turns(const Grid& g);
int straight_run_score(const Grid& g);
int crossing_count(const Grid& g);
double coverage(const Grid& g);

MetricReport full_report(const Grid& g);
BehaviorDescriptor behavior_descriptor(const MetricReport& r);

nlohmann::json to_json(const MetricReport& r);
MetricReport report_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const BehaviorDescriptor& b);

}  // namespace roadgen
