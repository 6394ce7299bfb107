#include "roadgen/metrics.hpp"

#include <algorithm>
#include <vector>

namespace roadgen {

namespace {

// Calls fn(a, b, d) for every unordered 4-neighbor pair joined by a road edge.
template <typename Fn>
void for_each_connected_pair(const Grid& g, Fn&& fn) {
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      const TileCode a = g.at(r, c);
      for (Direction d : {Direction::East, Direction::South}) {
        const auto n = g.neighbor({r, c}, d);
        if (n && connected(a, g.at(*n), d)) fn(a, g.at(*n));
      }
    }
  }
}

}  // namespace

int connected_components(const NetworkGraph& g) {
  std::vector<char> seen(g.nodes.size(), 0);
  std::vector<int> stack;
  int components = 0;
  for (int start = 0; start < g.node_count(); ++start) {
    if (seen[start]) continue;
    ++components;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : g.adjacency[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

int cyclomatic_complexity(const NetworkGraph& g) {
  return g.edge_count() - g.node_count() + connected_components(g);
}

int bridges(const NetworkGraph& g) {
  // Iterative Tarjan low-link; an edge (parent, v) is a bridge iff low[v] > disc[parent].
  const int n = g.node_count();
  std::vector<int> disc(n, -1);
  std::vector<int> low(n, 0);
  std::vector<int> parent(n, -1);
  std::vector<std::size_t> next_child(n, 0);
  std::vector<int> stack;
  int timer = 0;
  int count = 0;

  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    disc[root] = low[root] = timer++;
    stack.push_back(root);
    while (!stack.empty()) {
      const int v = stack.back();
      if (next_child[v] < g.adjacency[v].size()) {
        const int w = g.adjacency[v][next_child[v]++];
        if (disc[w] == -1) {
          parent[w] = v;
          disc[w] = low[w] = timer++;
          stack.push_back(w);
        } else if (w != parent[v]) {
          low[v] = std::min(low[v], disc[w]);
        }
        continue;
      }
      stack.pop_back();
      if (parent[v] != -1) {
        const int p = parent[v];
        low[p] = std::min(low[p], low[v]);
        if (low[v] > disc[p]) ++count;
      }
    }
  }
  return count;
}

int dead_ends(const Grid& g) {
  const NetworkGraph graph = build_graph(g);
  int count = 0;
  for (int v = 0; v < graph.node_count(); ++v) count += graph.degree(v) == 1 ? 1 : 0;
  return count;
}

int boundary_violations(const Grid& g) {
  int count = 0;
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      for (Direction d : kDirections) {
        if (g.at(r, c).has(d) && !g.neighbor({r, c}, d)) ++count;
      }
    }
  }
  return count;
}

int adjacent_crossing_violation_score(const Grid& g) {
  int score = 0;
  for_each_connected_pair(g, [&](TileCode a, TileCode b) {
    if (is_crossing(a) && is_crossing(b)) score += degree(a) + degree(b);
  });
  return score;
}

int adjacent_crossing_pairs(const Grid& g) {
  int pairs = 0;
  for_each_connected_pair(g, [&](TileCode a, TileCode b) { pairs += is_crossing(a) && is_crossing(b); });
  return pairs;
}

int adjacent_turns(const Grid& g) {
  int pairs = 0;
  for_each_connected_pair(g, [&](TileCode a, TileCode b) {
    pairs += classify(a) == TileClass::Turn && classify(b) == TileClass::Turn;
  });
  return pairs;
}

int straight_run_score(const Grid& g) {
  constexpr TileCode kHorizontal(5);
  constexpr TileCode kVertical(10);
  int score = 0;
  for (int r = 0; r < g.height(); ++r) {
    int run = 0;
    for (int c = 0; c <= g.width(); ++c) {
      if (c < g.width() && g.at(r, c) == kHorizontal) {
        ++run;
      } else {
        score += run * run;
        run = 0;
      }
    }
  }
  for (int c = 0; c < g.width(); ++c) {
    int run = 0;
    for (int r = 0; r <= g.height(); ++r) {
      if (r < g.height() && g.at(r, c) == kVertical) {
        ++run;
      } else {
        score += run * run;
        run = 0;
      }
    }
  }
  return score;
}

int crossing_count(const Grid& g) {
  int count = 0;
  for (int i = 0; i < g.size(); ++i) count += is_crossing(g.at_index(i));
  return count;
}

double coverage(const Grid& g) {
  int placed = 0;
  for (int i = 0; i < g.size(); ++i) placed += !g.at_index(i).empty();
  return static_cast<double>(placed) / static_cast<double>(g.size());
}

MetricReport full_report(const Grid& g) {
  const NetworkGraph graph = build_graph(g);
  MetricReport r;
  r.nodes = graph.node_count();
  r.edges = graph.edge_count();
  r.connected_components = connected_components(graph);
  r.cyclomatic_complexity = r.edges - r.nodes + r.connected_components;
  for (int v = 0; v < graph.node_count(); ++v) r.dead_ends += graph.degree(v) == 1 ? 1 : 0;
  r.boundary_violations = boundary_violations(g);
  r.bridges = bridges(graph);
  for_each_connected_pair(g, [&](TileCode a, TileCode b) {
    if (is_crossing(a) && is_crossing(b)) {
      ++r.adjacent_crossing_pairs;
      r.adjacent_crossing_violation_score += degree(a) + degree(b);
    }
    r.adjacent_turns += classify(a) == TileClass::Turn && classify(b) == TileClass::Turn;
  });
  r.straight_run_score = straight_run_score(g);
  r.crossings = crossing_count(g);
  r.coverage = coverage(g);
  return r;
}

BehaviorDescriptor behavior_descriptor(const MetricReport& r) {
  return {r.connected_components, r.cyclomatic_complexity, r.dead_ends, r.adjacent_crossing_pairs,
          r.adjacent_turns};
}

nlohmann::json to_json(const MetricReport& r) {
  return {
      {"connected_components", r.connected_components},
      {"cyclomatic_complexity", r.cyclomatic_complexity},
      {"dead_ends", r.dead_ends},
      {"boundary_violations", r.boundary_violations},
      {"bridges", r.bridges},
      {"adjacent_crossing_violation_score", r.adjacent_crossing_violation_score},
      {"adjacent_crossing_pairs", r.adjacent_crossing_pairs},
      {"adjacent_turns", r.adjacent_turns},
      {"straight_run_score", r.straight_run_score},
      {"crossings", r.crossings},
      {"coverage", r.coverage},
      {"edges", r.edges},
      {"nodes", r.nodes},
  };
}

MetricReport report_from_json(const nlohmann::json& doc) {
  MetricReport r;
  r.connected_components = doc.at("connected_components").get<int>();
  r.cyclomatic_complexity = doc.at("cyclomatic_complexity").get<int>();
  r.dead_ends = doc.at("dead_ends").get<int>();
  r.boundary_violations = doc.at("boundary_violations").get<int>();
  r.bridges = doc.at("bridges").get<int>();
  r.adjacent_crossing_violation_score = doc.at("adjacent_crossing_violation_score").get<int>();
  r.adjacent_crossing_pairs = doc.value("adjacent_crossing_pairs", 0);
  r.adjacent_turns = doc.at("adjacent_turns").get<int>();
  r.straight_run_score = doc.at("straight_run_score").get<int>();
  r.crossings = doc.at("crossings").get<int>();
  r.coverage = doc.at("coverage").get<double>();
  r.edges = doc.at("edges").get<int>();
  r.nodes = doc.at("nodes").get<int>();
  return r;
}

nlohmann::json to_json(const BehaviorDescriptor& b) {
  return nlohmann::json::array({b.components, b.cyclomatic, b.dangling, b.adjacent_crossings, b.adjacent_turns});
}

}  // namespace roadgen
