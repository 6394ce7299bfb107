#pragma once

// Test-only reference computations, written independently of the library's graph code.

#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "roadgen/grid.hpp"

namespace oracle {

struct Edges {
  int nodes = 0;
  std::vector<std::pair<int, int>> list;  // cell indices
};

// Road edges read straight off the bit patterns: right/down neighbor pairs whose facing bits are both set.
inline Edges edges_of(const roadgen::Grid& g) {
  Edges e;
  const auto cells = g.row_major();
  const int h = g.height();
  const int w = g.width();
  for (int i = 0; i < h * w; ++i) {
    if (cells[i] != 0) ++e.nodes;
    const int r = i / w;
    const int c = i % w;
    if (c + 1 < w && (cells[i] & 4) && (cells[i + 1] & 1)) e.list.emplace_back(i, i + 1);
    if (r + 1 < h && (cells[i] & 2) && (cells[i + w] & 8)) e.list.emplace_back(i, i + w);
  }
  return e;
}

inline int components(const roadgen::Grid& g, const std::vector<std::pair<int, int>>& edges, int skip = -1) {
  const auto cells = g.row_major();
  std::vector<int> parent(cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
    if (k == skip) continue;
    parent[find(edges[k].first)] = find(edges[k].second);
  }
  int count = 0;
  for (int i = 0; i < static_cast<int>(cells.size()); ++i) count += cells[i] != 0 && find(i) == i;
  return count;
}

inline int bridges_by_removal(const roadgen::Grid& g) {
  const Edges e = edges_of(g);
  const int base = components(g, e.list);
  int count = 0;
  for (int k = 0; k < static_cast<int>(e.list.size()); ++k) count += components(g, e.list, k) > base;
  return count;
}

inline int cyclomatic(const roadgen::Grid& g) {
  const Edges e = edges_of(g);
  return static_cast<int>(e.list.size()) - e.nodes + components(g, e.list);
}

inline roadgen::Grid random_grid(std::mt19937_64& rng, int h, int w, int lo = 0) {
  std::uniform_int_distribution<int> code(lo, 15);
  std::vector<int> cells(static_cast<std::size_t>(h) * w);
  for (auto& c : cells) c = code(rng);
  return roadgen::Grid(h, w, cells);
}

}  // namespace oracle
