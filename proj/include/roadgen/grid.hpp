#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "roadgen/tiles.hpp"

namespace roadgen {

using CodeMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// H x W matrix of tile codes, stored row-major.
class Grid {
 public:
  Grid() = default;
  Grid(int height, int width);
  Grid(int height, int width, const std::vector<int>& row_major_codes);
  explicit Grid(CodeMatrix codes);

  int height() const { return static_cast<int>(codes_.rows()); }
  int width() const { return static_cast<int>(codes_.cols()); }
  int size() const { return static_cast<int>(codes_.size()); }

  TileCode at(int row, int col) const { return TileCode(codes_(row, col)); }
  TileCode at(Cell c) const { return at(c.row, c.col); }
  TileCode at_index(int index) const { return TileCode(codes_.data()[index]); }
  void set(int row, int col, TileCode t) { codes_(row, col) = static_cast<std::uint8_t>(t.value()); }
  void set(Cell c, TileCode t) { set(c.row, c.col, t); }
  void set_index(int index, TileCode t) { codes_.data()[index] = static_cast<std::uint8_t>(t.value()); }

  bool contains(int row, int col) const {
    return row >= 0 && col >= 0 && row < height() && col < width();
  }

  /// Neighbor of `c` in direction `d`, or nullopt when it falls off the grid.
  std::optional<Cell> neighbor(Cell c, Direction d) const {
    const Cell n{c.row + row_offset(d), c.col + col_offset(d)};
    if (!contains(n.row, n.col)) return std::nullopt;
    return n;
  }

  int index(Cell c) const { return c.row * width() + c.col; }
  Cell cell(int index) const { return {index / width(), index % width()}; }

  const CodeMatrix& codes() const { return codes_; }
  std::vector<int> row_major() const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.codes_.rows() == b.codes_.rows() && a.codes_.cols() == b.codes_.cols() &&
           a.codes_ == b.codes_;
  }

 private:
  CodeMatrix codes_;
};

/// Rotates the layout a quarter turn clockwise and every tile with it.
Grid rotate_cw(const Grid& g);

/// Nodes are the non-empty cells; edges join 4-neighbors that both declare the shared border.
struct NetworkGraph {
  int height = 0;
  int width = 0;
  std::vector<Cell> nodes;
  std::vector<int> node_of_cell;  // -1 for empty cells
  std::vector<std::pair<int, int>> edges;  // node indices, first < second
  std::vector<std::vector<int>> adjacency;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int degree(int node) const { return static_cast<int>(adjacency[node].size()); }
};

NetworkGraph build_graph(const Grid& g);

/// Interior borders where exactly one side declares a connection.
int mismatch_count(const Grid& g);

class GridFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string serialize(const Grid& g);
Grid deserialize(std::string_view text);

Grid load_grid(const std::string& path);
void save_grid(const Grid& g, const std::string& path);

/// Parses "HxW" (e.g. "12x12").
std::pair<int, int> parse_size(std::string_view text);

}  // namespace roadgen
