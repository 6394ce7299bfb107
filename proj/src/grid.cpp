#include "roadgen/grid.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "roadgen/json.hpp"

namespace roadgen {

Grid::Grid(int height, int width) {
  if (height <= 0 || width <= 0) throw std::invalid_argument("grid dimensions must be positive");
  codes_ = CodeMatrix::Zero(height, width);
}

Grid::Grid(int height, int width, const std::vector<int>& row_major_codes) : Grid(height, width) {
  if (static_cast<long>(row_major_codes.size()) != static_cast<long>(height) * width) {
    throw std::invalid_argument("grid expects " + std::to_string(height * width) + " cells, got " +
                                std::to_string(row_major_codes.size()));
  }
  for (int i = 0; i < size(); ++i) set_index(i, TileCode(row_major_codes[i]));
}

Grid::Grid(CodeMatrix codes) : codes_(std::move(codes)) {
  if (codes_.rows() == 0 || codes_.cols() == 0) throw std::invalid_argument("grid dimensions must be positive");
  for (int i = 0; i < size(); ++i) {
    if (codes_.data()[i] > 15) throw std::out_of_range("tile code out of range at cell " + std::to_string(i));
  }
}

std::vector<int> Grid::row_major() const {
  std::vector<int> out(static_cast<std::size_t>(size()));
  for (int i = 0; i < size(); ++i) out[i] = codes_.data()[i];
  return out;
}

Grid rotate_cw(const Grid& g) {
  CodeMatrix turned = g.codes().transpose().rowwise().reverse();
  for (Eigen::Index i = 0; i < turned.size(); ++i) {
    turned.data()[i] = static_cast<std::uint8_t>(rotate_cw(TileCode(turned.data()[i])).value());
  }
  return Grid(std::move(turned));
}

NetworkGraph build_graph(const Grid& g) {
  NetworkGraph graph;
  graph.height = g.height();
  graph.width = g.width();
  graph.node_of_cell.assign(static_cast<std::size_t>(g.size()), -1);
  for (int i = 0; i < g.size(); ++i) {
    if (g.at_index(i).empty()) continue;
    graph.node_of_cell[i] = graph.node_count();
    graph.nodes.push_back(g.cell(i));
  }
  graph.adjacency.resize(graph.nodes.size());

  // Each interior border is visited once, from its upper/left cell.
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      const TileCode t = g.at(r, c);
      if (t.empty()) continue;
      const int a = graph.node_of_cell[g.index({r, c})];
      for (Direction d : {Direction::East, Direction::South}) {
        const auto n = g.neighbor({r, c}, d);
        if (!n || !connected(t, g.at(*n), d)) continue;
        const int b = graph.node_of_cell[g.index(*n)];
        graph.edges.emplace_back(a, b);
        graph.adjacency[a].push_back(b);
        graph.adjacency[b].push_back(a);
      }
    }
  }
  return graph;
}

int mismatch_count(const Grid& g) {
  int count = 0;
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      for (Direction d : {Direction::East, Direction::South}) {
        const auto n = g.neighbor({r, c}, d);
        if (n && !compatible(g.at(r, c), g.at(*n), d)) ++count;
      }
    }
  }
  return count;
}

nlohmann::json grid_to_json(const Grid& g) {
  return {{"height", g.height()}, {"width", g.width()}, {"cells", g.row_major()}};
}

Grid grid_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw GridFormatError("grid document must be a JSON object");
  for (const char* key : {"height", "width", "cells"}) {
    if (!doc.contains(key)) throw GridFormatError(std::string("grid document lacks \"") + key + "\"");
  }
  const auto& h = doc["height"];
  const auto& w = doc["width"];
  if (!h.is_number_integer() || !w.is_number_integer() || h.get<long>() <= 0 || w.get<long>() <= 0) {
    throw GridFormatError("grid height and width must be positive integers");
  }
  const auto& cells = doc["cells"];
  if (!cells.is_array()) throw GridFormatError("grid \"cells\" must be an array");

  const long height = h.get<long>();
  const long width = w.get<long>();
  if (static_cast<long>(cells.size()) != height * width) {
    throw GridFormatError("grid declares " + std::to_string(height) + "x" + std::to_string(width) + " = " +
                          std::to_string(height * width) + " cells but lists " + std::to_string(cells.size()));
  }
  std::vector<int> codes;
  codes.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& v = cells[i];
    if (!v.is_number_integer() || v.get<long>() < 0 || v.get<long>() > 15) {
      throw GridFormatError("cell " + std::to_string(i) + " holds " + v.dump() + ", expected a tile code 0-15");
    }
    codes.push_back(v.get<int>());
  }
  return Grid(static_cast<int>(height), static_cast<int>(width), codes);
}

std::string serialize(const Grid& g) { return grid_to_json(g).dump(); }

Grid deserialize(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw GridFormatError(std::string("malformed grid document: ") + e.what());
  }
  return grid_from_json(doc);
}

Grid load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GridFormatError("cannot open grid file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const nlohmann::json doc = nlohmann::json::parse(buffer.str(), nullptr, false);
  if (doc.is_discarded()) throw GridFormatError("malformed grid document in " + path);
  // Documents written by `generate`/`render` nest the grid under "grid".
  if (doc.is_object() && doc.contains("grid") && !doc.contains("cells")) return grid_from_json(doc["grid"]);
  return grid_from_json(doc);
}

void save_grid(const Grid& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize(g) << '\n';
}

std::pair<int, int> parse_size(std::string_view text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string_view::npos) throw std::invalid_argument("size must look like HxW, got " + std::string(text));
  int h = 0;
  int w = 0;
  const auto hs = text.substr(0, x);
  const auto ws = text.substr(x + 1);
  const auto rh = std::from_chars(hs.data(), hs.data() + hs.size(), h);
  const auto rw = std::from_chars(ws.data(), ws.data() + ws.size(), w);
  if (rh.ec != std::errc{} || rh.ptr != hs.data() + hs.size() || rw.ec != std::errc{} ||
      rw.ptr != ws.data() + ws.size() || h <= 0 || w <= 0) {
    throw std::invalid_argument("size must look like HxW, got " + std::string(text));
  }
  return {h, w};
}

}  // namespace roadgen
