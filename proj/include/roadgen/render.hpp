#pragma once

// Map compositing from per-code tile assets. Every asset carries an RGB raster and three
// binary masks (road surface, red stop lines, yellow lane separators); the same placement
// and quarter-turn rotations are applied to all four layers.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "roadgen/grid.hpp"
#include "roadgen/metrics.hpp"
#include "roadgen/random.hpp"

namespace roadgen {

template <typename T>
using Raster = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Channel = Raster<std::uint8_t>;
/// Binary mask, values 0 or 1.
using Mask = Raster<std::uint8_t>;

/// Quarter turn clockwise of any raster.
template <typename Derived>
Raster<typename Derived::Scalar> rotate_cw(const Eigen::MatrixBase<Derived>& image) {
  return image.transpose().rowwise().reverse();
}

struct RgbImage {
  std::array<Channel, 3> channels;

  int rows() const { return static_cast<int>(channels[0].rows()); }
  int cols() const { return static_cast<int>(channels[0].cols()); }
  friend bool operator==(const RgbImage& a, const RgbImage& b) {
    for (int c = 0; c < 3; ++c) {
      if (a.channels[c].rows() != b.channels[c].rows() || a.channels[c].cols() != b.channels[c].cols() ||
          a.channels[c] != b.channels[c]) {
        return false;
      }
    }
    return true;
  }
};

RgbImage make_rgb(int rows, int cols);
RgbImage rotate_cw(const RgbImage& image);

struct TileAsset {
  TileCode code;
  RgbImage rgb;
  Mask road;
  Mask red;
  Mask yellow;

  int side() const { return rgb.rows(); }
  friend bool operator==(const TileAsset&, const TileAsset&) = default;
};

/// Same asset a quarter turn clockwise, registered under the rotated code.
TileAsset rotate_cw(const TileAsset& asset);

class TileSetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Assets per tile code; each code may hold several variants.
class TileSet {
 public:
  explicit TileSet(int tile_px = 128) : tile_px_(tile_px) {}

  int tile_px() const { return tile_px_; }

  /// Adds `base` and its three rotations, skipping pixel-identical duplicates.
  void add_with_rotations(const TileAsset& base);

  bool covers(TileCode code) const { return assets_.count(code.value()) != 0; }
  std::vector<int> missing_codes() const;
  const std::vector<TileAsset>& variants(TileCode code) const;

  /// First variant, or a seeded random pick when `rng` is provided.
  const TileAsset& pick(TileCode code, Rng* rng = nullptr) const;

 private:
  int tile_px_;
  std::map<int, std::vector<TileAsset>> assets_;
};

/// Procedural stand-in for photographed tiles: grey road arms with white edge stripes,
/// a dashed yellow centre line, and red stop bars on the approaches of 3- and 4-way tiles.
TileSet synth_tileset(int tile_px, Rng& rng);

/// Reads `<dir>/<code>[_variant]/{rgb,road,red,yellow}.png` and closes the set under rotation.
TileSet load_tileset(const std::filesystem::path& directory);

/// Writes one subdirectory per canonical code (0, 8, 10, 12, 14, 15) in the loader's layout.
void save_tileset(const TileSet& tiles, const std::filesystem::path& directory);

struct RenderedMap {
  RgbImage rgb;
  Mask road;
  Mask red;
  Mask yellow;
  Grid grid;
  MetricReport report;
};

/// Priority red > yellow > road > background, labelled 2, 3, 1, 0.
Channel label_map(const RenderedMap& map);

struct RenderOptions {
  /// Pick a random variant per cell instead of the first one.
  bool random_variants = false;
  std::uint64_t seed = 0;
};

RenderedMap render(const Grid& g, const TileSet& tiles, const RenderOptions& options = {});

/// map_rgb.png, mask_road.png, mask_red.png, mask_yellow.png, labels.png and map.json.
void write_rendered(const RenderedMap& map, const std::filesystem::path& directory);

}  // namespace roadgen
