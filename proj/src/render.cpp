#include "roadgen/render.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "roadgen/json.hpp"
#include "roadgen/png_io.hpp"

namespace roadgen {

namespace fs = std::filesystem;

RgbImage make_rgb(int rows, int cols) {
  RgbImage image;
  for (auto& ch : image.channels) ch = Channel::Zero(rows, cols);
  return image;
}

RgbImage rotate_cw(const RgbImage& image) {
  RgbImage out;
  for (int c = 0; c < 3; ++c) out.channels[c] = rotate_cw(image.channels[c]);
  return out;
}

TileAsset rotate_cw(const TileAsset& asset) {
  return {rotate_cw(asset.code), rotate_cw(asset.rgb), rotate_cw(asset.road), rotate_cw(asset.red),
          rotate_cw(asset.yellow)};
}

void TileSet::add_with_rotations(const TileAsset& base) {
  if (base.side() != tile_px_ || base.rgb.cols() != tile_px_) {
    throw TileSetError("asset for code " + to_string(base.code) + " is " + std::to_string(base.rgb.rows()) + "x" +
                       std::to_string(base.rgb.cols()) + ", expected " + std::to_string(tile_px_) + "x" +
                       std::to_string(tile_px_));
  }
  TileAsset turned = base;
  for (int k = 0; k < 4; ++k) {
    auto& list = assets_[turned.code.value()];
    if (std::find(list.begin(), list.end(), turned) == list.end()) list.push_back(turned);
    turned = rotate_cw(turned);
  }
}

std::vector<int> TileSet::missing_codes() const {
  std::vector<int> missing;
  for (int code = 0; code < kTileAlphabetSize; ++code) {
    if (!covers(TileCode(code))) missing.push_back(code);
  }
  return missing;
}

const std::vector<TileAsset>& TileSet::variants(TileCode code) const {
  const auto it = assets_.find(code.value());
  if (it == assets_.end()) throw TileSetError("tileset has no asset for code " + to_string(code));
  return it->second;
}

const TileAsset& TileSet::pick(TileCode code, Rng* rng) const {
  const auto& list = variants(code);
  if (rng == nullptr || list.size() == 1) return list.front();
  return list[static_cast<std::size_t>(uniform_int(*rng, 0, static_cast<int>(list.size()) - 1))];
}

namespace {

constexpr std::array<int, 6> kCanonicalCodes = {0, 8, 10, 12, 14, 15};

struct Color {
  std::uint8_t r, g, b;
};

Mask box(int side, int r0, int r1, int c0, int c1) {
  Mask m = Mask::Zero(side, side);
  if (r1 > r0 && c1 > c0) m.block(r0, c0, r1 - r0, c1 - c0).setOnes();
  return m;
}

Mask turned(const Mask& north_frame, Direction d) {
  Mask m = north_frame;
  for (int k = 0; k < static_cast<int>(d); ++k) m = rotate_cw(m);
  return m;
}

void paint(RgbImage& image, const Mask& where, Color color) {
  const std::array<std::uint8_t, 3> rgb = {color.r, color.g, color.b};
  for (int c = 0; c < 3; ++c) image.channels[c] = (where.array() != 0).select(Channel::Constant(where.rows(), where.cols(), rgb[c]), image.channels[c]);
}

Color jitter(Rng& rng, Color base, int amount) {
  const auto shift = [&](std::uint8_t v) {
    return static_cast<std::uint8_t>(std::clamp(static_cast<int>(v) + uniform_int(rng, -amount, amount), 0, 255));
  };
  return {shift(base.r), shift(base.g), shift(base.b)};
}

// All geometry is drawn for the North approach and turned into place, so every asset is
// exactly the quarter-turned copy of its rotated code.
struct Geometry {
  int side;
  int road_lo, road_hi;      // road band, symmetric about the centre
  int stripe;                // white edge stripe width
  int line_lo, line_hi;      // yellow centre line band
  int dash;                  // dash period half-length
  int bar;                   // stop bar depth

  explicit Geometry(int s)
      : side(s),
        road_lo(s / 2 - (s * 3) / 10),
        road_hi(s - road_lo),
        stripe(std::max(1, s / 32)),
        line_lo(s / 2 - std::max(1, s / 64)),
        line_hi(s - line_lo),
        dash(std::max(2, s / 16)),
        bar(std::max(2, s / 20)) {}
};

TileAsset draw_tile(TileCode code, const Geometry& geo, const std::array<Color, 5>& palette) {
  const int s = geo.side;
  Mask road = Mask::Zero(s, s);
  Mask white = Mask::Zero(s, s);
  Mask yellow = Mask::Zero(s, s);
  Mask red = Mask::Zero(s, s);

  if (!code.empty()) {
    road = box(s, geo.road_lo, geo.road_hi, geo.road_lo, geo.road_hi);

    const Mask arm = box(s, 0, geo.road_lo, geo.road_lo, geo.road_hi);
    const Mask arm_edges = box(s, 0, geo.road_lo, geo.road_lo, geo.road_lo + geo.stripe) +
                           box(s, 0, geo.road_lo, geo.road_hi - geo.stripe, geo.road_hi);
    const Mask closed_side = box(s, geo.road_lo, geo.road_lo + geo.stripe, geo.road_lo, geo.road_hi);
    Mask dashes = Mask::Zero(s, s);
    for (int r = 0; r < geo.road_lo; ++r) {
      if ((r / geo.dash) % 2 == 0) dashes.block(r, geo.line_lo, 1, geo.line_hi - geo.line_lo).setOnes();
    }
    const Mask centre_line = box(s, geo.road_lo, s / 2, geo.line_lo, geo.line_hi);
    const Mask stop_bar = box(s, geo.road_lo - geo.bar, geo.road_lo, geo.road_lo + geo.stripe, geo.line_lo);

    const bool crossing = is_crossing(code);
    for (Direction d : kDirections) {
      if (!code.has(d)) {
        white += turned(closed_side, d);
        continue;
      }
      road += turned(arm, d);
      white += turned(arm_edges, d);
      yellow += turned(dashes, d);
      if (crossing) {
        red += turned(stop_bar, d);
      } else {
        yellow += turned(centre_line, d);
      }
    }
  }
  // Overlapping strokes summed above; collapse back to binary.
  const auto binary = [](const Mask& m) -> Mask { return (m.array() > 0).cast<std::uint8_t>(); };
  road = binary(road);
  white = binary(white);
  yellow = binary(yellow);
  red = binary(red);
  // Lines sit on the road surface; stripes win over the centre line where they meet.
  yellow = (yellow.array() * road.array() * (1 - white.array())).matrix();
  red = (red.array() * road.array() * (1 - white.array())).matrix();
  white = (white.array() * road.array()).matrix();

  TileAsset asset{code, make_rgb(s, s), road, red, yellow};
  paint(asset.rgb, Mask::Ones(s, s), palette[0]);
  paint(asset.rgb, road, palette[1]);
  paint(asset.rgb, white, palette[2]);
  paint(asset.rgb, yellow, palette[3]);
  paint(asset.rgb, red, palette[4]);
  return asset;
}

bool is_binary(const Channel& m) { return ((m.array() == 0) || (m.array() == 255)).all(); }

Mask to_mask(const Channel& c) { return (c.array() != 0).cast<std::uint8_t>(); }

Channel to_channel(const Mask& m) { return (m.array() * 255).matrix(); }

std::optional<int> parse_code_dir(const std::string& name) {
  const std::string head = name.substr(0, name.find('_'));
  int code = -1;
  const auto res = std::from_chars(head.data(), head.data() + head.size(), code);
  if (res.ec != std::errc{} || res.ptr != head.data() + head.size() || code < 0 || code > 15) return std::nullopt;
  return code;
}

}  // namespace

TileSet synth_tileset(int tile_px, Rng& rng) {
  if (tile_px < 32) throw std::invalid_argument("synthetic tiles need tile_px >= 32");
  const std::array<Color, 5> palette = {
      jitter(rng, {34, 84, 38}, 12),     // background
      jitter(rng, {48, 48, 52}, 8),      // asphalt
      jitter(rng, {235, 235, 230}, 10),  // edge stripes
      jitter(rng, {232, 196, 36}, 10),   // lane separator
      jitter(rng, {205, 32, 32}, 10),    // stop line
  };
  const Geometry geo(tile_px);
  TileSet tiles(tile_px);
  for (int code : kCanonicalCodes) tiles.add_with_rotations(draw_tile(TileCode(code), geo, palette));
  return tiles;
}

TileSet load_tileset(const fs::path& directory) {
  if (!fs::is_directory(directory)) throw TileSetError("tileset directory " + directory.string() + " not found");
  std::vector<fs::path> entries;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_directory() && parse_code_dir(entry.path().filename().string())) entries.push_back(entry.path());
  }
  std::sort(entries.begin(), entries.end());
  if (entries.empty()) throw TileSetError("tileset directory " + directory.string() + " holds no tile folders");

  std::optional<TileSet> tiles;
  for (const fs::path& dir : entries) {
    const std::string name = dir.filename().string();
    const TileCode code(*parse_code_dir(name));
    for (const char* file : {"rgb.png", "road.png", "red.png", "yellow.png"}) {
      if (!fs::exists(dir / file)) throw TileSetError("asset " + name + " is missing " + file);
    }
    RgbImage rgb = read_png_rgb(dir / "rgb.png");
    if (rgb.rows() != rgb.cols()) throw TileSetError("asset " + name + " is not square");
    std::array<Channel, 3> masks = {read_png_gray(dir / "road.png"), read_png_gray(dir / "red.png"),
                                    read_png_gray(dir / "yellow.png")};
    const char* mask_names[] = {"road.png", "red.png", "yellow.png"};
    for (int i = 0; i < 3; ++i) {
      if (masks[i].rows() != rgb.rows() || masks[i].cols() != rgb.cols()) {
        throw TileSetError("asset " + name + ": " + mask_names[i] + " size differs from rgb.png");
      }
      if (!is_binary(masks[i])) throw TileSetError("asset " + name + ": " + mask_names[i] + " is not binary (0/255)");
    }
    if (!tiles) tiles.emplace(rgb.rows());
    if (rgb.rows() != tiles->tile_px()) {
      throw TileSetError("asset " + name + " is " + std::to_string(rgb.rows()) + " px, expected " +
                         std::to_string(tiles->tile_px()));
    }
    tiles->add_with_rotations({code, std::move(rgb), to_mask(masks[0]), to_mask(masks[1]), to_mask(masks[2])});
  }

  const auto missing = tiles->missing_codes();
  if (!missing.empty()) {
    std::string list;
    for (int code : missing) list += (list.empty() ? "" : ", ") + std::to_string(code);
    throw TileSetError("tileset does not cover codes [" + list + "]");
  }
  return *tiles;
}

void save_tileset(const TileSet& tiles, const fs::path& directory) {
  for (int code : kCanonicalCodes) {
    const TileAsset& asset = tiles.pick(TileCode(code));
    const fs::path dir = directory / std::to_string(code);
    fs::create_directories(dir);
    write_png(dir / "rgb.png", asset.rgb);
    write_png(dir / "road.png", to_channel(asset.road));
    write_png(dir / "red.png", to_channel(asset.red));
    write_png(dir / "yellow.png", to_channel(asset.yellow));
  }
}

RenderedMap render(const Grid& g, const TileSet& tiles, const RenderOptions& options) {
  for (int i = 0; i < g.size(); ++i) {
    if (!tiles.covers(g.at_index(i))) {
      const Cell c = g.cell(i);
      throw TileSetError("cell (" + std::to_string(c.row) + ", " + std::to_string(c.col) + ") holds code " +
                         to_string(g.at_index(i)) + " which the tileset does not cover");
    }
  }
  const int px = tiles.tile_px();
  const int rows = g.height() * px;
  const int cols = g.width() * px;
  RenderedMap out{make_rgb(rows, cols), Mask::Zero(rows, cols), Mask::Zero(rows, cols), Mask::Zero(rows, cols), g,
                  full_report(g)};
  Rng rng(options.seed);
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      const TileAsset& asset = tiles.pick(g.at(r, c), options.random_variants ? &rng : nullptr);
      for (int ch = 0; ch < 3; ++ch) out.rgb.channels[ch].block(r * px, c * px, px, px) = asset.rgb.channels[ch];
      out.road.block(r * px, c * px, px, px) = asset.road;
      out.red.block(r * px, c * px, px, px) = asset.red;
      out.yellow.block(r * px, c * px, px, px) = asset.yellow;
    }
  }
  return out;
}

Channel label_map(const RenderedMap& map) {
  Channel labels = map.road;  // 1 = road
  labels = (map.yellow.array() != 0).select(Channel::Constant(labels.rows(), labels.cols(), 3), labels);
  labels = (map.red.array() != 0).select(Channel::Constant(labels.rows(), labels.cols(), 2), labels);
  return labels;
}

void write_rendered(const RenderedMap& map, const fs::path& directory) {
  fs::create_directories(directory);
  write_png(directory / "map_rgb.png", map.rgb);
  write_png(directory / "mask_road.png", to_channel(map.road));
  write_png(directory / "mask_red.png", to_channel(map.red));
  write_png(directory / "mask_yellow.png", to_channel(map.yellow));
  write_png(directory / "labels.png", label_map(map));
  std::ofstream meta(directory / "map.json");
  if (!meta) throw std::runtime_error("cannot write " + (directory / "map.json").string());
  meta << nlohmann::json{{"grid", grid_to_json(map.grid)}, {"metrics", to_json(map.report)}}.dump(2) << '\n';
}

}  // namespace roadgen
