#pragma once

// 4-bit road tile encoding. Bit 3 = North, bit 2 = East, bit 1 = South,
// bit 0 = West, so a tile reads as "NESW" when printed in binary.

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace roadgen {

enum class Direction : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

inline constexpr std::array<Direction, 4> kDirections = {
    Direction::North, Direction::East, Direction::South, Direction::West};

constexpr Direction opposite(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 2) % 4);
}

constexpr Direction rotate_cw(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 1) % 4);
}

/// Row/column step of a unit move in direction `d` (North is row - 1).
constexpr int row_offset(Direction d) {
  return d == Direction::North ? -1 : (d == Direction::South ? 1 : 0);
}
constexpr int col_offset(Direction d) {
  return d == Direction::West ? -1 : (d == Direction::East ? 1 : 0);
}

constexpr std::uint8_t direction_bit(Direction d) {
  return static_cast<std::uint8_t>(8u >> static_cast<unsigned>(d));
}

const char* to_string(Direction d);

enum class TileClass : std::uint8_t { Empty, DeadEndTile, Straight, Turn, Crossing3, Crossing4 };

const char* to_string(TileClass c);

/// Connectivity code of a single cell; 0 is an empty (background) cell.
class TileCode {
 public:
  constexpr TileCode() = default;
  constexpr explicit TileCode(int code) : code_(checked(code)) {}

  constexpr int value() const { return code_; }
  constexpr bool empty() const { return code_ == 0; }
  constexpr bool has(Direction d) const { return (code_ & direction_bit(d)) != 0; }

  constexpr TileCode with(Direction d, bool on) const {
    const int bit = direction_bit(d);
    return TileCode(on ? (code_ | bit) : (code_ & ~bit));
  }

  friend constexpr bool operator==(TileCode, TileCode) = default;
  friend constexpr auto operator<=>(TileCode, TileCode) = default;

 private:
  static constexpr std::uint8_t checked(int code) {
    if (code < 0 || code > 15) throw std::out_of_range("tile code out of range [0, 15]");
    return static_cast<std::uint8_t>(code);
  }

  std::uint8_t code_ = 0;
};

inline constexpr int kTileAlphabetSize = 16;

constexpr TileCode encode(bool north, bool east, bool south, bool west) {
  return TileCode((north ? 8 : 0) | (east ? 4 : 0) | (south ? 2 : 0) | (west ? 1 : 0));
}

constexpr int degree(TileCode t) { return std::popcount(static_cast<unsigned>(t.value())); }

/// Quarter turn clockwise: the West arm becomes the North arm, and so on.
constexpr TileCode rotate_cw(TileCode t) {
  const int c = t.value();
  return TileCode(((c & 1) << 3) | (c >> 1));
}

constexpr TileCode rotate_cw(TileCode t, int quarter_turns) {
  quarter_turns = ((quarter_turns % 4) + 4) % 4;
  for (int i = 0; i < quarter_turns; ++i) t = rotate_cw(t);
  return t;
}

constexpr bool is_straight(TileCode t) { return t.value() == 10 || t.value() == 5; }
constexpr bool is_crossing(TileCode t) { return degree(t) >= 3; }

constexpr TileClass classify(TileCode t) {
  switch (degree(t)) {
    case 0: return TileClass::Empty;
    case 1: return TileClass::DeadEndTile;
    case 2: return is_straight(t) ? TileClass::Straight : TileClass::Turn;
    case 3: return TileClass::Crossing3;
    default: return TileClass::Crossing4;
  }
}

/// True when `a` and `b` agree on their shared border, `b` lying in direction `d` of `a`.
constexpr bool compatible(TileCode a, TileCode b, Direction d) {
  return a.has(d) == b.has(opposite(d));
}

/// Both sides declare the shared border: the pair forms a road edge.
constexpr bool connected(TileCode a, TileCode b, Direction d) {
  return a.has(d) && b.has(opposite(d));
}

/// Number of differing connection bits.
constexpr int bit_distance(TileCode a, TileCode b) {
  return std::popcount(static_cast<unsigned>(a.value() ^ b.value()));
}

std::string to_string(TileCode t);

}  // namespace roadgen
