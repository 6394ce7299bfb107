#include "roadgen/tiles.hpp"

namespace roadgen {

const char* to_string(Direction d) {
  switch (d) {
    case Direction::North: return "N";
    case Direction::East: return "E";
    case Direction::South: return "S";
    case Direction::West: return "W";
  }
  return "?";
}

const char* to_string(TileClass c) {
  switch (c) {
    case TileClass::Empty: return "empty";
    case TileClass::DeadEndTile: return "dead-end";
    case TileClass::Straight: return "straight";
    case TileClass::Turn: return "turn";
    case TileClass::Crossing3: return "crossing3";
    case TileClass::Crossing4: return "crossing4";
  }
  return "?";
}

std::string to_string(TileCode t) { return std::to_string(t.value()); }

}  // namespace roadgen
