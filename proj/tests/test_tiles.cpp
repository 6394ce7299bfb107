#include <doctest.h>

#include "roadgen/tiles.hpp"

using namespace roadgen;

TEST_CASE("encode follows the NESW bit weights") {
  CHECK(encode(1, 0, 1, 0).value() == 10);
  CHECK(encode(0, 0, 0, 0).value() == 0);
  CHECK(encode(1, 1, 1, 1).value() == 15);
  CHECK(encode(0, 0, 0, 1).value() == 1);
}

TEST_CASE("tile codes reject values outside 0..15") {
  CHECK_THROWS_AS(TileCode(16), std::out_of_range);
  CHECK_THROWS_AS(TileCode(-1), std::out_of_range);
}

TEST_CASE("degree") {
  CHECK(degree(TileCode(10)) == 2);
  CHECK(degree(TileCode(15)) == 4);
  CHECK(degree(TileCode(0)) == 0);
}

TEST_CASE("rotate_cw") {
  CHECK(rotate_cw(TileCode(10)) == TileCode(5));
  CHECK(rotate_cw(TileCode(15)) == TileCode(15));
  CHECK(rotate_cw(TileCode(8)) == TileCode(4));
  CHECK(rotate_cw(TileCode(1)) == TileCode(8));

  for (int code = 0; code < 16; ++code) {
    const TileCode t(code);
    CHECK(rotate_cw(t, 4) == t);
    CHECK(degree(rotate_cw(t)) == degree(t));
    for (Direction d : kDirections) CHECK(rotate_cw(t).has(rotate_cw(d)) == t.has(d));
  }
}

TEST_CASE("classify") {
  CHECK(classify(TileCode(0)) == TileClass::Empty);
  CHECK(classify(TileCode(4)) == TileClass::DeadEndTile);
  CHECK(classify(TileCode(5)) == TileClass::Straight);
  CHECK(classify(TileCode(10)) == TileClass::Straight);
  CHECK(classify(TileCode(6)) == TileClass::Turn);
  CHECK(classify(TileCode(14)) == TileClass::Crossing3);
  CHECK(classify(TileCode(15)) == TileClass::Crossing4);

  int turns = 0;
  for (int code = 0; code < 16; ++code) turns += classify(TileCode(code)) == TileClass::Turn;
  CHECK(turns == 4);
}

TEST_CASE("compatible") {
  CHECK(compatible(TileCode(10), TileCode(10), Direction::South));
  CHECK_FALSE(compatible(TileCode(10), TileCode(5), Direction::South));
  CHECK(compatible(TileCode(0), TileCode(0), Direction::East));
}

TEST_CASE("compatibility is symmetric under swapping sides") {
  for (Direction d : kDirections) {
    CHECK(opposite(opposite(d)) == d);
    for (int a = 0; a < 16; ++a) {
      for (int b = 0; b < 16; ++b) {
        CHECK(compatible(TileCode(a), TileCode(b), d) == compatible(TileCode(b), TileCode(a), opposite(d)));
      }
    }
  }
}
