#include <doctest.h>

#include <algorithm>
#include <random>

#include "hypertile/tuples.hpp"

using namespace hypertile;

TEST_CASE("parse expands multiplicative form and sorts") {
  VertexTuple t = parse_tuple("3,5,4,4,5");
  CHECK(t == VertexTuple({3, 4, 4, 5, 5}));

  VertexTuple u = parse_tuple("5^2,3^2");
  CHECK(u == VertexTuple({3, 3, 5, 5}));

  VertexTuple w = parse_tuple("3,inf,inf");
  CHECK(w.degree() == 3);
  CHECK(w.infinite_count() == 2);
  CHECK(w.entries()[0] == PolygonSize::finite(3));
  CHECK(w.entries()[2].is_infinite());
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_tuple(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_tuple("3,4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tuple("2,4,4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tuple("3,x,4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tuple("3,4^0,5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_tuple("3,,5"), std::invalid_argument);
}

TEST_CASE("format round-trips through parse") {
  for (const char* text : {"3,4,4,5,5", "3^2,5^2", "7^3", "3,inf^2", "4^4"}) {
    VertexTuple t = parse_tuple(text);
    CHECK(parse_tuple(t.str()) == t);
  }
}

TEST_CASE("angle sums are exact rationals") {
  CHECK(angle_sum(VertexTuple({4, 4, 4, 4})).value == Rational(2));
  CHECK(angle_sum(VertexTuple({3, 7, 42})).value == Rational(2));
  CHECK(angle_sum(VertexTuple({3, 5, 10, 12})).value == Rational(77, 30));
  CHECK(angle_sum(parse_tuple("inf,inf,inf")).value == Rational(3));
}

TEST_CASE("angle sum is permutation invariant") {
  std::mt19937 rng(7);
  std::vector<int> sides{3, 5, 10, 12, 7};
  const Rational expected = angle_sum(VertexTuple({3, 5, 7, 10, 12})).value;
  for (int i = 0; i < 20; ++i) {
    std::shuffle(sides.begin(), sides.end(), rng);
    VertexTuple t({sides[0], sides[1], sides[2], sides[3], sides[4]});
    CHECK(angle_sum(t).value == expected);
  }
}

TEST_CASE("geometry class splits exactly at 2") {
  CHECK(geometry_class(VertexTuple({3, 3, 3, 3, 3})) == GeometryClass::Spherical);
  CHECK(geometry_class(VertexTuple({4, 4, 4, 4})) == GeometryClass::Euclidean);
  CHECK(geometry_class(VertexTuple({3, 5, 10, 12})) == GeometryClass::Hyperbolic);
  CHECK(geometry_class(VertexTuple({3, 7, 42})) == GeometryClass::Euclidean);
  CHECK(geometry_class(VertexTuple({6, 6, 6})) == GeometryClass::Euclidean);
}

TEST_CASE("cyclic types identify rotation and reflection") {
  CyclicType a({3, 5, 4, 4, 5});
  CyclicType b({4, 4, 5, 3, 5});   // rotation
  CyclicType c({5, 4, 4, 5, 3});   // rotation of reversal
  CHECK(a == b);
  CHECK(a == c);
  CHECK_FALSE(a == CyclicType({3, 4, 5, 4, 5}));
}
