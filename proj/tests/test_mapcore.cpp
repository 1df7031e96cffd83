#include <doctest.h>

#include <algorithm>
#include <set>

#include "hypertile/mapcore.hpp"

using namespace hypertile;

namespace {

bool structurally_sound(const CombMap& m) {
  std::vector<std::string> bad;
  m.structure_violations(bad);
  return bad.empty();
}

}  // namespace

TEST_CASE("single polygon satisfies the disk invariants") {
  CombMap m = CombMap::single_face(7);
  CHECK(m.vertex_count() == 7);
  CHECK(m.edge_count() == 7);
  CHECK(m.face_count() == 1);
  CHECK(structurally_sound(m));
  CHECK(m.boundary_cycle().size() == 7);
}

TEST_CASE("fan construction places one interior vertex of the right type") {
  CombMap m = new_fan(VertexTuple({3, 4, 4, 5, 5}));
  CHECK(structurally_sound(m));
  CHECK(m.face_count() == 5);
  CHECK_FALSE(m.is_boundary_vertex(0));
  CHECK(vertex_type(m, 0) == VertexTuple({3, 4, 4, 5, 5}));
  for (VertexId v = 1; v < m.vertex_count(); ++v)
    CHECK(m.is_boundary_vertex(v));
  // every non-center vertex sits on the boundary walk exactly once
  CHECK(m.boundary_cycle().size() == static_cast<size_t>(m.vertex_count() - 1));
}

TEST_CASE("fan of [7,7,7] has the counted Euler data") {
  CombMap m = new_fan(VertexTuple({7, 7, 7}));
  CHECK(m.vertex_count() == 16);  // 1 + 3*(7-1) - 3
  CHECK(m.face_count() == 3);
  CHECK(m.edge_count() == 18);
  CHECK(m.vertex_count() - m.edge_count() + m.face_count() == 1);
  CHECK(vertex_type(m, 0) == VertexTuple({7, 7, 7}));
}

TEST_CASE("fan keeps the requested cyclic order up to direction") {
  std::vector<int> order{3, 5, 4, 4, 5};
  CombMap m = new_fan(order);
  CHECK(vertex_type_cyclic(m, 0) == CyclicType(order));
}

TEST_CASE("vertex_type rejects boundary vertices") {
  CombMap m = new_fan(VertexTuple({4, 4, 4, 4}));
  CHECK_THROWS_AS(vertex_type(m, 1), std::invalid_argument);
}

TEST_CASE("attach and undo restore the map exactly") {
  CombMap m = new_fan(VertexTuple({4, 4, 4, 4}));
  std::string before = serialize(m);
  DartId run = m.vertex(m.boundary_cycle().front()).outer_dart;
  AttachRecord rec = m.attach_face(run, 1, 5, 2);
  CHECK(structurally_sound(m));
  CHECK(m.face_count() == 5);
  m.undo_attach(rec);
  CHECK(serialize(m) == before);
}

TEST_CASE("frontier in-degrees: fresh rim of a fan") {
  CombMap m = new_fan(VertexTuple({7, 7, 7}));
  Frontier fr = frontier(m);
  // Rim vertices adjacent to the center have one edge into the interior,
  // all other rim vertices none.
  int ones = 0, zeros = 0;
  for (size_t i = 0; i < fr.vertices.size(); ++i) {
    int d = fr.in_degrees[i];
    CHECK((d == 0 || d == 1));
    if (d == 1) ++ones;
    if (d == 0) ++zeros;
  }
  CHECK(ones == 3);  // the three face-sharing rim corners
  CHECK(zeros == static_cast<int>(fr.vertices.size()) - 3);
  CHECK_THROWS_AS(in_degree(fr, 0), std::invalid_argument);
}

TEST_CASE("verify accepts a fan and reports mutations") {
  CombMap m = new_fan(VertexTuple({3, 4, 4, 5, 5}));
  VerifyReport ok = verify(m, TypeConstraint::multiset(VertexTuple({3, 4, 4, 5, 5})));
  CHECK(ok.pass);

  VerifyReport wrong =
      verify(m, TypeConstraint::multiset(VertexTuple({3, 4, 4, 5, 6})));
  CHECK_FALSE(wrong.pass);
  bool has_type = false;
  for (auto& v : wrong.violations) has_type |= v.kind == "VERTEX_TYPE";
  CHECK(has_type);
}

TEST_CASE("serialize round-trips and is byte stable") {
  CombMap m = new_fan(VertexTuple({3, 4, 4, 5, 5}));
  std::string s1 = serialize(m);
  CombMap back = deserialize(s1);
  std::string s2 = serialize(back);
  CHECK(s1 == s2);
  CHECK(s1.back() == '\n');
}

TEST_CASE("deserialize rejects truncated input") {
  CombMap m = new_fan(VertexTuple({4, 4, 4, 4}));
  std::string s = serialize(m);
  CHECK_THROWS_AS(deserialize(s.substr(0, s.size() / 2)), std::invalid_argument);
  CHECK_THROWS_AS(deserialize("{}"), std::invalid_argument);
}

TEST_CASE("from_faces reassembles a fan") {
  // three quads around vertex 0
  std::vector<std::vector<VertexId>> faces = {
      {0, 1, 2, 3}, {0, 3, 4, 5}, {0, 5, 6, 7}};
  CombMap m = CombMap::from_faces(faces);
  CHECK(structurally_sound(m));
  CHECK(m.face_count() == 3);
  CHECK(m.vertex_count() == 8);
  CHECK(m.is_boundary_vertex(0));  // fan not closed: 0 still on boundary
}

TEST_CASE("from_faces rejects inconsistent orientation") {
  std::vector<std::vector<VertexId>> faces = {{0, 1, 2}, {0, 1, 3}};
  CHECK_THROWS_AS(CombMap::from_faces(faces), std::invalid_argument);
}

TEST_CASE("cyclic factor extendability") {
  TypeConstraint c = TypeConstraint::cyclic(CyclicType({3, 5, 6, 5, 8, 5}));
  CHECK(c.arc_extendable({6, 5, 8}));
  CHECK(c.arc_extendable({8, 5, 6}));  // reversal
  CHECK(c.arc_extendable({5, 3, 5}));  // wraps around the cycle
  CHECK_FALSE(c.arc_extendable({3, 6}));
  CHECK_FALSE(c.arc_extendable({3, 5, 6, 5, 8, 5}));  // full word: no gap left
  CHECK(c.fan_matches({5, 8, 5, 6, 5, 3}));
  CHECK(c.fan_matches({5, 8, 5, 3, 5, 6}));   // rotation of the word
  CHECK_FALSE(c.fan_matches({3, 5, 5, 6, 8, 5}));
}
