#include "hypertile/mapcore.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hypertile {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("mapcore: " + msg);
}

}  // namespace

DartId CombMap::new_dart() {
  darts_.push_back({});
  return static_cast<DartId>(darts_.size() - 1);
}

VertexId CombMap::new_vertex(int layer) {
  vertices_.push_back({});
  vertices_.back().layer = layer;
  return static_cast<VertexId>(vertices_.size() - 1);
}

FaceId CombMap::new_face(int size) {
  faces_.push_back({});
  faces_.back().size = size;
  return static_cast<FaceId>(faces_.size() - 1);
}

CombMap CombMap::single_face(int k) {
  if (k < 3) fail("face size below 3");
  CombMap m;
  for (int i = 0; i < k; ++i) m.new_vertex(0);
  FaceId f = m.new_face(k);
  // inner dart of edge (i, i+1) is 2i, its outer twin 2i+1
  for (int i = 0; i < k; ++i) {
    m.new_dart();
    m.new_dart();
  }
  for (int i = 0; i < k; ++i) {
    int nx = (i + 1) % k;
    int pv = (i + k - 1) % k;
    Dart& inner = m.darts_[static_cast<size_t>(2 * i)];
    inner.opp = 2 * i + 1;
    inner.next = 2 * nx;
    inner.prev = 2 * pv;
    inner.origin = i;
    inner.face = f;
    Dart& outer = m.darts_[static_cast<size_t>(2 * i + 1)];
    outer.opp = 2 * i;
    outer.next = 2 * pv + 1;
    outer.prev = 2 * nx + 1;
    outer.origin = nx;
    outer.face = kOuterFace;
    m.vertices_[static_cast<size_t>(i)].any_dart = 2 * i;
    m.vertices_[static_cast<size_t>(i)].fan_count = 1;
    m.vertices_[static_cast<size_t>(nx)].outer_dart = 2 * i + 1;
  }
  m.faces_[static_cast<size_t>(f)].any_dart = 0;
  m.outer_count_ = k;
  return m;
}

int CombMap::vertex_degree(VertexId v) const {
  DartId start = vertex(v).any_dart;
  int n = 0;
  DartId d = start;
  do {
    ++n;
    d = rotate_ccw(d);
  } while (d != start);
  return n;
}

bool CombMap::adjacent(VertexId a, VertexId b) const {
  DartId start = vertex(a).any_dart;
  DartId d = start;
  do {
    if (target(d) == b) return true;
    d = rotate_ccw(d);
  } while (d != start);
  return false;
}

std::vector<FaceId> CombMap::fan_faces(VertexId v) const {
  std::vector<FaceId> out;
  DartId start = vertex(v).outer_dart;
  if (start == kNoDart) start = vertex(v).any_dart;
  DartId d = start;
  do {
    if (dart(d).face != kOuterFace) out.push_back(dart(d).face);
    d = rotate_ccw(d);
  } while (d != start);
  return out;
}

std::vector<int> CombMap::fan_sizes(VertexId v) const {
  std::vector<int> out;
  for (FaceId f : fan_faces(v)) out.push_back(face(f).size);
  return out;
}

AttachRecord CombMap::attach_face(DartId run_first, int run_len, int face_size,
                                  int new_vertex_layer) {
  assert(run_len >= 1);
  assert(face_size >= run_len + 1);

  AttachRecord rec;
  rec.run_first = run_first;
  rec.run_len = run_len;
  rec.face_size = face_size;

  DartId run_last = run_first;
  for (int i = 0; i < run_len; ++i) {
    assert(is_outer(run_last));
    if (i + 1 < run_len) run_last = dart(run_last).next;
  }
  DartId after = dart(run_last).next;  // N
  if (after == run_first) fail("attach would consume the whole boundary");
  DartId before = dart(run_first).prev;  // P
  rec.old_next_of_run_last = after;
  rec.old_prev_of_run_first = before;

  VertexId a = dart(run_first).origin;
  VertexId b = dart(after).origin;  // target of run_last

  FaceId f = new_face(face_size);
  rec.face = f;
  int fresh = face_size - run_len;
  rec.first_new_dart = dart_count();
  rec.first_new_vertex = vertex_count();

  // Fresh chain g_1..g_fresh runs from b back to a inside the new face.
  VertexId prev_v = b;
  std::vector<DartId> g(static_cast<size_t>(fresh));
  std::vector<DartId> gh(static_cast<size_t>(fresh));
  for (int i = 0; i < fresh; ++i) {
    VertexId next_v = (i + 1 < fresh) ? new_vertex(new_vertex_layer) : a;
    DartId gi = new_dart();
    DartId gho = new_dart();
    g[static_cast<size_t>(i)] = gi;
    gh[static_cast<size_t>(i)] = gho;
    Dart& dg = darts_[static_cast<size_t>(gi)];
    dg.opp = gho;
    dg.origin = prev_v;
    dg.face = f;
    Dart& dh = darts_[static_cast<size_t>(gho)];
    dh.opp = gi;
    dh.origin = next_v;
    dh.face = kOuterFace;
    if (i + 1 < fresh) {
      VertexData& nv = vertices_[static_cast<size_t>(next_v)];
      nv.any_dart = gho;
      nv.outer_dart = gho;
      nv.fan_count = 1;
    }
    prev_v = next_v;
  }

  // Face cycle: run darts keep their internal chain; close it through g.
  for (int i = 0; i < fresh; ++i) {
    DartId gi = g[static_cast<size_t>(i)];
    darts_[static_cast<size_t>(gi)].next =
        (i + 1 < fresh) ? g[static_cast<size_t>(i + 1)] : run_first;
    darts_[static_cast<size_t>(gi)].prev =
        (i > 0) ? g[static_cast<size_t>(i - 1)] : run_last;
  }
  darts_[static_cast<size_t>(run_last)].next = g[0];
  darts_[static_cast<size_t>(run_first)].prev = g[static_cast<size_t>(fresh - 1)];

  // Outer cycle: before -> gh_fresh -> ... -> gh_1 -> after.
  darts_[static_cast<size_t>(before)].next = gh[static_cast<size_t>(fresh - 1)];
  darts_[static_cast<size_t>(gh[static_cast<size_t>(fresh - 1)])].prev = before;
  for (int i = fresh - 1; i > 0; --i) {
    darts_[static_cast<size_t>(gh[static_cast<size_t>(i)])].next =
        gh[static_cast<size_t>(i - 1)];
    darts_[static_cast<size_t>(gh[static_cast<size_t>(i - 1)])].prev =
        gh[static_cast<size_t>(i)];
  }
  darts_[static_cast<size_t>(gh[0])].next = after;
  darts_[static_cast<size_t>(after)].prev = gh[0];

  // Run darts now belong to the new face; interior run vertices close.
  DartId e = run_first;
  for (int i = 0; i < run_len; ++i) {
    darts_[static_cast<size_t>(e)].face = f;
    ++vertices_[static_cast<size_t>(dart(e).origin)].fan_count;
    if (i > 0)
      vertices_[static_cast<size_t>(dart(e).origin)].outer_dart = kNoDart;
    e = dart(e).next;
  }
  ++vertices_[static_cast<size_t>(b)].fan_count;
  vertices_[static_cast<size_t>(a)].outer_dart = gh[static_cast<size_t>(fresh - 1)];

  faces_[static_cast<size_t>(f)].any_dart = run_first;
  outer_count_ += fresh - run_len;
  return rec;
}

void CombMap::undo_attach(const AttachRecord& rec) {
  int fresh = rec.face_size - rec.run_len;
  assert(rec.face == face_count() - 1);
  assert(rec.first_new_dart == dart_count() - 2 * fresh);

  // Recover the run (its internal next-chain was left untouched).
  DartId run_last = rec.run_first;
  for (int i = 1; i < rec.run_len; ++i) run_last = dart(run_last).next;

  DartId e = rec.run_first;
  for (int i = 0; i < rec.run_len; ++i) {
    DartId nx = dart(e).next;
    darts_[static_cast<size_t>(e)].face = kOuterFace;
    --vertices_[static_cast<size_t>(dart(e).origin)].fan_count;
    vertices_[static_cast<size_t>(dart(e).origin)].outer_dart = e;
    e = nx;
  }
  --vertices_[static_cast<size_t>(dart(rec.old_next_of_run_last).origin)].fan_count;
  darts_[static_cast<size_t>(run_last)].next = rec.old_next_of_run_last;
  darts_[static_cast<size_t>(rec.old_next_of_run_last)].prev = run_last;
  darts_[static_cast<size_t>(rec.run_first)].prev = rec.old_prev_of_run_first;
  darts_[static_cast<size_t>(rec.old_prev_of_run_first)].next = rec.run_first;

  darts_.resize(darts_.size() - 2 * static_cast<size_t>(fresh));
  vertices_.resize(vertices_.size() - static_cast<size_t>(fresh - 1));
  faces_.pop_back();
  outer_count_ -= fresh - rec.run_len;
}

std::vector<VertexId> CombMap::boundary_cycle() const {
  std::vector<VertexId> out;
  DartId start = kNoDart;
  for (DartId d = 0; d < dart_count(); ++d)
    if (is_outer(d)) {
      start = d;
      break;
    }
  if (start == kNoDart) return out;
  DartId d = start;
  do {
    out.push_back(dart(d).origin);
    d = dart(d).next;
  } while (d != start && static_cast<int>(out.size()) <= dart_count());
  return out;
}

void CombMap::structure_violations(std::vector<std::string>& out) const {
  auto add = [&](const std::string& s) { out.push_back(s); };

  for (DartId d = 0; d < dart_count(); ++d) {
    const Dart& dd = dart(d);
    if (dd.opp < 0 || dd.opp >= dart_count() || dd.opp == d ||
        dart(dd.opp).opp != d) {
      add("involution broken at dart " + std::to_string(d));
      return;
    }
    if (dd.next < 0 || dd.next >= dart_count() || dart(dd.next).prev != d) {
      add("next/prev mismatch at dart " + std::to_string(d));
      return;
    }
    if (dd.origin < 0 || dd.origin >= vertex_count()) {
      add("bad origin at dart " + std::to_string(d));
      return;
    }
    if (dd.face != kOuterFace && (dd.face < 0 || dd.face >= face_count())) {
      add("bad face at dart " + std::to_string(d));
      return;
    }
    if (dart(dd.next).face != dd.face) {
      add("face cycle leaves face at dart " + std::to_string(d));
      return;
    }
  }

  // Face cycles have the declared length.
  std::vector<int> seen_len(static_cast<size_t>(face_count()), 0);
  std::vector<char> visited(static_cast<size_t>(dart_count()), 0);
  for (DartId d = 0; d < dart_count(); ++d) {
    if (visited[static_cast<size_t>(d)] || is_outer(d)) continue;
    FaceId f = dart(d).face;
    DartId x = d;
    int len = 0;
    do {
      visited[static_cast<size_t>(x)] = 1;
      ++len;
      x = dart(x).next;
    } while (x != d && len <= dart_count());
    if (seen_len[static_cast<size_t>(f)] != 0)
      add("face " + std::to_string(f) + " has several cycles");
    seen_len[static_cast<size_t>(f)] = len;
  }
  for (FaceId f = 0; f < face_count(); ++f) {
    if (face(f).size < 3) add("face " + std::to_string(f) + " smaller than 3");
    if (seen_len[static_cast<size_t>(f)] != face(f).size)
      add("face " + std::to_string(f) + " cycle length " +
          std::to_string(seen_len[static_cast<size_t>(f)]) + " != size " +
          std::to_string(face(f).size));
  }

  // Single simple outer cycle.
  int outer_darts = 0;
  DartId some_outer = kNoDart;
  for (DartId d = 0; d < dart_count(); ++d)
    if (is_outer(d)) {
      ++outer_darts;
      some_outer = d;
    }
  if (outer_darts == 0) {
    add("no outer face");
    return;
  }
  std::set<VertexId> on_boundary;
  {
    DartId d = some_outer;
    int len = 0;
    bool dup = false;
    do {
      if (!on_boundary.insert(dart(d).origin).second) dup = true;
      ++len;
      d = dart(d).next;
    } while (d != some_outer && len <= dart_count());
    if (len != outer_darts) add("outer face is not a single cycle");
    if (dup) add("boundary visits a vertex twice");
  }
  for (VertexId v = 0; v < vertex_count(); ++v) {
    bool flagged = vertex(v).outer_dart != kNoDart;
    bool actual = on_boundary.count(v) > 0;
    if (flagged != actual)
      add("boundary flag wrong at vertex " + std::to_string(v));
    if (flagged) {
      DartId od = vertex(v).outer_dart;
      if (od < 0 || od >= dart_count() || !is_outer(od) || dart(od).origin != v)
        add("outer dart wrong at vertex " + std::to_string(v));
    }
  }

  // Disk condition.
  int euler = vertex_count() - edge_count() + inner_face_count();
  if (euler != 1)
    add("Euler count V-E+F = " + std::to_string(euler) + ", expected 1");
}

// --- fans, face cycles, frontier --------------------------------------------

CombMap new_fan(const std::vector<int>& sizes) {
  if (sizes.size() < 3) fail("fan needs degree >= 3");
  CombMap m = CombMap::single_face(sizes[0]);
  // center is vertex 0; successive faces share an edge at the center
  const int d = static_cast<int>(sizes.size());
  DartId glue = 1;  // outer twin of inner dart 0->1
  for (int i = 1; i < d; ++i) {
    if (i + 1 < d) {
      AttachRecord rec = m.attach_face(glue, 1, sizes[static_cast<size_t>(i)], 1);
      glue = rec.first_new_dart + 1;  // outer twin of the fresh edge at center
    } else {
      // close the fan: glue along the fresh center edge and the first face's
      // remaining center edge
      m.attach_face(glue, 2, sizes[static_cast<size_t>(i)], 1);
    }
  }
  for (VertexId v = 1; v < m.vertex_count(); ++v) m.set_layer(v, 1);
  m.set_layer(0, 0);
  return m;
}

CombMap new_fan(const VertexTuple& t) {
  if (!t.all_finite()) fail("fans with apeirogons are not materialized");
  std::vector<int> sizes;
  for (const auto& e : t.entries()) sizes.push_back(e.sides());
  CombMap m = new_fan(sizes);
  m.set_tuple(t);
  return m;
}

VertexTuple vertex_type(const CombMap& m, VertexId v) {
  if (m.is_boundary_vertex(v)) fail("vertex_type: vertex not interior");
  std::vector<PolygonSize> es;
  for (int s : m.fan_sizes(v)) es.push_back(PolygonSize::finite(s));
  return VertexTuple(std::move(es));
}

CyclicType vertex_type_cyclic(const CombMap& m, VertexId v) {
  if (m.is_boundary_vertex(v)) fail("vertex_type: vertex not interior");
  return CyclicType(m.fan_sizes(v));
}

bool face_cycle_complete(const CombMap& m, FaceId f) {
  DartId d0 = m.face(f).any_dart;
  DartId d = d0;
  do {
    if (m.is_boundary_vertex(m.dart(d).origin)) return false;
    d = m.dart(d).next;
  } while (d != d0);
  return true;
}

std::vector<FaceId> face_cycle(const CombMap& m, FaceId f) {
  if (!face_cycle_complete(m, f))
    throw std::invalid_argument("INCOMPLETE: face has boundary vertices");
  std::vector<FaceId> out;
  DartId d0 = m.face(f).any_dart;
  DartId d = d0;
  do {
    DartId dn = m.dart(d).next;  // dart of f out of target(d)
    // rotating ccw from dn: first comes the face across d, then the
    // between-faces, and last the face across dn (emitted by the next turn)
    DartId x = m.rotate_ccw(dn);
    out.push_back(m.dart(x).face);
    x = m.rotate_ccw(x);
    while (x != dn && m.rotate_ccw(x) != dn) {
      out.push_back(m.dart(x).face);
      x = m.rotate_ccw(x);
    }
    d = dn;
  } while (d != d0);
  return out;
}

Frontier frontier(const CombMap& m) {
  Frontier fr;
  for (VertexId v : m.boundary_cycle()) {
    int deg = 0;
    DartId start = m.vertex(v).outer_dart;
    DartId d = start;
    do {
      if (!m.is_boundary_vertex(m.target(d))) ++deg;
      d = m.rotate_ccw(d);
    } while (d != start);
    fr.vertices.push_back(v);
    fr.in_degrees.push_back(deg);
  }
  return fr;
}

int in_degree(const Frontier& fr, VertexId v) {
  for (size_t i = 0; i < fr.vertices.size(); ++i)
    if (fr.vertices[i] == v) return fr.in_degrees[i];
  throw std::invalid_argument("in_degree: vertex not on frontier");
}

// --- verification ------------------------------------------------------------

TypeConstraint TypeConstraint::multiset(VertexTuple t) {
  TypeConstraint c;
  c.tuple = std::move(t);
  return c;
}

TypeConstraint TypeConstraint::cyclic(CyclicType w) {
  TypeConstraint c;
  c.tuple = w.multiset();
  c.cyclic_word = std::move(w);
  return c;
}

namespace {

bool is_cyclic_factor(const std::vector<int>& arc, const std::vector<int>& word) {
  const size_t n = word.size();
  if (arc.size() > n) return false;
  if (arc.empty()) return true;
  auto try_dir = [&](const std::vector<int>& w) {
    for (size_t s = 0; s < n; ++s) {
      bool ok = true;
      for (size_t i = 0; i < arc.size(); ++i) {
        if (w[(s + i) % n] != arc[i]) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    return false;
  };
  if (try_dir(word)) return true;
  std::vector<int> rev(word.rbegin(), word.rend());
  return try_dir(rev);
}

}  // namespace

bool TypeConstraint::arc_extendable(const std::vector<int>& arc) const {
  if (is_cyclic()) {
    if (static_cast<int>(arc.size()) >= cyclic_word->degree()) return false;
    return is_cyclic_factor(arc, cyclic_word->word());
  }
  if (static_cast<int>(arc.size()) >= tuple.degree()) return false;
  // sub-multiset test
  std::vector<int> want;
  for (const auto& e : tuple.entries()) want.push_back(e.sides());
  for (int s : arc) {
    auto it = std::find(want.begin(), want.end(), s);
    if (it == want.end()) return false;
    want.erase(it);
  }
  return true;
}

bool TypeConstraint::arc_extendable_with(const std::vector<int>& arc, int s) const {
  std::vector<int> bigger;
  bigger.reserve(arc.size() + 1);
  bigger.push_back(s);
  bigger.insert(bigger.end(), arc.begin(), arc.end());
  // the added face may close the fan outright
  if (arc_extendable(bigger) || fan_matches(bigger)) return true;
  if (!is_cyclic()) return false;  // unordered: one test suffices
  bigger.erase(bigger.begin());
  bigger.push_back(s);
  return arc_extendable(bigger) || fan_matches(bigger);
}

bool TypeConstraint::fan_matches(const std::vector<int>& word) const {
  if (is_cyclic()) return CyclicType(word) == *cyclic_word;
  if (static_cast<int>(word.size()) != tuple.degree()) return false;
  std::vector<int> a = word;
  std::sort(a.begin(), a.end());
  std::vector<int> b;
  for (const auto& e : tuple.entries()) b.push_back(e.sides());
  return a == b;
}

VerifyReport verify(const CombMap& m, const TypeConstraint& constraint) {
  VerifyReport report;
  std::vector<std::string> structural;
  m.structure_violations(structural);
  for (auto& s : structural) report.violations.push_back({"STRUCTURE", s});

  if (structural.empty()) {
    for (VertexId v = 0; v < m.vertex_count(); ++v) {
      std::vector<int> fan = m.fan_sizes(v);
      if (m.is_boundary_vertex(v)) {
        if (!constraint.arc_extendable(fan))
          report.violations.push_back(
              {"BOUNDARY_EXTEND",
               "vertex " + std::to_string(v) + " partial fan not extendable"});
      } else {
        if (!constraint.fan_matches(fan))
          report.violations.push_back(
              {"VERTEX_TYPE",
               "vertex " + std::to_string(v) + " fan does not match type"});
      }
    }
  }
  report.pass = report.violations.empty();
  return report;
}

VerifyReport verify(const CombMap& m) {
  if (m.cyclic()) return verify(m, TypeConstraint::cyclic(*m.cyclic()));
  if (m.tuple()) return verify(m, TypeConstraint::multiset(*m.tuple()));
  VerifyReport report;
  std::vector<std::string> structural;
  m.structure_violations(structural);
  for (auto& s : structural) report.violations.push_back({"STRUCTURE", s});
  report.pass = report.violations.empty();
  return report;
}

// --- assembly from face lists -------------------------------------------------

CombMap CombMap::from_faces(const std::vector<std::vector<VertexId>>& faces) {
  CombMap m;
  std::map<VertexId, VertexId> dense;
  for (const auto& fvs : faces) {
    if (fvs.size() < 3) fail("from_faces: face smaller than 3");
    for (VertexId v : fvs)
      if (!dense.count(v)) {
        VertexId id = m.new_vertex(0);
        dense[v] = id;
      }
  }

  std::map<std::pair<VertexId, VertexId>, DartId> by_edge;
  for (const auto& fvs : faces) {
    const int k = static_cast<int>(fvs.size());
    FaceId f = m.new_face(k);
    DartId first = m.dart_count();
    for (int i = 0; i < k; ++i) {
      VertexId a = dense[fvs[static_cast<size_t>(i)]];
      VertexId b = dense[fvs[static_cast<size_t>((i + 1) % k)]];
      if (a == b) fail("from_faces: degenerate edge");
      DartId d = m.new_dart();
      Dart& dd = m.darts_[static_cast<size_t>(d)];
      dd.origin = a;
      dd.face = f;
      if (by_edge.count({a, b}))
        fail("from_faces: edge traversed twice in the same direction");
      by_edge[{a, b}] = d;
      m.vertices_[static_cast<size_t>(a)].any_dart = d;
    }
    for (int i = 0; i < k; ++i) {
      m.darts_[static_cast<size_t>(first + i)].next = first + (i + 1) % k;
      m.darts_[static_cast<size_t>(first + i)].prev = first + (i + k - 1) % k;
    }
    m.faces_[static_cast<size_t>(f)].any_dart = first;
  }

  // Match opposites; unmatched edges get outer twins.
  int interior_darts = m.dart_count();
  std::vector<DartId> unmatched;
  for (DartId d = 0; d < interior_darts; ++d) {
    if (m.darts_[static_cast<size_t>(d)].opp != kNoDart) continue;
    VertexId a = m.dart(d).origin;
    VertexId b = m.dart(m.dart(d).next).origin;
    auto it = by_edge.find({b, a});
    if (it != by_edge.end() && it->second != d) {
      DartId o = it->second;
      if (m.darts_[static_cast<size_t>(o)].opp != kNoDart)
        fail("from_faces: edge shared by more than two faces");
      m.darts_[static_cast<size_t>(d)].opp = o;
      m.darts_[static_cast<size_t>(o)].opp = d;
    } else {
      unmatched.push_back(d);
    }
  }
  for (DartId d : unmatched) {
    VertexId a = m.dart(d).origin;
    VertexId b = m.dart(m.dart(d).next).origin;
    DartId t = m.new_dart();
    Dart& dt = m.darts_[static_cast<size_t>(t)];
    dt.opp = d;
    dt.origin = b;
    dt.face = kOuterFace;
    m.darts_[static_cast<size_t>(d)].opp = t;
    (void)a;
  }
  // Outer next-links: rotate around the head vertex of each unmatched dart
  // until the next gap.
  for (DartId d : unmatched) {
    DartId t = m.dart(d).opp;
    DartId x = m.dart(d).prev;
    while (!m.is_outer(m.dart(x).opp)) x = m.dart(m.dart(x).opp).prev;
    DartId tn = m.dart(x).opp;
    m.darts_[static_cast<size_t>(t)].next = tn;
    m.darts_[static_cast<size_t>(tn)].prev = t;
  }
  for (DartId d : unmatched) {
    VertexId head = m.dart(m.dart(d).opp).origin;
    VertexData& vd = m.vertices_[static_cast<size_t>(head)];
    if (vd.outer_dart != kNoDart)
      fail("from_faces: boundary pinched at a vertex");
    vd.outer_dart = m.dart(d).opp;
  }

  m.outer_count_ = static_cast<int>(unmatched.size());
  for (DartId d = 0; d < m.dart_count(); ++d)
    if (!m.is_outer(d)) ++m.vertices_[static_cast<size_t>(m.dart(d).origin)].fan_count;

  std::vector<std::string> bad_structure;
  m.structure_violations(bad_structure);
  if (!bad_structure.empty())
    fail("from_faces: " + bad_structure.front());
  return m;
}

// --- canonical serialization ---------------------------------------------------

CombMap canonicalize(const CombMap& m) {
  const int nd = m.dart_count();
  std::vector<DartId> order;
  std::vector<DartId> newid(static_cast<size_t>(nd), kNoDart);
  std::deque<DartId> queue;
  queue.push_back(0);
  newid[0] = 0;
  order.push_back(0);
  while (!queue.empty()) {
    DartId d = queue.front();
    queue.pop_front();
    for (DartId n : {m.dart(d).opp, m.dart(d).next}) {
      if (newid[static_cast<size_t>(n)] == kNoDart) {
        newid[static_cast<size_t>(n)] = static_cast<DartId>(order.size());
        order.push_back(n);
        queue.push_back(n);
      }
    }
  }
  if (static_cast<int>(order.size()) != nd)
    fail("canonicalize: dart graph not connected");

  std::vector<VertexId> vmap(static_cast<size_t>(m.vertex_count()), -1);
  std::vector<FaceId> fmap(static_cast<size_t>(m.face_count()), -1);
  CombMap out;
  for (DartId nd_id = 0; nd_id < nd; ++nd_id) {
    const Dart& src = m.dart(order[static_cast<size_t>(nd_id)]);
    if (vmap[static_cast<size_t>(src.origin)] == -1) {
      VertexId v = out.new_vertex(m.vertex(src.origin).layer);
      vmap[static_cast<size_t>(src.origin)] = v;
    }
    if (src.face != kOuterFace && fmap[static_cast<size_t>(src.face)] == -1)
      fmap[static_cast<size_t>(src.face)] = out.new_face(m.face(src.face).size);
  }
  for (DartId i = 0; i < nd; ++i) out.new_dart();
  for (DartId i = 0; i < nd; ++i) {
    const Dart& src = m.dart(order[static_cast<size_t>(i)]);
    Dart& dst = out.darts_[static_cast<size_t>(i)];
    dst.opp = newid[static_cast<size_t>(src.opp)];
    dst.next = newid[static_cast<size_t>(src.next)];
    dst.prev = newid[static_cast<size_t>(src.prev)];
    dst.origin = vmap[static_cast<size_t>(src.origin)];
    dst.face = src.face == kOuterFace ? kOuterFace
                                      : fmap[static_cast<size_t>(src.face)];
  }
  for (DartId i = 0; i < nd; ++i) {
    const Dart& dd = out.dart(i);
    VertexData& vd = out.vertices_[static_cast<size_t>(dd.origin)];
    if (vd.any_dart == kNoDart) vd.any_dart = i;
    if (dd.face == kOuterFace) vd.outer_dart = i;
    if (dd.face != kOuterFace) {
      ++vd.fan_count;
      FaceData& fd = out.faces_[static_cast<size_t>(dd.face)];
      if (fd.any_dart == kNoDart) fd.any_dart = i;
    }
  }
  if (m.tuple()) out.set_tuple(*m.tuple());
  if (m.cyclic()) out.set_cyclic(*m.cyclic());
  out.outer_count_ = m.outer_count_;
  return out;
}

std::string serialize(const CombMap& m) {
  CombMap c = canonicalize(m);
  nlohmann::ordered_json j;
  j["tuple"] = nlohmann::ordered_json::array();
  if (c.tuple())
    for (const auto& e : c.tuple()->entries())
      j["tuple"].push_back(e.is_infinite() ? -1 : e.sides());
  if (c.cyclic()) j["cyclic"] = c.cyclic()->word();
  j["darts"] = nlohmann::ordered_json::array();
  for (DartId d = 0; d < c.dart_count(); ++d) {
    const Dart& dd = c.dart(d);
    j["darts"].push_back({{"opp", dd.opp},
                          {"next", dd.next},
                          {"v", dd.origin},
                          {"f", dd.face}});
  }
  j["faces"] = nlohmann::ordered_json::array();
  for (FaceId f = 0; f < c.face_count(); ++f)
    j["faces"].push_back({{"size", c.face(f).size}});
  j["vertices"] = nlohmann::ordered_json::array();
  for (VertexId v = 0; v < c.vertex_count(); ++v)
    j["vertices"].push_back({{"layer", c.vertex(v).layer},
                             {"boundary", c.is_boundary_vertex(v)}});
  return j.dump() + "\n";
}

CombMap deserialize(const std::string& bytes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const std::exception& e) {
    fail(std::string("MALFORMED: ") + e.what());
  }
  CombMap m;
  try {
    const auto& jverts = j.at("vertices");
    const auto& jfaces = j.at("faces");
    const auto& jdarts = j.at("darts");
    for (const auto& jv : jverts) m.new_vertex(jv.at("layer").get<int>());
    for (const auto& jf : jfaces) m.new_face(jf.at("size").get<int>());
    for (size_t i = 0; i < jdarts.size(); ++i) m.new_dart();
    for (size_t i = 0; i < jdarts.size(); ++i) {
      const auto& jd = jdarts[i];
      Dart& d = m.darts_[i];
      d.opp = jd.at("opp").get<DartId>();
      d.next = jd.at("next").get<DartId>();
      d.origin = jd.at("v").get<VertexId>();
      d.face = jd.at("f").get<FaceId>();
      if (d.opp < 0 || d.opp >= m.dart_count() || d.next < 0 ||
          d.next >= m.dart_count() || d.origin < 0 ||
          d.origin >= m.vertex_count() ||
          (d.face != kOuterFace && (d.face < 0 || d.face >= m.face_count())))
        fail("MALFORMED: dart index out of range");
    }
    if (j.contains("tuple") && !j["tuple"].empty()) {
      std::vector<PolygonSize> es;
      for (const auto& e : j["tuple"])
        es.push_back(e.get<int>() == -1 ? PolygonSize::infinite()
                                        : PolygonSize::finite(e.get<int>()));
      m.set_tuple(VertexTuple(std::move(es)));
    }
    if (j.contains("cyclic"))
      m.set_cyclic(CyclicType(j["cyclic"].get<std::vector<int>>()));
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("MALFORMED: ") + e.what());
  }
  // prev is the inverse of next
  std::vector<char> has_prev(static_cast<size_t>(m.dart_count()), 0);
  for (DartId d = 0; d < m.dart_count(); ++d) {
    DartId n = m.dart(d).next;
    if (has_prev[static_cast<size_t>(n)]) fail("MALFORMED: next not a permutation");
    has_prev[static_cast<size_t>(n)] = 1;
    m.darts_[static_cast<size_t>(n)].prev = d;
  }
  for (DartId d = 0; d < m.dart_count(); ++d) {
    const Dart& dd = m.dart(d);
    VertexData& vd = m.vertices_[static_cast<size_t>(dd.origin)];
    if (vd.any_dart == kNoDart) vd.any_dart = d;
    if (dd.face == kOuterFace) {
      if (vd.outer_dart != kNoDart) fail("MALFORMED: pinched boundary");
      vd.outer_dart = d;
    }
    if (dd.face != kOuterFace) {
      ++vd.fan_count;
      FaceData& fd = m.faces_[static_cast<size_t>(dd.face)];
      if (fd.any_dart == kNoDart) fd.any_dart = d;
    }
  }
  for (DartId d = 0; d < m.dart_count(); ++d)
    if (m.is_outer(d)) ++m.outer_count_;
  std::vector<std::string> bad;
  m.structure_violations(bad);
  if (!bad.empty()) fail("MALFORMED: " + bad.front());
  return m;
}

}  // namespace hypertile
