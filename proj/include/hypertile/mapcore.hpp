#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypertile/tuples.hpp"

namespace hypertile {

using DartId = std::int32_t;
using VertexId = std::int32_t;
using FaceId = std::int32_t;

inline constexpr FaceId kOuterFace = -1;
inline constexpr DartId kNoDart = -1;

struct Dart {
  DartId opp = kNoDart;
  DartId next = kNoDart;  // next dart along the face cycle (outer face too)
  DartId prev = kNoDart;
  VertexId origin = -1;
  FaceId face = kOuterFace;
};

struct VertexData {
  int layer = 0;
  // The unique outgoing dart lying on the outer face, or kNoDart for
  // interior vertices.  The boundary of a patch is always a simple cycle,
  // so one dart suffices.
  DartId outer_dart = kNoDart;
  DartId any_dart = kNoDart;
  int fan_count = 0;  // incident faces (kept current through surgery)
};

struct FaceData {
  int size = 0;
  DartId any_dart = kNoDart;
};

// Undo record for one attach_face call; see CombMap::attach_face.
struct AttachRecord {
  DartId run_first = kNoDart;
  int run_len = 0;
  int face_size = 0;
  DartId old_next_of_run_last = kNoDart;  // dart beyond the run (N)
  DartId old_prev_of_run_first = kNoDart; // dart before the run (P)
  FaceId face = -1;
  DartId first_new_dart = kNoDart;
  VertexId first_new_vertex = -1;
};

// Dart-based combinatorial map of a disk patch with one distinguished outer
// face.  Interior faces are oriented counterclockwise; walking `next` along
// the outer face traverses the boundary clockwise around the patch.
class CombMap {
 public:
  CombMap() = default;

  // A single k-gon; vertices 0..k-1, all on the boundary.
  static CombMap single_face(int k);

  // Assemble a map from counterclockwise vertex lists, matching edges by
  // their endpoint pair.  Unmatched edges end up on the outer face.  Throws
  // std::invalid_argument when an edge occurs more than twice or with
  // inconsistent orientation.
  static CombMap from_faces(const std::vector<std::vector<VertexId>>& faces);

  int dart_count() const { return static_cast<int>(darts_.size()); }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int edge_count() const { return dart_count() / 2; }

  const Dart& dart(DartId d) const { return darts_[static_cast<size_t>(d)]; }
  const VertexData& vertex(VertexId v) const {
    return vertices_[static_cast<size_t>(v)];
  }
  const FaceData& face(FaceId f) const { return faces_[static_cast<size_t>(f)]; }

  VertexId target(DartId d) const { return dart(dart(d).opp).origin; }
  bool is_boundary_vertex(VertexId v) const {
    return vertex(v).outer_dart != kNoDart;
  }
  bool is_outer(DartId d) const { return dart(d).face == kOuterFace; }
  int boundary_length() const { return outer_count_; }

  // True when vertices a and b share an edge.
  bool adjacent(VertexId a, VertexId b) const;

  // Rotation around origin(d): the next dart out of the same vertex,
  // counterclockwise (crosses the face of d).
  DartId rotate_ccw(DartId d) const { return dart(dart(d).prev).opp; }
  DartId rotate_cw(DartId d) const { return dart(dart(d).opp).next; }

  int vertex_degree(VertexId v) const;
  int fan_count(VertexId v) const { return vertex(v).fan_count; }

  // Sizes of the faces around v in counterclockwise rotation order.  For a
  // boundary vertex the walk starts just after the outer gap; for an
  // interior vertex it starts at an arbitrary incident dart.
  std::vector<int> fan_sizes(VertexId v) const;

  // Faces around v in the same order as fan_sizes.
  std::vector<FaceId> fan_faces(VertexId v) const;

  // Glues a new face of `face_size` sides onto `run_len` consecutive
  // boundary edges starting at the outer dart `run_first`.  Boundary
  // vertices strictly inside the run become interior.  Returns an undo
  // record; calls must be undone in LIFO order.
  AttachRecord attach_face(DartId run_first, int run_len, int face_size,
                           int new_vertex_layer);
  void undo_attach(const AttachRecord& rec);

  void set_tuple(const VertexTuple& t) { tuple_ = t; }
  void set_cyclic(const CyclicType& w) { cyclic_ = w; }
  const std::optional<VertexTuple>& tuple() const { return tuple_; }
  const std::optional<CyclicType>& cyclic() const { return cyclic_; }

  void set_layer(VertexId v, int layer) {
    vertices_[static_cast<size_t>(v)].layer = layer;
  }

  // Number of inner faces for Euler checks.
  int inner_face_count() const { return face_count(); }

  // Vertices along the outer cycle in boundary-walk order, starting from
  // the outer dart with the smallest id.  Empty when the map has no darts.
  std::vector<VertexId> boundary_cycle() const;

  // Structural invariant scan: involution, face sizes, Euler count, single
  // simple boundary cycle.  Appends human-readable violations.
  void structure_violations(std::vector<std::string>& out) const;

 private:
  friend CombMap canonicalize(const CombMap& m);
  friend CombMap deserialize(const std::string& bytes);

  DartId new_dart();
  VertexId new_vertex(int layer);
  FaceId new_face(int size);

  std::vector<Dart> darts_;
  std::vector<VertexData> vertices_;
  std::vector<FaceData> faces_;
  std::optional<VertexTuple> tuple_;
  std::optional<CyclicType> cyclic_;
  int outer_count_ = 0;
};

// --- spec-level operations -------------------------------------------------

// A fan: one interior vertex whose surrounding faces realize the given
// cyclic arrangement (all entries finite).
CombMap new_fan(const std::vector<int>& sizes_in_cyclic_order);
CombMap new_fan(const VertexTuple& t);

// Multiset of face sizes around an interior vertex; throws on boundary
// vertices.
VertexTuple vertex_type(const CombMap& m, VertexId v);
CyclicType vertex_type_cyclic(const CombMap& m, VertexId v);

// Cyclic sequence of the faces around f sharing an edge or a vertex with f;
// requires every vertex of f to be interior.
std::vector<FaceId> face_cycle(const CombMap& m, FaceId f);
bool face_cycle_complete(const CombMap& m, FaceId f);

// Boundary bookkeeping of the current layer.
struct Frontier {
  std::vector<VertexId> vertices;  // clockwise boundary walk
  std::vector<int> in_degrees;     // edges into the patch interior
};

Frontier frontier(const CombMap& m);
int in_degree(const Frontier& fr, VertexId v);

// Constraint for verification: either a multiset type or a cyclic word.
struct TypeConstraint {
  static TypeConstraint multiset(VertexTuple t);
  static TypeConstraint cyclic(CyclicType w);

  bool is_cyclic() const { return cyclic_word.has_value(); }
  // True when `arc` (a contiguous fan) can extend to the full constraint.
  bool arc_extendable(const std::vector<int>& arc) const;
  // True when the complete fan `word` matches the constraint exactly.
  bool fan_matches(const std::vector<int>& word) const;
  // True when `arc` plus one more s-gon (at either end) stays extendable.
  bool arc_extendable_with(const std::vector<int>& arc, int s) const;

  VertexTuple tuple;
  std::optional<CyclicType> cyclic_word;
};

struct Violation {
  std::string kind;   // STRUCTURE, VERTEX_TYPE, BOUNDARY_EXTEND, ...
  std::string detail;
};

struct VerifyReport {
  bool pass = true;
  std::vector<Violation> violations;
};

// Full verification against a constraint: structural invariants, exact fans
// at interior vertices, extendable partial fans on the boundary.  The
// verifier only walks darts; it shares no code with the builder.
VerifyReport verify(const CombMap& m, const TypeConstraint& constraint);
VerifyReport verify(const CombMap& m);  // uses the map's stored type

// Canonical JSON serialization with BFS dart renumbering (byte-stable).
std::string serialize(const CombMap& m);
CombMap deserialize(const std::string& bytes);

// Renumbers darts breadth-first from dart 0 over (opp, next); vertices and
// faces by first appearance.
CombMap canonicalize(const CombMap& m);

}  // namespace hypertile
