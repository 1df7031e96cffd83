#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypertile/mapcore.hpp"

namespace hypertile {

// How a triangle touches a larger face: through exactly one shared vertex
// (nabla) or exactly one shared edge (delta).
enum class Attachment { Nabla, Delta };

struct AttachmentRecord {
  FaceId triangle = -1;
  FaceId other = -1;
  Attachment relation = Attachment::Nabla;
};

struct StatsReport {
  bool pass = true;
  std::map<int, int> face_type_histogram;  // face type -> count (complete faces)
  long long nabla_total = 0;
  long long delta_total = 0;
  std::vector<std::string> notes;
  std::vector<std::string> failures;
};

// Number of triangles in the face-cycle of f (requires a complete cycle).
int face_type_of(const CombMap& m, FaceId f);

// Classifies every triangle/larger-face incidence where the triangle's
// neighbourhood is complete.
std::vector<AttachmentRecord> attachments(const CombMap& m, FaceId triangle);

// Pentagon statistics of a [3,5,k3,k4] patch: every complete pentagon is
// type 4 and carries one nabla- and three delta-triangles.
StatsReport pentagon_stats(const CombMap& m);

// Every interior triangle of a [3,5,k3,k4] patch has exactly one
// nabla-pentagon and one delta-pentagon.
StatsReport triangle_pentagon_bijection(const CombMap& m);

// Homogeneous [3,5,k,5,l,5,m,...] incidences: 3 edge-sharing and 15
// vertex-sharing pentagons per interior triangle; every complete pentagon
// touches a triangle.
StatsReport kh_incidence(const CombMap& m);

enum class ObstructionClass { ThirtyFiveK3K4, Kh };

// Assembles the counting-ratio report backing the aperiodicity argument.
StatsReport periodicity_obstruction_report(const CombMap& m, ObstructionClass c);

}  // namespace hypertile
