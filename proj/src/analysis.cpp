#include "hypertile/analysis.hpp"

#include <algorithm>
#include <set>

namespace hypertile {

namespace {

bool is_triangle(const CombMap& m, FaceId f) { return m.face(f).size == 3; }

// Vertices of f, in cycle order.
std::vector<VertexId> face_vertices(const CombMap& m, FaceId f) {
  std::vector<VertexId> out;
  DartId d0 = m.face(f).any_dart;
  DartId d = d0;
  do {
    out.push_back(m.dart(d).origin);
    d = m.dart(d).next;
  } while (d != d0);
  return out;
}

bool shares_edge(const CombMap& m, FaceId f, FaceId g) {
  DartId d0 = m.face(f).any_dart;
  DartId d = d0;
  do {
    if (m.dart(m.dart(d).opp).face == g) return true;
    d = m.dart(d).next;
  } while (d != d0);
  return false;
}

int shared_vertices(const CombMap& m, FaceId f, FaceId g) {
  std::vector<VertexId> a = face_vertices(m, f);
  std::vector<VertexId> b = face_vertices(m, g);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<VertexId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  return static_cast<int>(common.size());
}

}  // namespace

int face_type_of(const CombMap& m, FaceId f) {
  int count = 0;
  for (FaceId g : face_cycle(m, f))
    if (is_triangle(m, g)) ++count;
  return count;
}

std::vector<AttachmentRecord> attachments(const CombMap& m, FaceId triangle) {
  if (!is_triangle(m, triangle))
    throw std::invalid_argument("attachments: face is not a triangle");
  std::vector<AttachmentRecord> out;
  std::set<FaceId> seen;
  for (FaceId g : face_cycle(m, triangle)) {
    if (g == triangle || is_triangle(m, g)) continue;
    if (!seen.insert(g).second) continue;
    AttachmentRecord rec;
    rec.triangle = triangle;
    rec.other = g;
    if (shares_edge(m, triangle, g)) {
      rec.relation = Attachment::Delta;
      if (shared_vertices(m, triangle, g) != 2)
        throw std::logic_error("attachment: edge-sharing faces without 2 vertices");
    } else {
      rec.relation = Attachment::Nabla;
      if (shared_vertices(m, triangle, g) != 1)
        throw std::logic_error("attachment: vertex-sharing faces without 1 vertex");
    }
    out.push_back(rec);
  }
  return out;
}

StatsReport pentagon_stats(const CombMap& m) {
  StatsReport report;
  int complete_pentagons = 0;
  for (FaceId f = 0; f < m.face_count(); ++f) {
    if (m.face(f).size != 5 || !face_cycle_complete(m, f)) continue;
    ++complete_pentagons;
    int type = face_type_of(m, f);
    ++report.face_type_histogram[type];
    if (type != 4)
      report.failures.push_back("pentagon " + std::to_string(f) + " has type " +
                                std::to_string(type) + ", expected 4");
    // per-pentagon nabla/delta split over the triangles in its cycle
    int nabla = 0, delta = 0;
    std::set<FaceId> counted;
    for (FaceId g : face_cycle(m, f)) {
      if (!is_triangle(m, g) || !counted.insert(g).second) continue;
      if (shares_edge(m, f, g))
        ++delta;
      else
        ++nabla;
    }
    report.nabla_total += nabla;
    report.delta_total += delta;
    if (!(nabla == 1 && delta == 3))
      report.failures.push_back("pentagon " + std::to_string(f) + " split " +
                                std::to_string(nabla) + ":" +
                                std::to_string(delta) + ", expected 1:3");
  }
  report.notes.push_back("complete pentagons: " +
                         std::to_string(complete_pentagons));
  report.pass = report.failures.empty();
  return report;
}

StatsReport triangle_pentagon_bijection(const CombMap& m) {
  StatsReport report;
  int interior_triangles = 0;
  for (FaceId f = 0; f < m.face_count(); ++f) {
    if (!is_triangle(m, f) || !face_cycle_complete(m, f)) continue;
    ++interior_triangles;
    int nabla = 0, delta = 0;
    for (const AttachmentRecord& rec : attachments(m, f)) {
      if (m.face(rec.other).size != 5) continue;
      if (rec.relation == Attachment::Nabla)
        ++nabla;
      else
        ++delta;
    }
    report.nabla_total += nabla;
    report.delta_total += delta;
    if (!(nabla == 1 && delta == 1))
      report.failures.push_back("triangle " + std::to_string(f) +
                                " sees pentagons nabla=" + std::to_string(nabla) +
                                " delta=" + std::to_string(delta) +
                                ", expected 1 and 1");
  }
  report.notes.push_back("interior triangles: " +
                         std::to_string(interior_triangles));
  report.pass = report.failures.empty();
  return report;
}

StatsReport kh_incidence(const CombMap& m) {
  StatsReport report;
  int interior_triangles = 0, complete_pentagons = 0;
  for (FaceId f = 0; f < m.face_count(); ++f) {
    if (!face_cycle_complete(m, f)) continue;
    if (is_triangle(m, f)) {
      ++interior_triangles;
      int edge_pent = 0, vertex_pent = 0;
      for (const AttachmentRecord& rec : attachments(m, f)) {
        if (m.face(rec.other).size != 5) continue;
        if (rec.relation == Attachment::Delta)
          ++edge_pent;
        else
          ++vertex_pent;
      }
      report.nabla_total += vertex_pent;
      report.delta_total += edge_pent;
      if (edge_pent != 3)
        report.failures.push_back("triangle " + std::to_string(f) + " shares edges with " +
                                  std::to_string(edge_pent) + " pentagons, expected 3");
      if (vertex_pent != 15)
        report.failures.push_back("triangle " + std::to_string(f) +
                                  " shares single vertices with " +
                                  std::to_string(vertex_pent) +
                                  " pentagons, expected 15");
      // five vertex-sharing pentagons per triangle vertex
      for (VertexId v : face_vertices(m, f)) {
        int per_vertex = 0;
        for (FaceId g : m.fan_faces(v)) {
          if (m.face(g).size != 5 || shares_edge(m, f, g)) continue;
          ++per_vertex;
        }
        if (per_vertex != 5)
          report.failures.push_back("triangle " + std::to_string(f) + " vertex " +
                                    std::to_string(v) + " touches " +
                                    std::to_string(per_vertex) +
                                    " pentagons, expected 5");
      }
    } else if (m.face(f).size == 5) {
      ++complete_pentagons;
      bool touches_triangle = false;
      for (FaceId g : face_cycle(m, f))
        touches_triangle |= is_triangle(m, g);
      if (!touches_triangle)
        report.failures.push_back("pentagon " + std::to_string(f) +
                                  " shares no vertex with a triangle");
    }
  }
  report.notes.push_back("interior triangles: " + std::to_string(interior_triangles));
  report.notes.push_back("complete pentagons: " + std::to_string(complete_pentagons));
  report.pass = report.failures.empty();
  return report;
}

StatsReport periodicity_obstruction_report(const CombMap& m, ObstructionClass c) {
  StatsReport report;
  if (c == ObstructionClass::ThirtyFiveK3K4) {
    StatsReport stats = pentagon_stats(m);
    report = stats;
    if (stats.nabla_total == 0 && stats.delta_total == 0) {
      report.notes.push_back("ratio nabla:delta = N/A (empty interior)");
    } else {
      report.notes.push_back(
          "nabla:delta attachments to pentagons = " +
          std::to_string(stats.nabla_total) + ":" + std::to_string(stats.delta_total) +
          " (weak periodicity would force 1:1; type-4 pentagons force 1:3)");
    }
  } else {
    StatsReport stats = kh_incidence(m);
    report = stats;
    if (stats.nabla_total == 0 && stats.delta_total == 0) {
      report.notes.push_back("ratio edge:vertex = N/A (empty interior)");
    } else {
      report.notes.push_back(
          "triangle-pentagon edge:vertex incidences = " +
          std::to_string(stats.delta_total) + ":" + std::to_string(stats.nabla_total) +
          " (observation i gives 1:5; a weakly periodic tiling would force r:3, r <= 1)");
    }
  }
  return report;
}

}  // namespace hypertile
