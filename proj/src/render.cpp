#include "hypertile/render.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace hypertile {

namespace {

std::string num(double v) {
  char buf[40];
  // fixed decimals keep the output byte-stable across runs
  std::snprintf(buf, sizeof buf, "%.4f", v + 0.0);  // avoid -0.0000
  std::string s(buf);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

// Geodesic through z1, z2: circle orthogonal to the unit circle, or a
// diameter when z1, z2 and the origin are collinear.
struct Arc {
  bool straight = false;
  DiskPoint center;
  double radius = 0;
  bool sweep = false;  // svg sweep flag
};

Arc geodesic_arc(DiskPoint z1, DiskPoint z2) {
  Arc arc;
  double det = 2.0 * (z1.real() * z2.imag() - z1.imag() * z2.real());
  if (std::abs(det) < 1e-12) {
    arc.straight = true;
    return arc;
  }
  // solve 2 z.c = |z|^2 + 1 for both endpoints
  double r1 = std::norm(z1) + 1.0, r2 = std::norm(z2) + 1.0;
  double cx = (r1 * z2.imag() - r2 * z1.imag()) / det;
  double cy = (r2 * z1.real() - r1 * z2.real()) / det;
  arc.center = DiskPoint(cx, cy);
  arc.radius = std::abs(z1 - arc.center);
  // sweep: draw on the side of the chord away from the arc center
  double cross = (z2.real() - z1.real()) * (arc.center.imag() - z1.imag()) -
                 (z2.imag() - z1.imag()) * (arc.center.real() - z1.real());
  arc.sweep = cross < 0;
  return arc;
}

const char* kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072",
                          "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
                          "#d9d9d9", "#bc80bd"};

}  // namespace

std::string render_svg(const CombMap& m, const Realization& r,
                       const RenderStyle& style) {
  const double scale = (style.canvas - 2.0 * style.margin) / 2.0;
  const double cx = style.canvas / 2.0, cy = style.canvas / 2.0;
  auto px = [&](DiskPoint z) {
    // flip the imaginary axis so the picture is in screen coordinates
    return DiskPoint(cx + scale * z.real(), cy - scale * z.imag());
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.canvas
      << "\" height=\"" << style.canvas << "\" viewBox=\"0 0 " << style.canvas
      << " " << style.canvas << "\">\n";
  out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\""
      << num(scale) << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

  auto path_between = [&](DiskPoint a, DiskPoint b, std::ostringstream& o) {
    Arc arc = geodesic_arc(a, b);
    DiskPoint pb = px(b);
    if (arc.straight) {
      o << "L " << num(pb.real()) << " " << num(pb.imag()) << " ";
    } else {
      double rr = arc.radius * scale;
      o << "A " << num(rr) << " " << num(rr) << " 0 0 "
        << (arc.sweep ? 1 : 0) << " " << num(pb.real()) << " "
        << num(pb.imag()) << " ";
    }
  };

  // faces, colored by size
  if (style.fill_faces) {
    std::set<int> sizes;
    for (FaceId f = 0; f < m.face_count(); ++f) sizes.insert(m.face(f).size);
    std::map<int, const char*> color;
    int idx = 0;
    for (int s : sizes) color[s] = kPalette[idx++ % 10];
    for (FaceId f = 0; f < m.face_count(); ++f) {
      std::ostringstream path;
      DartId d0 = m.face(f).any_dart;
      DartId d = d0;
      DiskPoint start = r.positions[static_cast<size_t>(m.dart(d0).origin)];
      DiskPoint p0 = px(start);
      path << "M " << num(p0.real()) << " " << num(p0.imag()) << " ";
      do {
        DiskPoint a = r.positions[static_cast<size_t>(m.dart(d).origin)];
        DiskPoint b = r.positions[static_cast<size_t>(m.target(d))];
        path_between(a, b, path);
        d = m.dart(d).next;
      } while (d != d0);
      path << "Z";
      out << "<path d=\"" << path.str() << "\" fill=\""
          << color[m.face(f).size] << "\" stroke=\"none\"/>\n";
    }
  }

  // edges on top
  for (DartId d = 0; d < m.dart_count(); ++d) {
    if (m.dart(d).opp < d) continue;
    DiskPoint a = r.positions[static_cast<size_t>(m.dart(d).origin)];
    DiskPoint b = r.positions[static_cast<size_t>(m.target(d))];
    DiskPoint pa = px(a);
    std::ostringstream path;
    path << "M " << num(pa.real()) << " " << num(pa.imag()) << " ";
    path_between(a, b, path);
    out << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\""
        << style.stroke << "\" stroke-width=\"" << num(style.stroke_width)
        << "\"/>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace hypertile
