#include "hypertile/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace hypertile {

namespace {

constexpr double kPi = 3.14159265358979323846;

double angle_sum_at(const VertexTuple& t, double len) {
  double s = 0;
  for (const auto& e : t.entries()) s += inner_angle(e.sides(), len);
  return s;
}

}  // namespace

double inner_angle(int n, double side_length) {
  if (n < 3) throw std::invalid_argument("inner_angle: n below 3");
  if (side_length < 0) throw std::invalid_argument("inner_angle: negative length");
  return 2.0 * std::asin(std::cos(kPi / n) / std::cosh(side_length / 2.0));
}

double side_length(const VertexTuple& t) {
  if (!t.all_finite())
    throw std::invalid_argument("side_length: apeirogon entry");
  GeometryClass g = geometry_class(t);
  if (g != GeometryClass::Hyperbolic)
    throw NotHyperbolic(g == GeometryClass::Euclidean);

  double lo = 0.0;
  double hi = 1.0;
  while (angle_sum_at(t, hi) > 2.0 * kPi) hi *= 2.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (angle_sum_at(t, mid) > 2.0 * kPi)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double apeirogon_min_side(double theta) {
  if (!(theta > 0.0) || !(theta < kPi))
    throw std::invalid_argument("apeirogon_min_side: angle out of (0, pi)");
  return 2.0 * std::atanh(std::cos(theta / 2.0));
}

SideInterval feasible_side_interval(const VertexTuple& t) {
  const int m = t.infinite_count();
  if (m == 0)
    throw std::invalid_argument("feasible_side_interval: no apeirogon entry");
  Rational two(2);
  if (!(angle_sum(t).value > two))
    throw NotHyperbolic(angle_sum(t).value == two);

  std::vector<int> finite;
  for (const auto& e : t.entries())
    if (!e.is_infinite()) finite.push_back(e.sides());

  auto residual_per_apeirogon = [&](double len) {
    double s = 2.0 * kPi;
    for (int n : finite) s -= inner_angle(n, len);
    return s / m;
  };
  auto bound = [&](double len) { return 2.0 * std::acos(std::tanh(len / 2.0)); };

  // phi - bound is increasing, negative at 0, positive for large lengths.
  auto margin = [&](double len) { return residual_per_apeirogon(len) - bound(len); };
  double hi_bracket = 1.0;
  while (margin(hi_bracket) <= 0.0) {
    hi_bracket *= 2.0;
    if (hi_bracket > 1e9)
      throw std::logic_error("feasible_side_interval: INCONSISTENT");
  }
  double lo = 0.0, hi = hi_bracket;
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::max(1.0, hi); ++it) {
    double mid = 0.5 * (lo + hi);
    if (margin(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }

  SideInterval interval;
  interval.lo = 0.5 * (lo + hi);

  if (m >= 2) {
    interval.hi_unbounded = true;
    interval.hi = std::numeric_limits<double>::infinity();
  } else {
    // single apeirogon: its angle reaches pi at a finite length
    auto excess = [&](double len) { return residual_per_apeirogon(len) - kPi; };
    double top = 1.0;
    while (excess(top) <= 0.0) top *= 2.0;
    double a = 0.0, b = top;
    for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, b); ++it) {
      double mid = 0.5 * (a + b);
      if (excess(mid) <= 0.0)
        a = mid;
      else
        b = mid;
    }
    interval.hi = 0.5 * (a + b);
  }
  if (!interval.hi_unbounded && !(interval.lo < interval.hi))
    throw std::logic_error("feasible_side_interval: INCONSISTENT");
  return interval;
}

double match_lengths(const VertexTuple& t1, const VertexTuple& t2) {
  return side_length(t1) - side_length(t2);
}

Scan34Report scan_34_family(int l_max, int k_max) {
  if (l_max < 1 && k_max < 1)
    throw std::invalid_argument("scan_34_family: bounds below 1");
  Scan34Report report;
  for (int l = 0; l <= l_max; ++l) {
    for (int k = 0; k <= k_max; ++k) {
      if (l + k < 3) continue;
      // angle sum l/3 + k/2 must exceed 2
      if (Rational(l, 3) + Rational(k, 2) <= Rational(2)) continue;
      std::vector<PolygonSize> es;
      for (int i = 0; i < l; ++i) es.push_back(PolygonSize::finite(3));
      for (int i = 0; i < k; ++i) es.push_back(PolygonSize::finite(4));
      report.rows.push_back({l, k, side_length(VertexTuple(std::move(es)))});
    }
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < report.rows.size(); ++i)
    for (size_t j = i + 1; j < report.rows.size(); ++j)
      min_gap = std::min(min_gap,
                         std::abs(report.rows[i].length - report.rows[j].length));
  report.min_gap = min_gap;
  report.all_distinct = min_gap > 1e-9;
  return report;
}

Mixed34Report check_mixed_34_identities() {
  Mixed34Report r;
  r.side_34 = side_length(VertexTuple({3, 3, 3, 3, 4, 4}));
  r.side_55 = side_length(VertexTuple({5, 5, 5, 5}));
  r.alpha = inner_angle(3, r.side_34);
  r.beta = inner_angle(4, r.side_34);
  double s = std::sin(r.alpha / 2.0);
  r.sin2_half_alpha = s * s;
  r.identity_2cosa_cosb = 2.0 * std::cos(r.alpha) - std::cos(r.beta);
  const double expected = (3.0 - std::sqrt(5.0)) / 4.0;
  r.pass = std::abs(r.sin2_half_alpha - expected) < 1e-12 &&
           std::abs(r.identity_2cosa_cosb - 1.0) < 1e-12 &&
           std::abs(r.side_34 - r.side_55) < 1e-9;
  return r;
}

// --- disk model ---------------------------------------------------------------

Isometry::Isometry(std::complex<double> a, std::complex<double> b)
    : a_(a), b_(b) {
  normalize();
}

void Isometry::normalize() {
  double det = std::norm(a_) - std::norm(b_);
  if (det <= 0) throw std::invalid_argument("isometry: not disk preserving");
  double s = std::sqrt(det);
  a_ /= s;
  b_ /= s;
}

Isometry Isometry::rotation(double phi) {
  return Isometry(std::polar(1.0, phi / 2.0), 0.0);
}

Isometry Isometry::translation_to(DiskPoint p) {
  double n = std::norm(p);
  if (n >= 1.0) throw std::invalid_argument("isometry: point outside the disk");
  double s = 1.0 / std::sqrt(1.0 - n);
  return Isometry(s, p * s);
}

Isometry Isometry::rotation_about(DiskPoint p, double phi) {
  Isometry t = translation_to(p);
  return t.compose(rotation(phi)).compose(t.inverse());
}

DiskPoint Isometry::apply(DiskPoint z) const {
  return (a_ * z + b_) / (std::conj(b_) * z + std::conj(a_));
}

Isometry Isometry::compose(const Isometry& inner) const {
  return Isometry(a_ * inner.a_ + b_ * std::conj(inner.b_),
                  a_ * inner.b_ + b_ * std::conj(inner.a_));
}

Isometry Isometry::inverse() const {
  return Isometry(std::conj(a_), -b_);
}

double hyperbolic_distance(DiskPoint z, DiskPoint w) {
  std::complex<double> q = (z - w) / (1.0 - std::conj(w) * z);
  double r = std::min(std::abs(q), 1.0 - 1e-17);
  return 2.0 * std::atanh(r);
}

double angle_at(DiskPoint v, DiskPoint x, DiskPoint y) {
  Isometry to_origin = Isometry::translation_to(v).inverse();
  DiskPoint xx = to_origin.apply(x);
  DiskPoint yy = to_origin.apply(y);
  double a = std::abs(std::arg(xx * std::conj(yy)));
  return a;
}

Realization realize(const CombMap& m, double side) {
  if (side <= 0) throw std::invalid_argument("realize: side length must be positive");
  Realization r;
  r.side_length = side;
  r.positions.assign(static_cast<size_t>(m.vertex_count()), DiskPoint(0, 0));
  std::vector<char> placed(static_cast<size_t>(m.vertex_count()), 0);
  std::vector<char> face_done(static_cast<size_t>(m.face_count()), 0);
  r.face_frames.assign(static_cast<size_t>(m.face_count()), Isometry::identity());

  auto place = [&](VertexId v, DiskPoint p) {
    if (placed[static_cast<size_t>(v)]) {
      if (std::abs(r.positions[static_cast<size_t>(v)] - p) > 1e-7)
        throw std::runtime_error("realize: position mismatch (numeric drift)");
      return;
    }
    placed[static_cast<size_t>(v)] = 1;
    r.positions[static_cast<size_t>(v)] = p;
  };

  // Root pose: origin of the root dart at 0, edge along the positive axis.
  DartId root = m.face(0).any_dart;
  place(m.dart(root).origin, DiskPoint(0, 0));
  place(m.target(root), DiskPoint(std::tanh(side / 2.0), 0));

  std::deque<FaceId> queue;
  auto lay_face = [&](FaceId f, DartId d0) {
    // positions of origin(d0) and target(d0) must be known
    double theta = inner_angle(m.face(f).size, side);
    DartId d = m.dart(d0).next;
    while (d != d0) {
      VertexId prev_v = m.dart(m.dart(d).prev).origin;
      VertexId cur_v = m.dart(d).origin;
      VertexId next_v = m.target(d);
      DiskPoint p = Isometry::rotation_about(
                        r.positions[static_cast<size_t>(cur_v)], -theta)
                        .apply(r.positions[static_cast<size_t>(prev_v)]);
      place(next_v, p);
      d = m.dart(d).next;
    }
    face_done[static_cast<size_t>(f)] = 1;
    // frame: canonical pose -> this face's pose
    VertexId v0 = m.dart(m.face(f).any_dart).origin;
    VertexId v1 = m.target(m.face(f).any_dart);
    DiskPoint p0 = r.positions[static_cast<size_t>(v0)];
    DiskPoint p1 = r.positions[static_cast<size_t>(v1)];
    Isometry t0 = Isometry::translation_to(p0);
    DiskPoint q = t0.inverse().apply(p1);
    r.face_frames[static_cast<size_t>(f)] =
        t0.compose(Isometry::rotation(std::arg(q)));
    queue.push_back(f);
  };

  lay_face(m.dart(root).face, root);
  while (!queue.empty()) {
    FaceId f = queue.front();
    queue.pop_front();
    DartId d0 = m.face(f).any_dart;
    DartId d = d0;
    do {
      FaceId g = m.dart(m.dart(d).opp).face;
      if (g != kOuterFace && !face_done[static_cast<size_t>(g)])
        lay_face(g, m.dart(d).opp);
      d = m.dart(d).next;
    } while (d != d0);
  }

  // Gate the result: edge lengths and interior angle sums.
  for (DartId d = 0; d < m.dart_count(); d += 1) {
    if (m.dart(d).opp < d) continue;
    double len = hyperbolic_distance(r.positions[static_cast<size_t>(m.dart(d).origin)],
                                     r.positions[static_cast<size_t>(m.target(d))]);
    if (std::abs(len - side) > 1e-9)
      throw std::runtime_error("realize: edge length off by more than 1e-9");
  }
  for (VertexId v = 0; v < m.vertex_count(); ++v) {
    if (m.is_boundary_vertex(v)) continue;
    DartId start = m.vertex(v).any_dart;
    double total = 0;
    DartId d = start;
    do {
      DartId e = m.rotate_ccw(d);
      total += angle_at(r.positions[static_cast<size_t>(v)],
                        r.positions[static_cast<size_t>(m.target(d))],
                        r.positions[static_cast<size_t>(m.target(e))]);
      d = e;
    } while (d != start);
    if (std::abs(total - 2.0 * kPi) > 1e-9)
      throw std::runtime_error("realize: interior angle sum off by more than 1e-9");
  }
  return r;
}

}  // namespace hypertile
