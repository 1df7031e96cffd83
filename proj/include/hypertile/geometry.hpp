#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hypertile/mapcore.hpp"
#include "hypertile/tuples.hpp"

namespace hypertile {

// Curvature -1 throughout; lengths are absolute hyperbolic lengths.

struct NotHyperbolic : std::domain_error {
  explicit NotHyperbolic(bool euclidean_)
      : std::domain_error(euclidean_ ? "NOT_HYPERBOLIC: tuple is euclidean "
                                       "(side length 0)"
                                     : "NOT_HYPERBOLIC: angle sum below 2"),
        euclidean(euclidean_) {}
  bool euclidean;
};

// Inner angle of a regular n-gon with the given side length; strictly
// decreasing in the length, equal to the euclidean angle (n-2)pi/n at 0.
double inner_angle(int n, double side_length);

// The unique side length at which the tuple's polygons fit around a vertex
// (angles sum to 2pi).  Bisection to 1e-12 relative tolerance.  Throws
// NotHyperbolic when the angle sum is <= 2 and std::invalid_argument on
// apeirogon entries.
double side_length(const VertexTuple& t);

// Minimal side length of a regular apeirogon with inner angle theta:
// s = 2 artanh(cos(theta/2)), from 1 = tanh(s/2) sec(theta/2).
double apeirogon_min_side(double theta);

// Feasible side lengths for a tuple with apeirogons, splitting the residual
// angle equally among the infinite entries.  hi is +infinity when two or
// more apeirogons share the residual.
struct SideInterval {
  double lo = 0;
  double hi = 0;
  bool hi_unbounded = false;
};

SideInterval feasible_side_interval(const VertexTuple& t);

// side_length(t1) - side_length(t2), both solved to 1e-12.
double match_lengths(const VertexTuple& t1, const VertexTuple& t2);

// Side lengths of the [3^l, 4^k] family and their pairwise separation.
struct Scan34Row {
  int l = 0;
  int k = 0;
  double length = 0;
};

struct Scan34Report {
  std::vector<Scan34Row> rows;
  double min_gap = 0;        // smallest |length_i - length_j| over pairs
  bool all_distinct = false; // min_gap > 1e-9
};

Scan34Report scan_34_family(int l_max, int k_max);

// The [3^4, 4^2] / [5^4] angle system solved numerically.
struct Mixed34Report {
  double alpha = 0;            // triangle angle in the [3^4,4^2] fan
  double beta = 0;             // square angle
  double sin2_half_alpha = 0;  // expected (3 - sqrt 5)/4
  double identity_2cosa_cosb = 0;  // expected 1
  double side_34 = 0;
  double side_55 = 0;
  bool pass = false;
};

Mixed34Report check_mixed_34_identities();

// --- Poincare disk model -----------------------------------------------------

using DiskPoint = std::complex<double>;

// Orientation-preserving isometry of the disk as a Moebius map
// z -> (a z + b) / (conj(b) z + conj(a)), normalized |a|^2 - |b|^2 = 1.
class Isometry {
 public:
  Isometry() : a_(1.0, 0.0), b_(0.0, 0.0) {}
  Isometry(std::complex<double> a, std::complex<double> b);

  static Isometry identity() { return Isometry(); }
  static Isometry rotation(double phi);
  // Maps 0 to p.
  static Isometry translation_to(DiskPoint p);
  static Isometry rotation_about(DiskPoint p, double phi);

  DiskPoint apply(DiskPoint z) const;
  Isometry compose(const Isometry& inner) const;  // this after inner
  Isometry inverse() const;

  std::complex<double> a() const { return a_; }
  std::complex<double> b() const { return b_; }

 private:
  void normalize();
  std::complex<double> a_, b_;
};

double hyperbolic_distance(DiskPoint z, DiskPoint w);

// Angle at v between the geodesics towards x and y.
double angle_at(DiskPoint v, DiskPoint x, DiskPoint y);

struct Realization {
  double side_length = 0;
  std::vector<DiskPoint> positions;   // per vertex id
  std::vector<Isometry> face_frames;  // per face id
};

// Places a verified patch in the disk: root vertex at the origin, first edge
// on the positive real axis, faces by breadth-first frame propagation.
// Throws std::runtime_error when a realized invariant (edge length within
// 1e-9 of the side length, interior angle sums within 1e-9 of 2pi) fails.
Realization realize(const CombMap& m, double side);

}  // namespace hypertile
