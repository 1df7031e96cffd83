#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "hypertile/rational.hpp"

namespace hypertile {

// One entry of a vertex tuple: a regular polygon with a finite number of
// sides (>= 3) or an apeirogon.  Infinity is a distinguished state, never a
// sentinel value smuggled through the side count.
class PolygonSize {
 public:
  static PolygonSize finite(int sides);
  static PolygonSize infinite();

  bool is_infinite() const { return infinite_; }
  int sides() const;  // throws on apeirogons

  // Finite entries ascending, apeirogons last.
  std::strong_ordering operator<=>(const PolygonSize& o) const;
  bool operator==(const PolygonSize& o) const = default;

  std::string str() const;

 private:
  PolygonSize(int sides, bool infinite) : sides_(sides), infinite_(infinite) {}
  int sides_;
  bool infinite_;
};

enum class GeometryClass { Spherical, Euclidean, Hyperbolic };

std::string to_string(GeometryClass g);

// Angle sum of a tuple, kept as an exact rational: each finite k-gon
// contributes (k-2)/k and each apeirogon contributes exactly 1.
struct AngleSum {
  Rational value;
  double real() const { return value.to_double(); }
};

// A vertex tuple in canonical form: the sorted multiset of polygon sizes.
class VertexTuple {
 public:
  VertexTuple() = default;
  explicit VertexTuple(std::vector<PolygonSize> entries);
  VertexTuple(std::initializer_list<int> finite_sides);

  const std::vector<PolygonSize>& entries() const { return entries_; }
  int degree() const { return static_cast<int>(entries_.size()); }

  bool all_finite() const;
  int infinite_count() const;
  // Count of finite entries equal to n.
  int count(int n) const;
  // Side count of entry i; entry must be finite.
  int sides(int i) const { return entries_[static_cast<size_t>(i)].sides(); }

  std::string str() const;  // multiplicative form, e.g. "3^2,5^2"

  bool operator==(const VertexTuple& o) const = default;
  std::strong_ordering operator<=>(const VertexTuple& o) const = default;

 private:
  void canonicalize();
  std::vector<PolygonSize> entries_;
};

// Cyclic vertex type: a cyclic word of finite polygon sizes, identified up
// to rotation and reversal.
class CyclicType {
 public:
  CyclicType() = default;
  explicit CyclicType(std::vector<int> word);

  const std::vector<int>& word() const { return word_; }
  int degree() const { return static_cast<int>(word_.size()); }
  VertexTuple multiset() const;

  // Lexicographically least word over all rotations and the reversal.
  std::vector<int> canonical_word() const;

  bool operator==(const CyclicType& o) const;

  std::string str() const;

 private:
  std::vector<int> word_;
};

// Parses comma-separated tokens: "7", "inf", or "n^m" (m >= 1 repetitions).
// Throws std::invalid_argument on malformed input, entries < 3, degree < 3.
VertexTuple parse_tuple(const std::string& text);

AngleSum angle_sum(const VertexTuple& t);

GeometryClass geometry_class(const VertexTuple& t);

}  // namespace hypertile
