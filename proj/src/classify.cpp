#include "hypertile/classify.hpp"

#include <algorithm>
#include <cmath>

#include "hypertile/geometry.hpp"

namespace hypertile {

namespace {

Verdict no(GeometryClass g, const char* rule) {
  return Verdict{false, g, rule, "NONE"};
}

Verdict yes(GeometryClass g, const char* rule, const char* hint) {
  return Verdict{true, g, rule, hint};
}

// Degree-3 classification: [p,p,p] with p >= 7, [2n,2n,q] with 2n != q and
// 1/n + 1/q < 1/2, or [2l,2m,2n] with distinct entries and angle sum > 2.
Verdict classify_degree3(const VertexTuple& t, GeometryClass g) {
  int a = t.sides(0), b = t.sides(1), c = t.sides(2);
  if (a == b && b == c) {
    if (a >= 7) return yes(g, "DG3_ALL_EQUAL", "LAYERED");
    return no(g, "DG3_NO_MATCH");
  }
  // a pair of equal even entries plus a different third
  auto two_even = [&](int e, int q) -> bool {
    if (e % 2 != 0 || e == q) return false;
    int n = e / 2;
    return Rational(1, n) + Rational(1, q) < Rational(1, 2);
  };
  if (a == b && two_even(a, c)) return yes(g, "DG3_TWO_EVEN", "LAYERED");
  if (b == c && two_even(b, a)) return yes(g, "DG3_TWO_EVEN", "LAYERED");
  if (a != b && b != c && a % 2 == 0 && b % 2 == 0 && c % 2 == 0 &&
      angle_sum(t).value > Rational(2))
    return yes(g, "DG3_ALL_EVEN", "LAYERED");
  return no(g, "DG3_NO_MATCH");
}

// Degree-4 tuples containing a triangle: the classification theorem.
Verdict classify_degree4_triangle(const VertexTuple& t, GeometryClass g) {
  int a = t.sides(1), b = t.sides(2), c = t.sides(3);  // sorted [3,a,b,c]
  if (a == 3) {
    // [3,3,b,c]; the period-3 face-cycle argument needs no b < c, and the
    // bounded search refutes [3,3,7,7] and [3,3,8,8] outright
    if (b % 3 == 0 && c % 3 == 0)
      return yes(g, "THM4_EXIST_33_MULT3", "RECT_TRUNCATE");
    return no(g, "THM4_ITEM_1");
  }
  if (a == 4) {
    // [3,4,b,c]
    if (b == 5 && c == 5) return no(g, "THM4_ITEM_2A");
    if (b == 4) return yes(g, "THM4_EXIST_CONTRACT", "CONTRACT");
    // the period-4 face-cycle argument covers b = 5 as well (4 never
    // divides 5); the bounded search refutes [3,4,5,6] and [3,4,5,13]
    if (b == 5) return no(g, "THM4_ITEM_2B");
    if (b == c) {
      if (b % 2 == 0) return yes(g, "THM4_EXIST_34PP", "CONTRACT");
      return yes(g, "THM4_EXIST_34PP", "MODIFIED_LAYER");
    }
    if (b % 4 == 0 && c % 4 == 0)
      return yes(g, "THM4_EXIST_34_MULT4", "CANTELLATE");
    return no(g, "THM4_ITEM_2B");
  }
  if (a == 5) {
    // [3,5,b,c]
    if (b == c) {
      if (b == 5) return yes(g, "THM4_EXIST_35PP", "BACKTRACK");
      if (b % 2 == 0) return yes(g, "THM4_EXIST_35PP", "CONTRACT");
      return yes(g, "THM4_EXIST_35PP", "MODIFIED_LAYER");
    }
    if (b == 5) return yes(g, "THM4_EXIST_355P", "T_LAYER_PENTA");
    if (b >= 6 && b <= 9) return no(g, "THM4_ITEM_3A");
    if (b == 11) return no(g, "THM4_ITEM_3B");
    return yes(g, "THM4_EXIST_35_K3K4", "T_LAYER_PENTA");
  }
  // [3,k2,k3,k4] with k2,k3,k4 >= 6
  return yes(g, "THM4_EXIST_3KKK", "T_LAYER");
}

// Tuples with apeirogons: excluded families of the apeirogon classification.
Verdict classify_with_apeirogons(const VertexTuple& t, GeometryClass g) {
  const int d = t.degree();
  const int inf = t.infinite_count();
  const int fin = d - inf;
  if (d == 3 && inf == 1) {
    if (t.sides(0) != t.sides(1)) return no(g, "APEIRO_ITEM_1");
    return yes(g, "APEIRO_EXIST", "NONE");
  }
  if (d == 4 && inf == 1 && fin == 3 && t.sides(0) == 3) {
    int a = t.sides(1), k3 = t.sides(2);
    if (a == 3) {
      if (k3 % 3 != 0) return no(g, "APEIRO_ITEM_2");
      return yes(g, "APEIRO_EXIST", "NONE");
    }
    if (a == 4) {
      if (k3 % 4 != 0) return no(g, "APEIRO_ITEM_3");
      return yes(g, "APEIRO_EXIST", "NONE");
    }
    if (a == 5) {
      if (k3 == 6 || k3 == 8 || k3 == 9) return no(g, "APEIRO_ITEM_4");
      return yes(g, "APEIRO_EXIST", "NONE");
    }
  }
  return yes(g, "APEIRO_EXIST", "NONE");
}

}  // namespace

Verdict classify(const VertexTuple& t) {
  GeometryClass g = geometry_class(t);
  const Rational two(2);
  const Rational theta = angle_sum(t).value;

  if (t.infinite_count() > 0) {
    if (!(theta > two)) return no(g, "ANGLE_SUM");
    return classify_with_apeirogons(t, g);
  }

  if (theta < two) return no(g, "ANGLE_SUM");

  const int d = t.degree();
  if (d >= 5) return yes(g, "DEG5_ANGLE_SUM", "LAYERED");
  if (d == 4) {
    if (t.sides(0) > 3) return yes(g, "DEG4_NO_TRIANGLE", "LAYERED");
    return classify_degree4_triangle(t, g);
  }
  return classify_degree3(t, g);
}

TileSetVerdict classify_tile_set(const std::set<int>& sizes,
                                 double len, double angle_tol) {
  if (sizes.empty())
    throw std::invalid_argument("classify_tile_set: empty size set");
  if (!(len > 0))
    throw std::invalid_argument("classify_tile_set: side length must be positive");
  for (int n : sizes)
    if (n < 3) throw std::invalid_argument("classify_tile_set: size below 3");

  std::vector<int> order(sizes.begin(), sizes.end());
  std::vector<double> angle(order.size());
  double min_angle = 1e300;
  for (size_t i = 0; i < order.size(); ++i) {
    angle[i] = inner_angle(order[i], len);
    min_angle = std::min(min_angle, angle[i]);
  }
  const double target = 2.0 * 3.14159265358979323846;

  TileSetVerdict verdict;
  std::vector<int> chosen;
  // Enumerate multisets in nondecreasing order; prune on the remaining angle.
  auto recurse = [&](auto&& self, size_t from, double sum) -> void {
    if (sum > target + angle_tol) return;
    if (std::abs(sum - target) <= angle_tol && chosen.size() >= 3) {
      VertexTuple cand = [&] {
        std::vector<PolygonSize> es;
        for (int n : chosen) es.push_back(PolygonSize::finite(n));
        return VertexTuple(std::move(es));
      }();
      if (classify(cand).exists)
        verdict.witnesses.push_back(cand);
      else
        verdict.rejected.push_back(cand);
      return;
    }
    if (sum + min_angle > target + angle_tol) return;
    for (size_t i = from; i < order.size(); ++i) {
      chosen.push_back(order[i]);
      self(self, i, sum + angle[i]);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0, 0.0);

  std::sort(verdict.witnesses.begin(), verdict.witnesses.end());
  std::sort(verdict.rejected.begin(), verdict.rejected.end());
  verdict.is_tiling_system = !verdict.witnesses.empty();
  return verdict;
}

}  // namespace hypertile
