#pragma once

#include <set>
#include <string>
#include <vector>

#include "hypertile/tuples.hpp"

namespace hypertile {

// Admissibility decision for one tuple: does a pseudo-homogeneous planar map
// (tiling of the hyperbolic plane for angle sum > 2) of this type exist, and
// which clause of the classification decides it.
struct Verdict {
  bool exists = false;
  GeometryClass geometry = GeometryClass::Hyperbolic;
  std::string rule;               // e.g. THM4_ITEM_2A, DEG5_ANGLE_SUM
  std::string construction_hint;  // builder strategy or NONE
};

Verdict classify(const VertexTuple& t);

// Tile-set decision at a fixed side length: which multisets over the given
// sizes close up to angle 2pi, and does any of them admit a tiling.
struct TileSetVerdict {
  bool is_tiling_system = false;
  std::vector<VertexTuple> witnesses;
  std::vector<VertexTuple> rejected;
};

TileSetVerdict classify_tile_set(const std::set<int>& sizes,
                                 double side_length,
                                 double angle_tol = 1e-9);

}  // namespace hypertile
