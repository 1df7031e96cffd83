#pragma once

#include <string>

#include "hypertile/geometry.hpp"

namespace hypertile {

struct RenderStyle {
  int canvas = 1000;        // square viewport in px
  double margin = 10;       // px between the unit circle and the border
  bool fill_faces = true;   // color faces by size
  std::string stroke = "#222222";
  double stroke_width = 1.5;
};

// Disk-model picture: the unit circle plus every edge drawn as the circular
// arc orthogonal to it (a straight segment when the geodesic runs through
// the center).  Deterministic byte-for-byte for identical inputs.
std::string render_svg(const CombMap& m, const Realization& r,
                       const RenderStyle& style = {});

}  // namespace hypertile
