#pragma once

#include <array>
#include <string>

#include "hypertrop/projections.hpp"
#include "hypertrop/tropical.hpp"

namespace hypertrop::cli {

struct SvgOptions {
  double margin = 3;   // lattice units beyond the vertex bounding box
  int canvas = 600;    // square canvas side in pixels
};

// Plane tropical curve; rays and lines are clipped at the margin box.
std::string curve_svg(const TropCurve& c, const SvgOptions& opt = {});
// Dual subdivision of the Newton polygon.
std::string subdivision_svg(const TropCurve& c, const SvgOptions& opt = {});
// Cells of a modification complex clipped to [-margin, margin]^3 and drawn
// under the linear map `view` (rows give screen x and y).
std::string complex_svg(const PolyComplex3& pc, const SvgOptions& opt = {},
                        const std::array<std::array<double, 3>, 2>& view = {{{1, 0, -0.5}, {0, 1, -0.35}}});

// Throws std::runtime_error when the file cannot be written.
void write_file(const std::string& path, const std::string& content);

}  // namespace hypertrop::cli
