#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypertrop/geometry.hpp"
#include "hypertrop/metric_graph.hpp"
#include "hypertrop/mpoly.hpp"

namespace hypertrop {

// Min-plus polynomial: exponent -> coefficient.
struct TropPoly {
  std::vector<std::string> vars;
  std::map<Exponent, Rat> terms;

  Rat eval(const std::vector<Rat>& w) const;
  // Terms attaining the minimum at w.
  std::vector<Exponent> argmin(const std::vector<Rat>& w) const;
};

// Coefficientwise t-adic valuation.
TropPoly tropicalize(const MPoly& f);

// Regular subdivision of the Newton polygon induced by the lift.
// Cells are the point sets tied at each vertex of the tropical curve
// (lower faces of the lifted point set); unused points lie in no cell.
struct RegularSubdivision {
  std::vector<Vec2i> points;
  std::vector<Rat> lifts;
  std::vector<std::vector<int>> cells;  // sorted point indices, sorted
};

struct TropEdge {
  int v0, v1;
  Vec2i dir;  // primitive, from v0 to v1
  Rat length;
  int mult;
  std::array<Vec2i, 2> dual;  // endpoints of the dual subdivision edge
};

struct TropRay {
  int v;
  Vec2i dir;
  int mult;
  std::array<Vec2i, 2> dual;
};

struct TropLine {
  Point2 point;
  Vec2i dir;
  int mult;
  std::array<Vec2i, 2> dual;
};

// Plane tropical curve in min convention.
struct TropCurve {
  std::vector<std::string> vars;
  TropPoly poly;
  std::vector<Point2> vertices;
  std::vector<TropEdge> edges;
  std::vector<TropRay> rays;
  std::vector<TropLine> lines;
  RegularSubdivision subdivision;
  std::vector<std::vector<int>> vertex_cells;  // subdivision cell of each vertex

  MetricGraph graph() const;
  int first_betti() const { return graph().first_betti(); }
  std::vector<Rat> cycle_lengths() const { return graph().cycle_lengths(); }
  // Sum of mult * outgoing primitive direction at each vertex.
  std::vector<Vec2i> balancing_defects() const;
  bool is_balanced() const;
  // True when the minimum of poly at p is attained at least twice.
  bool contains(const Point2& p) const;
};

TropCurve trop_curve(const TropPoly& f);
TropCurve trop_curve(const MPoly& f);

// Lattice points strictly inside the convex hull of the exponents.
std::vector<Vec2i> interior_lattice_points(const std::vector<Vec2i>& pts);
std::vector<Vec2i> newton_hull(const std::vector<Vec2i>& pts);

// Canonical description of a subdivision's cell structure as exponent
// sets, used to compare subdivision types.
std::vector<std::vector<Vec2i>> subdivision_type(const RegularSubdivision& s);

}  // namespace hypertrop
