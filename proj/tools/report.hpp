#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypertrop/hyperelliptic.hpp"
#include "hypertrop/projections.hpp"
#include "hypertrop/tropical.hpp"

namespace hypertrop::cli {

using Json = nlohmann::ordered_json;

// Parsed curve file. `hyperelliptic` is set when the curve is y^2 - h(x),
// either from "roots" or from a "poly" of that shape.
struct CurveFile {
  int genus = 0;
  MPoly poly;
  std::optional<HECurve> hyperelliptic;
  bool combine = false;
  bool identity = false;
  std::vector<MPoly> fs;  // explicit re-embedding polynomials
  std::optional<PlaneMatrix> plane;
};

// Throws ParseError for malformed expressions, std::invalid_argument for a
// malformed file, DomainError for curves outside the supported strata.
CurveFile parse_curve_file(const Json& j);
CurveFile load_curve_file(const std::string& path);

Json rat_json(const Rat& r);
Json to_json(const TropPoly& p);
Json to_json(const TropCurve& c);
Json to_json(const BuildingBlock& b);
Json to_json(const ReembedPlan& p);
Json to_json(const Certificate& c);
Json to_json(const Cell3& c);
Json plane_json(const PlaneMatrix& m);

}  // namespace hypertrop::cli
