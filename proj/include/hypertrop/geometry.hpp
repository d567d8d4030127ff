#pragma once

#include <array>
#include <numeric>
#include <string>

#include "hypertrop/poly_t.hpp"

namespace hypertrop {

struct Point2 {
  Rat x, y;
  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

using Vec2i = std::array<long, 2>;
using Vec3i = std::array<long, 3>;

inline long igcd(long a, long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

inline Vec2i primitive(Vec2i v) {
  long g = igcd(v[0], v[1]);
  if (g > 1) {
    v[0] /= g;
    v[1] /= g;
  }
  return v;
}

inline Vec3i primitive(Vec3i v) {
  long g = igcd(igcd(v[0], v[1]), v[2]);
  if (g > 1)
    for (auto& c : v) c /= g;
  return v;
}

// Primitive integer direction of a rational vector (nonzero).
Vec2i primitive_dir(const Rat& dx, const Rat& dy);
Vec3i primitive_dir(const Rat& dx, const Rat& dy, const Rat& dz);

// The unique lambda >= 0 with d = lambda * dir for primitive dir.
Rat lattice_length(const Rat& dx, const Rat& dy, const Vec2i& dir);

std::string rat_str(const Rat& r);

}  // namespace hypertrop
