#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hypertrop::cli {

namespace {

struct Box {
  double x0 = -1, y0 = -1, x1 = 1, y1 = 1;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

// Maps model coordinates to the canvas with a common scale and y pointing up.
class Canvas {
 public:
  Canvas(Box b, int side) : box_(b), side_(side) {
    double w = std::max(b.x1 - b.x0, 1e-9), h = std::max(b.y1 - b.y0, 1e-9);
    scale_ = (side - 2 * kPad) / std::max(w, h);
  }
  double sx(double x) const { return kPad + (x - box_.x0) * scale_; }
  double sy(double y) const { return side_ - kPad - (y - box_.y0) * scale_; }

  void line(double ax, double ay, double bx, double by, const std::string& style) {
    out_ << "  <line x1=\"" << num(sx(ax)) << "\" y1=\"" << num(sy(ay)) << "\" x2=\"" << num(sx(bx)) << "\" y2=\""
         << num(sy(by)) << "\" " << style << "/>\n";
  }
  void dot(double x, double y, double r, const std::string& style) {
    out_ << "  <circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y)) << "\" r=\"" << num(r) << "\" " << style
         << "/>\n";
  }
  void text(double x, double y, const std::string& s) {
    out_ << "  <text x=\"" << num(sx(x) + 4) << "\" y=\"" << num(sy(y) - 4) << "\" font-size=\"12\">" << s
         << "</text>\n";
  }
  void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
    out_ << "  <polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      out_ << (i ? " " : "") << num(sx(pts[i].first)) << "," << num(sy(pts[i].second));
    out_ << "\" " << style << "/>\n";
  }
  void axes() {
    const std::string style = "stroke=\"#bbbbbb\" stroke-width=\"1\"";
    if (box_.y0 <= 0 && 0 <= box_.y1) line(box_.x0, 0, box_.x1, 0, style);
    if (box_.x0 <= 0 && 0 <= box_.x1) line(0, box_.y0, 0, box_.y1, style);
  }
  std::string str() const {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side_ << "\" height=\"" << side_
      << "\" viewBox=\"0 0 " << side_ << " " << side_ << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << out_.str() << "</svg>\n";
    return s.str();
  }

 private:
  static constexpr double kPad = 20;
  Box box_;
  int side_;
  double scale_;
  std::ostringstream out_;
};

double d(const Rat& r) { return r.get_d(); }

Box padded(const std::vector<std::pair<double, double>>& pts, double margin) {
  if (pts.empty()) return {-margin, -margin, margin, margin};
  Box b{pts[0].first, pts[0].second, pts[0].first, pts[0].second};
  for (const auto& [x, y] : pts) {
    b.x0 = std::min(b.x0, x);
    b.y0 = std::min(b.y0, y);
    b.x1 = std::max(b.x1, x);
    b.y1 = std::max(b.y1, y);
  }
  b.x0 -= margin;
  b.y0 -= margin;
  b.x1 += margin;
  b.y1 += margin;
  return b;
}

// Largest s >= 0 keeping p + s v inside the box.
double exit_param(const Box& b, double px, double py, double vx, double vy) {
  double s = 1e300;
  if (vx > 0) s = std::min(s, (b.x1 - px) / vx);
  if (vx < 0) s = std::min(s, (b.x0 - px) / vx);
  if (vy > 0) s = std::min(s, (b.y1 - py) / vy);
  if (vy < 0) s = std::min(s, (b.y0 - py) / vy);
  return std::max(s, 0.0);
}

std::string stroke(int mult) {
  return "stroke=\"black\" stroke-width=\"" + std::to_string(mult == 1 ? 2 : 2 + 2 * (mult - 1)) + "\"";
}

using Row = std::array<Rat, 4>;  // a . p + b

std::optional<std::array<Rat, 3>> solve3(const Row& r0, const Row& r1, const Row& r2) {
  std::array<Row, 3> m{r0, r1, r2};
  for (int c = 0; c < 3; ++c) {
    int p = c;
    while (p < 3 && m[p][c] == 0) ++p;
    if (p == 3) return std::nullopt;
    std::swap(m[p], m[c]);
    for (int i = 0; i < 3; ++i)
      if (i != c && m[i][c] != 0) {
        Rat f = m[i][c] / m[c][c];
        for (int k = 0; k < 4; ++k) m[i][k] -= f * m[c][k];
      }
  }
  return std::array<Rat, 3>{-m[0][3] / m[0][0], -m[1][3] / m[1][1], -m[2][3] / m[2][2]};
}

Row row_of(const AffineForm& f) { return {f.a[0], f.a[1], f.a[2], f.b}; }

bool satisfies(const Cell3& c, const std::vector<Row>& extra, const std::array<Rat, 3>& p) {
  for (const auto& e : c.eqs)
    if (e.eval(p) != 0) return false;
  for (const auto& e : c.ineqs)
    if (e.eval(p) < 0) return false;
  for (const auto& r : extra)
    if (r[0] * p[0] + r[1] * p[1] + r[2] * p[2] + r[3] < 0) return false;
  return true;
}

// Vertices of the cell intersected with the extra half-spaces.
std::vector<std::array<Rat, 3>> cell_vertices(const Cell3& c, const std::vector<Row>& extra) {
  std::vector<Row> planes;
  for (const auto& e : c.eqs) planes.push_back(row_of(e));
  for (const auto& e : c.ineqs) planes.push_back(row_of(e));
  planes.insert(planes.end(), extra.begin(), extra.end());
  std::set<std::array<Rat, 3>> pts;
  const std::size_t n = planes.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (auto p = solve3(planes[i], planes[j], planes[k]); p && satisfies(c, extra, *p)) pts.insert(*p);
  return {pts.begin(), pts.end()};
}

}  // namespace

std::string curve_svg(const TropCurve& c, const SvgOptions& opt) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& v : c.vertices) pts.push_back({d(v.x), d(v.y)});
  for (const auto& l : c.lines) pts.push_back({d(l.point.x), d(l.point.y)});
  Box b = padded(pts, opt.margin);
  Canvas cv(b, opt.canvas);
  cv.axes();
  for (const auto& e : c.edges) {
    const auto &p = c.vertices[e.v0], &q = c.vertices[e.v1];
    cv.line(d(p.x), d(p.y), d(q.x), d(q.y), stroke(e.mult));
    if (e.mult > 1) cv.text((d(p.x) + d(q.x)) / 2, (d(p.y) + d(q.y)) / 2, std::to_string(e.mult));
  }
  auto ray = [&](double px, double py, const Vec2i& dir, int mult) {
    double s = exit_param(b, px, py, dir[0], dir[1]);
    cv.line(px, py, px + s * dir[0], py + s * dir[1], stroke(mult));
    if (mult > 1) cv.text(px + s * dir[0] / 2, py + s * dir[1] / 2, std::to_string(mult));
  };
  for (const auto& r : c.rays) ray(d(c.vertices[r.v].x), d(c.vertices[r.v].y), r.dir, r.mult);
  for (const auto& l : c.lines) {
    ray(d(l.point.x), d(l.point.y), l.dir, l.mult);
    ray(d(l.point.x), d(l.point.y), {-l.dir[0], -l.dir[1]}, l.mult);
  }
  for (const auto& v : c.vertices) cv.dot(d(v.x), d(v.y), 4, "fill=\"#c0392b\"");
  return cv.str();
}

std::string subdivision_svg(const TropCurve& c, const SvgOptions& opt) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : c.subdivision.points) pts.push_back({double(p[0]), double(p[1])});
  Box b = padded(pts, 1);
  Canvas cv(b, opt.canvas);
  auto seg = [&](const std::array<Vec2i, 2>& e, int mult) {
    cv.line(double(e[0][0]), double(e[0][1]), double(e[1][0]), double(e[1][1]), stroke(mult));
  };
  for (const auto& e : c.edges) seg(e.dual, 1);
  for (const auto& r : c.rays) seg(r.dual, 1);
  for (const auto& l : c.lines) seg(l.dual, 1);
  std::set<Vec2i> used;
  for (const auto& cell : c.subdivision.cells)
    for (int i : cell) used.insert(c.subdivision.points[i]);
  for (const auto& p : c.subdivision.points)
    cv.dot(double(p[0]), double(p[1]), 4, used.count(p) ? "fill=\"black\"" : "fill=\"white\" stroke=\"black\"");
  return cv.str();
}

std::string complex_svg(const PolyComplex3& pc, const SvgOptions& opt,
                        const std::array<std::array<double, 3>, 2>& view) {
  // Vertices of the complex fix the region of interest.
  std::vector<std::array<Rat, 3>> corners;
  for (const auto& c : pc.cells)
    for (const auto& p : cell_vertices(c, {})) corners.push_back(p);
  std::array<Rat, 3> lo{Rat(0), Rat(0), Rat(0)}, hi = lo;
  if (!corners.empty()) {
    lo = hi = corners[0];
    for (const auto& p : corners)
      for (int k = 0; k < 3; ++k) {
        lo[k] = std::min(lo[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
  }
  Rat m(static_cast<long>(std::ceil(opt.margin)));
  std::vector<Row> box;
  for (int k = 0; k < 3; ++k) {
    Row up{Rat(0), Rat(0), Rat(0), hi[k] + m}, down{Rat(0), Rat(0), Rat(0), m - lo[k]};
    up[k] = -1;
    down[k] = 1;
    box.push_back(up);
    box.push_back(down);
  }
  auto project = [&](const std::array<Rat, 3>& p) {
    return std::pair<double, double>{view[0][0] * d(p[0]) + view[0][1] * d(p[1]) + view[0][2] * d(p[2]),
                                     view[1][0] * d(p[0]) + view[1][1] * d(p[1]) + view[1][2] * d(p[2])};
  };
  std::vector<std::vector<std::pair<double, double>>> polys;
  std::vector<std::pair<double, double>> all;
  for (const auto& c : pc.cells) {
    auto vs = cell_vertices(c, box);
    std::vector<std::pair<double, double>> poly;
    for (const auto& p : vs) poly.push_back(project(p));
    // Convex polygon: order by angle around the centroid.
    double cx = 0, cy = 0;
    for (const auto& [x, y] : poly) {
      cx += x;
      cy += y;
    }
    if (!poly.empty()) {
      cx /= poly.size();
      cy /= poly.size();
    }
    std::sort(poly.begin(), poly.end(), [&](const auto& a, const auto& b) {
      return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
    });
    all.insert(all.end(), poly.begin(), poly.end());
    polys.push_back(poly);
  }
  Canvas cv(padded(all, 0.5), opt.canvas);
  for (std::size_t i = 0; i < polys.size(); ++i) {
    bool graph = pc.cells[i].label.rfind("Z =", 0) == 0;
    std::string style = graph ? "fill=\"#aed6f1\" fill-opacity=\"0.6\" stroke=\"#1b4f72\""
                              : "fill=\"#f5b7b1\" fill-opacity=\"0.6\" stroke=\"#78281f\"";
    if (polys[i].size() >= 3) cv.polygon(polys[i], style);
  }
  return cv.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace hypertrop::cli
