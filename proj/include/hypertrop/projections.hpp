#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hypertrop/hyperelliptic.hpp"
#include "hypertrop/tropical.hpp"

namespace hypertrop {

// g(x, z + h(x)) for f = y - h(x); variables {x, z}.
MPoly project_xz(const MPoly& g, const MPoly& f);
// Res_x(g, z - f) with content and monomial factors removed; variables {y, z}.
MPoly project_yz(const MPoly& g, const MPoly& f);

// Unimodular 3x3 integer matrix M. New coordinates (u, v, w) = M (x, y, z);
// the projection keeps (u, v) and collapses the kernel direction of the
// first two rows.
using PlaneMatrix = std::array<std::array<long, 3>, 3>;

PlaneMatrix default_plane();
// Candidates tried in order when the default plane is parallel to a cell.
std::vector<PlaneMatrix> fallback_planes();
// Collapsed direction (third column of M^{-1}).
std::array<long, 3> plane_kernel(const PlaneMatrix& m);
// Empty when the plane is admissible for trop(z - f), otherwise the reason.
std::string plane_violation(const PlaneMatrix& m, const MPoly& f);
// Image of V(g, z - f) under the monomial map; variables {u, v}.
// Throws InvalidPlaneError when plane_violation is nonempty or M is not
// unimodular.
MPoly project_generic(const MPoly& g, const MPoly& f, const PlaneMatrix& m);
// First admissible plane among the default and the fallbacks.
PlaneMatrix choose_plane(const std::vector<MPoly>& fs);

// Affine form a . p + b on R^3.
struct AffineForm {
  std::array<Rat, 3> a{};
  Rat b;
  Rat eval(const std::array<Rat, 3>& p) const { return a[0] * p[0] + a[1] * p[1] + a[2] * p[2] + b; }
};

// Polyhedron {p : eqs(p) = 0, ineqs(p) >= 0}.
struct Cell3 {
  std::vector<AffineForm> eqs;
  std::vector<AffineForm> ineqs;
  int dim = 2;
  std::string label;
};

enum class Convention { Min, Max };

struct PolyComplex3 {
  Convention convention = Convention::Min;
  std::vector<Cell3> cells;
};

// Modification of R^2 along F. Min: coordinates are valuations and the
// attached cells point along +e3. Max: the same complex in negated
// coordinates, so attached cells point along -e3.
PolyComplex3 modification_complex(const TropPoly& F, Convention conv = Convention::Min);

bool same_polyhedron(const Cell3& a, const Cell3& b);
// Irredundant inequalities.
Cell3 reduce_cell(const Cell3& c);
std::string to_string(const Cell3& c, const std::array<std::string, 3>& names = {"X", "Y", "Z"});

// Tropical curve in R^n given by vertices, bounded edges and rays.
struct SpaceCurve {
  struct Edge {
    int v0 = 0;
    int v1 = -1;  // -1 for a ray
    std::vector<long> dir;  // primitive, from v0
    Rat length;              // lattice length, unused for rays
    int mult = 0;
  };
  std::vector<std::string> coords;
  std::vector<std::vector<Rat>> vertices;
  std::vector<Edge> edges;

  std::vector<int> valences() const;
  MetricGraph bounded_graph() const;
  int first_betti() const { return bounded_graph().first_betti(); }
  // Edge indices on the minimal subgraph carrying all cycles.
  std::vector<int> core_edges() const;
  std::vector<Rat> cycle_lengths() const { return bounded_graph().cycle_lengths(); }
  std::vector<std::string> balancing_failures() const;
  // Outgoing primitive directions at vertex v with their multiplicities.
  std::vector<std::pair<std::vector<long>, int>> star(int v) const;
};

// True when no proper nonzero sub-weighting of the star is balanced. For a
// balanced star this means the initial degeneration at the vertex is
// irreducible and reduced, i.e. the vertex has tropical multiplicity one.
// Three-valent stars with multiplicity-one edges always qualify.
bool star_multiplicity_one(const std::vector<std::pair<std::vector<long>, int>>& star);

struct ProjectionEdge {
  std::string projection;
  int id = 0;
  int mult = 0;
  std::array<Vec2i, 2> dual;
};

struct Irregularity {
  int type = 0;  // 1..4
  std::string projection;
  std::string detail;
};

enum class Verdict { Faithful, NotCertified };

struct Certificate {
  Verdict verdict = Verdict::NotCertified;
  std::vector<std::string> reasons;
  SpaceCurve curve;
  std::vector<ProjectionEdge> edge_table;
  std::vector<Rat> cycle_lengths;
  std::vector<int> skeleton_valences;
  std::vector<Irregularity> irregularities;
  std::optional<PlaneMatrix> plane;
};

// Reconstructs trop V(g, z_1 - f_1, ...) and checks that it has `genus`
// independent cycles made of multiplicity-one edges with three-valent
// vertices. Never returns Faithful when any step is ambiguous.
Certificate certify_embedding(const MPoly& g, const std::vector<MPoly>& fs, int genus,
                              std::optional<PlaneMatrix> plane = std::nullopt);
Certificate certify_faithful(const HECurve& c, const ReembedPlan& plan,
                             std::optional<PlaneMatrix> plane = std::nullopt);

// Independent re-check of a certificate's skeleton data.
bool audit_certificate(const Certificate& cert, int genus);

// Plan whose coefficient signs certify: the constructed plan first, then
// each subset of flipped cycle coefficients in order. Returns the first
// Faithful one, or the constructed plan and its certificate.
struct SignedPlan {
  ReembedPlan plan;
  Certificate certificate;
  std::vector<int> flipped;  // cycle indices j whose coefficient sign changed
};
SignedPlan certified_plan(const HECurve& c, bool combine, std::optional<PlaneMatrix> plane = std::nullopt);

}  // namespace hypertrop
