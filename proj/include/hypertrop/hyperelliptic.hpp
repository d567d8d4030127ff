#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypertrop/mpoly.hpp"

namespace hypertrop {

// A nonzero root, either as a value or as sign * beta^2.
struct RootSpec {
  RatFunc value;
  std::optional<RatFunc> beta;
  int sign = 1;

  static RootSpec of(const RatFunc& v);
  static RootSpec square(const RatFunc& beta, int sign = 1);
};

// One position of the root list sorted for block detection: position 1 is
// the root 0, later positions follow by decreasing valuation. omega = -val.
struct OrderedRoot {
  Rat omega;
  bool minus_infinity = false;
  int source = -1;          // index into HECurve::roots(), -1 otherwise
  std::optional<Rat> init;  // rational initial coefficient when known
  int group = 0;            // positions with equal omega share a group
};

struct RootGroup {
  int first = 0, size = 0;  // positions
  bool inits_all_equal = false;
  bool inits_distinct = false;
};

// y^2 = x * prod (x - alpha_i), genus 1..3. Curves can also be given by
// their defining polynomial y^2 - h(x) with h = x * q(x) monic; the root data
// is then read off the Newton polygon of q.
class HECurve {
 public:
  static HECurve from_roots(std::vector<RootSpec> roots);
  static HECurve from_poly(const MPoly& g);

  int genus() const { return genus_; }
  bool has_roots() const { return !roots_.empty(); }
  const std::vector<RootSpec>& roots() const { return roots_; }
  // h(x) with g = y^2 - h.
  const MPoly& h() const { return h_; }
  const MPoly& defining_poly() const { return g_; }
  // Positions 1..2g+1 (index 0 is position 1).
  const std::vector<OrderedRoot>& ordered() const { return ordered_; }
  const std::vector<RootGroup>& groups() const { return groups_; }

 private:
  void build_groups();

  int genus_ = 0;
  std::vector<RootSpec> roots_;
  MPoly h_, g_;
  std::vector<OrderedRoot> ordered_;
  std::vector<RootGroup> groups_;
};

MPoly defining_poly(const HECurve& c);

enum class BlockKind { ThreeTheta, TwoTheta, Cycle, KPoint, Bridge, PointConnector };
std::string to_string(BlockKind k);

struct BuildingBlock {
  BlockKind kind;
  int start_index = 1;  // subgraph at x^i
  int first_position = 1, last_position = 1;
  int k = 0;  // size of a k-point
  // Number of independent cycles the block carries.
  int cycles() const;
  // Indices j of the multiplicity-2 edges dual to (0,2)-(2j,0) it covers.
  std::vector<int> cycle_indices() const;
};

std::vector<BuildingBlock> detect_blocks(const HECurve& c);
int expected_betti(const std::vector<BuildingBlock>& blocks);

struct BlockReembedding {
  MPoly f;
  std::vector<int> sign_flipped;  // cycle indices j whose coefficient used +prod
};

// f = y - sum_j c_j x^j over the block's cycles; throws NotASquareError,
// ConstructionError (pass-through failure) or DomainError for blocks that
// carry no genus.
BlockReembedding reembedding_for_block(const BuildingBlock& b, const HECurve& c);

MPoly combine_reembeddings(const std::vector<MPoly>& fs, const HECurve& c);

struct ReembedPlan {
  std::vector<BuildingBlock> blocks;
  std::vector<MPoly> fs;
  std::vector<std::string> new_vars;
  std::vector<MPoly> generators;  // g, z_1 - f_1, ...
  bool combined = false;
  std::vector<std::string> notes;
};

ReembedPlan reembedding_plan(const HECurve& c, bool combine);
// Plan from explicit polynomials (used for sign retries).
ReembedPlan plan_from_fs(const HECurve& c, const std::vector<BuildingBlock>& blocks, std::vector<MPoly> fs,
                         bool combined);

// The pass-through condition: trop(f) contains every multiplicity >= 2 edge
// of trop(g) dual to (0,2)-(2j,0) for j in js. Returns an empty string on
// success, otherwise a description of the first missed edge.
std::string pass_through_failure(const MPoly& f, const MPoly& g, const std::vector<int>& js);

// j-invariant of a plane cubic via the Aronhold invariants S and T,
// normalized to 1728 * 4a^3 / (4a^3 + 27b^2) on y^2 = x^3 + a x + b.
RatFunc j_invariant_cubic(const MPoly& f);

}  // namespace hypertrop
