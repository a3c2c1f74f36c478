#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "l1embed/metric.hpp"
#include "l1embed/quadrant.hpp"
#include "l1embed/tight_span.hpp"
#include "l1embed/tree_network.hpp"

namespace l1embed {

/// Result of the first stage: either a quadruple whose tight span holds a
/// proper rectangle, or the tree network of the whole space (possibly cut
/// short once it had more than four leaves). A failed build with no
/// rectangle through the two failing points leaves `quad` empty.
struct PcircResult {
  std::optional<TightSpanQuad> quad;
  TreeBuild tree;
};

PcircResult find_Pcirc(const MetricSpace& m, OpCounter* counter = nullptr);

/// Corner distances, gate and region of every point relative to the placed
/// rectangle of `ts`; nullopt as soon as one point admits no location.
std::optional<std::vector<Classification>> classify_all(const TightSpanQuad& ts, const MetricSpace& m,
                                                        OpCounter* counter = nullptr);

/// For each corner k, the point whose gate is that corner and which lies
/// farthest from it (ties: smallest index). Result is in corner order.
std::array<std::size_t, 4> select_P(const TightSpanQuad& pcirc, const std::vector<Classification>& classes);

/// How the segment hanging off a corner is drawn.
enum class Tip {
  Corner,      // zero-length arm, terminal on the corner
  Horizontal,  // arm leaves the corner horizontally
  Vertical,    // arm leaves the corner vertically
  Free,        // only the level segment of the terminal is known
};

const char* to_string(Tip tip);

/// One isometric placement of T(P): the rectangle is [0,W]x[0,H] with the
/// terminal of corner k at its k-th corner, and each arm drawn as `tips[k]`.
struct PlanarScene {
  TightSpanQuad span;
  std::array<Tip, 4> tips{};
  PlanePoint pi_low, pi_high;  // enclosing rectangle of R and the fixed terminals

  bool is_fixed(int k) const { return tips[k] != Tip::Free; }
  /// Position of a fixed terminal.
  PlanePoint terminal_position(int k) const;
};

/// All placements of T(P) up to symmetries of the l1 plane, fully fixed scenes
/// first. Requires a non-degenerate rectangle.
std::vector<PlanarScene> enumerate_phi0(const TightSpanQuad& ts);

/// Maps between the plane and the canonical frame of the quadrant at corner k.
struct QuadrantFrame {
  PlanePoint apex;
  int sx = 1, sy = 1;

  static QuadrantFrame at_corner(const TightSpanQuad& ts, int k);
  PlanePoint to_local(const PlanePoint& p) const;
  PlanePoint to_world(const PlanePoint& p) const;
};

/// Partial placement of a scene: every terminal except those of free quadrants.
struct RegionPlacement {
  std::vector<std::optional<PlanePoint>> located;
  std::array<std::vector<QuadrantPoint>, 4> quadrant_members;  // only filled for free corners
};

/// Places P, the rectangle and strip points, and the points in quadrants of
/// fixed terminals (each pinned by that terminal). `classes` are relative to
/// the rectangle of scene.span.
Outcome<RegionPlacement> place_fixed_regions(const PlanarScene& scene, const MetricSpace& m,
                                             const std::vector<Classification>& classes,
                                             OpCounter* counter = nullptr);

struct VerifyResult {
  bool ok = true;
  std::size_t i = 0, j = 0;  // first violating pair when !ok
  Scalar expected, actual;
};

/// Exact check that ||E(u) - E(v)||_1 = d(u,v) for every pair.
VerifyResult verify_isometric(const Embedding& e, const MetricSpace& m, OpCounter* counter = nullptr);

/// Places every terminal for one scene and verifies the result.
Outcome<Embedding> extend_scene(const PlanarScene& scene, const MetricSpace& m,
                                const std::vector<Classification>& classes, OpCounter* counter = nullptr);

struct EmbedResult {
  enum class Route { Direct, Tree, Planar };
  bool embeddable = false;
  Embedding points;
  Route route = Route::Direct;
  std::size_t scenes_tried = 0;
  std::uint64_t ops = 0;
  std::vector<SceneFailure> scene_failures;
};

/// Decides whether m embeds isometrically in the l1 plane and returns exact
/// coordinates when it does. Every returned embedding has been verified.
EmbedResult embed(const MetricSpace& m);

}  // namespace l1embed
