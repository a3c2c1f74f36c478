#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "l1embed/metric.hpp"
#include "l1embed/tree_network.hpp"

// Placement of terminals inside one quadrant of the enclosing rectangle.
//
// Everything here works in the canonical frame: apex at the origin, quadrant
// {x >= 0, y >= 0}. A terminal u of the quadrant lies on its level segment
// {(s, delta_u - s) : 0 <= s <= delta_u}; callers map the real quadrant in and
// out with a sign flip per axis.

namespace l1embed {

/// Why a candidate placement of T(P) could not be extended.
struct SceneFailure {
  enum class Kind {
    InconsistentCornerDistances,
    EmptyIntersection,
    FixedQuadrantOccupied,
    ComponentOrderViolation,
    RigidPlacementInfeasible,
    FixedComponentContradiction,
    AssemblyConditionViolated,
    NotIsometric,
  };
  Kind kind;
  std::string detail;
};

const char* to_string(SceneFailure::Kind kind);

template <class T>
using Outcome = std::variant<T, SceneFailure>;

template <class T>
bool failed(const Outcome<T>& o) {
  return std::holds_alternative<SceneFailure>(o);
}

struct QuadrantPoint {
  std::size_t id;  // index into the metric
  Scalar delta;    // l1 distance from the apex
};

/// Locus {(s, delta - s) : 0 <= s <= delta}, or the whole line x + y = delta
/// when `whole_line` is set.
struct LevelSegment {
  Scalar delta;
  bool whole_line = false;

  PlanePoint at(const Scalar& s) const { return {s, delta - s}; }
  bool contains(const PlanePoint& p) const { return p.x.sign() >= 0 && p.y.sign() >= 0 && p.x + p.y == delta; }
};

/// Points z of a level segment with ||z - center||_1 = radius. The answer is
/// empty, one or two points, or a whole sub-segment [lo, hi] (by x coordinate).
struct SegmentIntersection {
  std::vector<Scalar> xs;  // isolated solutions, ascending
  std::optional<std::pair<Scalar, Scalar>> range;

  bool unique() const { return !range && xs.size() == 1; }
  bool empty() const { return !range && xs.empty(); }
};

SegmentIntersection intersect_level_segment(const LevelSegment& seg, const PlanePoint& center, const Scalar& radius);

using Component = std::vector<QuadrantPoint>;

/// Components of the graph joining u, v iff d(u,v) > |delta_u - delta_v|,
/// members sorted by delta and components in delta order. Fails with
/// ComponentOrderViolation when the delta ranges of two components interleave.
Outcome<std::vector<Component>> build_quadrant_graph(const MetricSpace& m, std::vector<QuadrantPoint> points,
                                                     OpCounter* counter = nullptr);

/// Places a component with member `anchor` at `anchor_pos`; every other member
/// is reached through graph edges and must land on its level segment at the
/// right distance from all members placed before it. The first two-way choice
/// takes the smaller x, or the larger when `mirrored`. Without `bounded` the
/// members may leave the quadrant (the shape is translated later).
Outcome<std::vector<PlanePoint>> rigid_placement(const MetricSpace& m, const Component& comp, std::size_t anchor,
                                                 const PlanePoint& anchor_pos, bool mirrored,
                                                 OpCounter* counter = nullptr, bool bounded = true);

/// A component placed independently of the others, with its bounding box.
struct ComponentBox {
  Component members;
  std::vector<PlanePoint> relative;  // offsets from the lower-left corner a
  Scalar width, height;
  Scalar delta_a;  // apex distance of the lower-left corner
  Scalar delta_b;  // apex distance of the upper-right corner
};

/// First member at the middle of its level segment, the rest by rigid placement
/// along whole level lines. Sliding the result along (1,-1) changes neither
/// delta_a nor delta_b, so the box can be moved into place afterwards.
Outcome<ComponentBox> embed_free_component(const MetricSpace& m, const Component& comp,
                                           OpCounter* counter = nullptr);

ComponentBox make_box(const Component& comp, const std::vector<PlanePoint>& positions);

/// Already located terminals that can pin quadrant members: the upmost one with
/// x <= 0 < y, and the rightmost one with y <= 0 < x (canonical frame).
struct Fixers {
  struct Located {
    std::size_t id;
    PlanePoint pos;
  };
  std::optional<Located> upper;
  std::optional<Located> right;
};

struct FixedPrefix {
  std::size_t count = 0;             // components 0..count-1 are fixed
  std::vector<PlanePoint> positions;  // flattened in component/member order
  PlanePoint anchor;                  // where the free chain starts
};

/// Pins members via the fixers, places every component up to the last one
/// holding a pinned member (choosing the reflection that matches all pins) and
/// returns the corner the free components must dominate.
Outcome<FixedPrefix> fix_components(const MetricSpace& m, const std::vector<Component>& comps, const Fixers& fixers,
                                    OpCounter* counter = nullptr);

/// Chains the boxes: each lower-left corner goes to the leftmost point of
/// Q1(previous upper-right corner) on its level segment. Needs
/// delta_b(previous) <= delta_a(next), starting from the anchor.
Outcome<std::vector<std::vector<PlanePoint>>> assemble_boxes(const std::vector<ComponentBox>& boxes,
                                                             const PlanePoint& anchor);

/// Full quadrant pipeline; positions returned in the order of `points`.
Outcome<std::vector<PlanePoint>> place_quadrant(const MetricSpace& m, const std::vector<QuadrantPoint>& points,
                                                const Fixers& fixers, OpCounter* counter = nullptr);

}  // namespace l1embed
