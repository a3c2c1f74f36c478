#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "l1embed/metric.hpp"

namespace l1embed {

/// (y,z)_x = (d(x,y) + d(x,z) - d(y,z)) / 2
Scalar gromov_product(const MetricSpace& m, std::size_t x, std::size_t y, std::size_t z);

/// Three arms meeting at a Steiner point; arms[i] belongs to the i-th argument.
struct TightSpanTriple {
  std::array<Scalar, 3> arms;
};

TightSpanTriple tight_span3(const MetricSpace& m, std::size_t x, std::size_t y, std::size_t z);

/// Thrown when the four-point consistency equations fail. Cannot happen for a
/// valid metric, so it signals a bug rather than an unembeddable input.
class InconsistentQuad : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Tight span of four points: an l1 rectangle with a segment hanging off each
/// corner.
///
/// Terminals are stored in cyclic corner order, so terminals[k] hangs off
/// corner k and (0,2), (1,3) are the opposite pairs realizing the largest
/// matching sum. Once placed, corner k sits at (0,0), (W,0), (W,H), (0,H) for
/// k = 0..3 with W = side01 and H = side12.
struct TightSpanQuad {
  std::array<std::size_t, 4> terminals{};
  std::array<Scalar, 4> arms;
  Scalar side01;
  Scalar side12;
  // Orientation-free view: (S_max - S_mid) / 2 and (S_max - S_min) / 2.
  Scalar width;
  Scalar height;

  bool degenerate() const { return side01.is_zero() || side12.is_zero(); }

  PlanePoint corner(int k) const;
  /// l1 distance between two corners inside the placed rectangle.
  Scalar corner_path(int k, int l) const;
  /// Distance inside the tight span from the terminal on corner t to corner k.
  Scalar tip_to_corner(int t, int k) const { return arms[t] + corner_path(t, k); }
};

/// Picks the cyclic order from the largest matching sum (ties prefer p1-p3,
/// then p1-p4, then p1-p2 as the opposite pair) and builds the span.
TightSpanQuad tight_span4(const MetricSpace& m, std::size_t p1, std::size_t p2, std::size_t p3, std::size_t p4);

/// Span for a fixed cyclic order; nullopt when (0,2)+(1,3) is not a largest
/// matching sum for that order.
std::optional<TightSpanQuad> tight_span4_cyclic(const MetricSpace& m, const std::array<std::size_t, 4>& order);

/// Location of a point relative to a placed axis-parallel rectangle.
struct Region {
  enum class Kind { Rect, Strip, Quad };
  Kind kind = Kind::Rect;
  /// Corner index for Quad; side index for Strip (side k joins corners k, k+1).
  int index = 0;

  friend bool operator==(const Region&, const Region&) = default;
};

/// "RECT", "STRIP_1".."STRIP_4", "QUAD_1".."QUAD_4" (1-based).
std::string to_string(const Region& r);

struct Classification {
  Region region;
  PlanePoint gate;  // gate of the point in the rectangle
  Scalar excess;    // l1 distance from the point to its gate
};

using CornerDistances = std::array<Scalar, 4>;

/// Distances from the point to the four corners of a [0,W]x[0,H] rectangle.
CornerDistances corners_of(const PlanePoint& p, const Scalar& w, const Scalar& h);

/// Region, gate and excess implied by four corner distances, or nullopt when no
/// plane location has exactly these corner distances.
std::optional<Classification> classify_region(const CornerDistances& d, const Scalar& w, const Scalar& h);

/// Distances from terminal p to the corners of the placed rectangle of ts:
/// D_k = max over quad terminals t of d(p,t) - (tip_to_corner(t, k)).
/// nullopt when the four values are not realized by any plane location.
std::optional<CornerDistances> corner_distances(const TightSpanQuad& ts, const MetricSpace& m, std::size_t p);

/// The unique location of a classified point outside the quadrants.
PlanePoint strip_or_rect_location(const Classification& c);

}  // namespace l1embed
