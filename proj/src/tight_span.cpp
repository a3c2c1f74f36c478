#include "l1embed/tight_span.hpp"

namespace l1embed {

Scalar gromov_product(const MetricSpace& m, std::size_t x, std::size_t y, std::size_t z) {
  return (m(x, y) + m(x, z) - m(y, z)).half();
}

TightSpanTriple tight_span3(const MetricSpace& m, std::size_t x, std::size_t y, std::size_t z) {
  return TightSpanTriple{{gromov_product(m, x, y, z), gromov_product(m, y, x, z), gromov_product(m, z, x, y)}};
}

PlanePoint TightSpanQuad::corner(int k) const {
  switch (k & 3) {
    case 0: return {0, 0};
    case 1: return {side01, 0};
    case 2: return {side01, side12};
    default: return {0, side12};
  }
}

Scalar TightSpanQuad::corner_path(int k, int l) const {
  // Corners 0,3 share x = 0 and 1,2 share x = W; 0,1 share y = 0 and 2,3 share y = H.
  k &= 3;
  l &= 3;
  const bool left_k = (k == 0 || k == 3), left_l = (l == 0 || l == 3);
  const bool low_k = (k == 0 || k == 1), low_l = (l == 0 || l == 1);
  Scalar out;
  if (left_k != left_l) out += side01;
  if (low_k != low_l) out += side12;
  return out;
}

std::optional<TightSpanQuad> tight_span4_cyclic(const MetricSpace& m, const std::array<std::size_t, 4>& t) {
  const Scalar opposite = m(t[0], t[2]) + m(t[1], t[3]);
  const Scalar across01 = m(t[0], t[1]) + m(t[2], t[3]);  // pairs split by the vertical sides
  const Scalar across12 = m(t[1], t[2]) + m(t[0], t[3]);
  if (opposite < across01 || opposite < across12) return std::nullopt;

  TightSpanQuad q;
  q.terminals = t;
  q.side01 = (opposite - across12).half();
  q.side12 = (opposite - across01).half();
  for (int k = 0; k < 4; ++k)
    q.arms[k] = gromov_product(m, t[k], t[(k + 3) % 4], t[(k + 1) % 4]);

  const Scalar& mid = max(across01, across12);
  const Scalar& low = min(across01, across12);
  q.width = (opposite - mid).half();
  q.height = (opposite - low).half();

  for (int a = 0; a < 4; ++a) {
    if (q.arms[a].sign() < 0) throw InconsistentQuad("negative arm in four-point tight span");
    for (int b = a + 1; b < 4; ++b)
      if (q.arms[a] + q.corner_path(a, b) + q.arms[b] != m(t[a], t[b]))
        throw InconsistentQuad("four-point tight span does not reproduce d(" + std::to_string(t[a]) + "," +
                               std::to_string(t[b]) + ")");
  }
  return q;
}

TightSpanQuad tight_span4(const MetricSpace& m, std::size_t p1, std::size_t p2, std::size_t p3, std::size_t p4) {
  const Scalar s13 = m(p1, p3) + m(p2, p4);
  const Scalar s14 = m(p1, p4) + m(p2, p3);
  const Scalar s12 = m(p1, p2) + m(p3, p4);
  std::array<std::size_t, 4> order{p1, p2, p3, p4};
  if (s13 >= s14 && s13 >= s12) {
    order = {p1, p2, p3, p4};
  } else if (s14 >= s12) {
    order = {p1, p2, p4, p3};
  } else {
    order = {p1, p3, p2, p4};
  }
  auto q = tight_span4_cyclic(m, order);
  if (!q) throw InconsistentQuad("largest matching sum not realized by the chosen cyclic order");
  return *q;
}

std::string to_string(const Region& r) {
  switch (r.kind) {
    case Region::Kind::Rect: return "RECT";
    case Region::Kind::Strip: return "STRIP_" + std::to_string(r.index + 1);
    case Region::Kind::Quad: return "QUAD_" + std::to_string(r.index + 1);
  }
  return "?";
}

CornerDistances corners_of(const PlanePoint& p, const Scalar& w, const Scalar& h) {
  return {l1_distance(p, {0, 0}), l1_distance(p, {w, 0}), l1_distance(p, {w, h}), l1_distance(p, {0, h})};
}

std::optional<Classification> classify_region(const CornerDistances& d, const Scalar& w, const Scalar& h) {
  // For z = (x, y): d0 - d1 = clamp(2x - W, -W, W), d0 - d3 = clamp(2y - H, -H, H)
  // and d0 + d2 = d1 + d3 = W + H + 2 * dist(z, rectangle).
  if (d[0] + d[2] != d[1] + d[3]) return std::nullopt;
  const Scalar dx = d[0] - d[1];
  const Scalar dy = d[0] - d[3];
  if (w < dx.abs() || h < dy.abs()) return std::nullopt;
  Scalar excess = d[0] + d[2] - w - h;
  if (excess.sign() < 0) return std::nullopt;
  excess = excess.half();

  Classification c;
  c.gate = {(dx + w).half(), (dy + h).half()};
  c.excess = excess;
  if (excess.is_zero()) {
    c.region = {Region::Kind::Rect, 0};
    return c;
  }
  const bool at_left = c.gate.x.is_zero(), at_right = c.gate.x == w;
  const bool at_bottom = c.gate.y.is_zero(), at_top = c.gate.y == h;
  // A gate on a corner may also match both boundary tests when a side has length zero;
  // callers only classify against non-degenerate rectangles.
  if ((at_left || at_right) && (at_bottom || at_top)) {
    int k = at_bottom ? (at_left ? 0 : 1) : (at_right ? 2 : 3);
    c.region = {Region::Kind::Quad, k};
  } else if (at_bottom) {
    c.region = {Region::Kind::Strip, 0};
  } else if (at_right) {
    c.region = {Region::Kind::Strip, 1};
  } else if (at_top) {
    c.region = {Region::Kind::Strip, 2};
  } else if (at_left) {
    c.region = {Region::Kind::Strip, 3};
  } else {
    return std::nullopt;  // interior gate with positive excess
  }
  return c;
}

std::optional<CornerDistances> corner_distances(const TightSpanQuad& ts, const MetricSpace& m, std::size_t p) {
  CornerDistances out;
  for (int k = 0; k < 4; ++k) {
    for (int t = 0; t < 4; ++t) {
      Scalar v = m(p, ts.terminals[t]) - ts.tip_to_corner(t, k);
      if (t == 0 || out[k] < v) out[k] = std::move(v);
    }
  }
  if (!classify_region(out, ts.side01, ts.side12)) return std::nullopt;
  return out;
}

PlanePoint strip_or_rect_location(const Classification& c) {
  PlanePoint p = c.gate;
  if (c.region.kind == Region::Kind::Strip) {
    switch (c.region.index) {
      case 0: p.y -= c.excess; break;
      case 1: p.x += c.excess; break;
      case 2: p.y += c.excess; break;
      default: p.x -= c.excess; break;
    }
  }
  return p;
}

}  // namespace l1embed
