#include "l1embed/planar.hpp"

#include <algorithm>

namespace l1embed {
namespace {

constexpr std::array<std::array<int, 2>, 4> kOutward{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};

Scalar signed_by(const Scalar& v, int sign) { return sign < 0 ? -v : v; }

SceneFailure fail(SceneFailure::Kind kind, std::string detail) { return SceneFailure{kind, std::move(detail)}; }

}  // namespace

PcircResult find_Pcirc(const MetricSpace& m, OpCounter* counter) {
  PcircResult out;
  out.tree = build_tree_network(m, TreeBuildOptions{4}, counter);
  if (out.tree.status == TreeBuild::Status::Failure) {
    const FirstFailure& f = *out.tree.failure;
    TightSpanQuad q = tight_span4(m, f.a, f.b, f.x_i, f.x_j);
    if (!q.degenerate()) {
      out.quad = std::move(q);
      return out;
    }
    // Ties in the attachment rule can hand over a pair (a,b) that sits on the
    // wrong side; any earlier pair completing x_i, x_j to a rectangle will do.
    for (std::size_t y = 0; y < f.x_i && !out.quad; ++y) {
      if (y == f.x_j) continue;
      for (std::size_t z = y + 1; z < f.x_i; ++z) {
        if (z == f.x_j) continue;
        TightSpanQuad alt = tight_span4(m, y, z, f.x_i, f.x_j);
        if (!alt.degenerate()) {
          out.quad = std::move(alt);
          break;
        }
      }
      if (counter) counter->add(f.x_i);
    }
  }
  return out;
}

std::optional<std::vector<Classification>> classify_all(const TightSpanQuad& ts, const MetricSpace& m,
                                                        OpCounter* counter) {
  std::vector<Classification> out;
  out.reserve(m.size());
  for (std::size_t p = 0; p < m.size(); ++p) {
    auto d = corner_distances(ts, m, p);
    if (!d) return std::nullopt;
    out.push_back(*classify_region(*d, ts.side01, ts.side12));
  }
  if (counter) counter->add(16 * m.size());
  return out;
}

std::array<std::size_t, 4> select_P(const TightSpanQuad& pcirc, const std::vector<Classification>& classes) {
  std::array<std::size_t, 4> out = pcirc.terminals;
  for (int k = 0; k < 4; ++k) {
    const PlanePoint corner = pcirc.corner(k);
    const Scalar* best = nullptr;
    for (std::size_t p = 0; p < classes.size(); ++p) {
      if (classes[p].gate != corner) continue;
      if (!best || *best < classes[p].excess) {
        best = &classes[p].excess;
        out[k] = p;
      }
    }
  }
  return out;
}

const char* to_string(Tip tip) {
  switch (tip) {
    case Tip::Corner: return "corner";
    case Tip::Horizontal: return "horizontal";
    case Tip::Vertical: return "vertical";
    case Tip::Free: return "free";
  }
  return "?";
}

PlanePoint PlanarScene::terminal_position(int k) const {
  PlanePoint p = span.corner(k);
  switch (tips[k]) {
    case Tip::Horizontal: p.x += signed_by(span.arms[k], kOutward[k][0]); break;
    case Tip::Vertical: p.y += signed_by(span.arms[k], kOutward[k][1]); break;
    case Tip::Corner: break;
    case Tip::Free: throw std::logic_error("free terminal has no fixed position");
  }
  return p;
}

std::vector<PlanarScene> enumerate_phi0(const TightSpanQuad& ts) {
  if (ts.degenerate()) throw std::invalid_argument("enumerate_phi0 needs a non-degenerate rectangle");
  std::array<std::vector<Tip>, 4> options;
  for (int k = 0; k < 4; ++k)
    options[k] = ts.arms[k].is_zero() ? std::vector<Tip>{Tip::Corner}
                                      : std::vector<Tip>{Tip::Horizontal, Tip::Vertical, Tip::Free};

  // The arm tip's offset from its corner has a zero vertical part for Corner and
  // Horizontal, and a zero horizontal part for Corner and Vertical. Two corners
  // sharing a horizontal side need one zero vertical part; a vertical side, one
  // zero horizontal part.
  auto flat_v = [](Tip t) { return t == Tip::Corner || t == Tip::Horizontal; };
  auto flat_u = [](Tip t) { return t == Tip::Corner || t == Tip::Vertical; };

  std::vector<PlanarScene> scenes;
  for (Tip t0 : options[0])
    for (Tip t1 : options[1])
      for (Tip t2 : options[2])
        for (Tip t3 : options[3]) {
          const std::array<Tip, 4> tips{t0, t1, t2, t3};
          if (!(flat_v(t0) || flat_v(t1)) || !(flat_v(t2) || flat_v(t3))) continue;
          if (!(flat_u(t1) || flat_u(t2)) || !(flat_u(t3) || flat_u(t0))) continue;
          PlanarScene s;
          s.span = ts;
          s.tips = tips;
          s.pi_low = ts.corner(0);
          s.pi_high = ts.corner(2);
          for (int k = 0; k < 4; ++k) {
            if (!s.is_fixed(k)) continue;
            const PlanePoint p = s.terminal_position(k);
            s.pi_low = {min(s.pi_low.x, p.x), min(s.pi_low.y, p.y)};
            s.pi_high = {max(s.pi_high.x, p.x), max(s.pi_high.y, p.y)};
          }
          scenes.push_back(std::move(s));
        }
  std::stable_sort(scenes.begin(), scenes.end(), [](const PlanarScene& a, const PlanarScene& b) {
    auto frees = [](const PlanarScene& s) { return std::count(s.tips.begin(), s.tips.end(), Tip::Free); };
    return frees(a) < frees(b);
  });
  return scenes;
}

QuadrantFrame QuadrantFrame::at_corner(const TightSpanQuad& ts, int k) {
  return QuadrantFrame{ts.corner(k), kOutward[k][0], kOutward[k][1]};
}

PlanePoint QuadrantFrame::to_local(const PlanePoint& p) const {
  return {signed_by(p.x - apex.x, sx), signed_by(p.y - apex.y, sy)};
}

PlanePoint QuadrantFrame::to_world(const PlanePoint& p) const {
  return {apex.x + signed_by(p.x, sx), apex.y + signed_by(p.y, sy)};
}

Outcome<RegionPlacement> place_fixed_regions(const PlanarScene& scene, const MetricSpace& m,
                                             const std::vector<Classification>& classes, OpCounter* counter) {
  const TightSpanQuad& ts = scene.span;
  RegionPlacement out;
  out.located.resize(m.size());
  std::vector<bool> in_p(m.size(), false);
  std::array<std::optional<PlanePoint>, 4> tip;
  for (int k = 0; k < 4; ++k) {
    const std::size_t t = ts.terminals[k];
    in_p[t] = true;
    if (scene.is_fixed(k)) {
      tip[k] = scene.terminal_position(k);
      out.located[t] = tip[k];
    } else {
      out.quadrant_members[k].push_back({t, ts.arms[k]});
    }
  }

  for (std::size_t p = 0; p < m.size(); ++p) {
    if (in_p[p]) continue;
    if (counter) counter->add(4);
    const Classification& c = classes[p];
    if (c.region.kind != Region::Kind::Quad) {
      PlanePoint loc = strip_or_rect_location(c);
      // The spheres around the quadruple must all pass through this location. A
      // free terminal only constrains points opposite its own quadrant.
      for (int k = 0; k < 4; ++k) {
        const std::size_t t = ts.terminals[k];
        if (tip[k]) {
          if (l1_distance(loc, *tip[k]) != m(p, t))
            return fail(SceneFailure::Kind::EmptyIntersection,
                        "terminal " + std::to_string(p) + " misses the sphere around " + std::to_string(t));
        } else {
          const PlanePoint local = QuadrantFrame::at_corner(ts, k).to_local(loc);
          if (local.x.sign() <= 0 && local.y.sign() <= 0 &&
              ts.arms[k] + l1_distance(loc, ts.corner(k)) != m(p, t))
            return fail(SceneFailure::Kind::EmptyIntersection,
                        "terminal " + std::to_string(p) + " misses the sphere around " + std::to_string(t));
        }
      }
      out.located[p] = std::move(loc);
      continue;
    }

    const int k = c.region.index;
    if (!scene.is_fixed(k)) {
      out.quadrant_members[k].push_back({p, c.excess});
      continue;
    }
    // The fixed terminal of this quadrant pins the point on its level segment.
    const QuadrantFrame frame = QuadrantFrame::at_corner(ts, k);
    const LevelSegment seg{c.excess};
    const auto hit = intersect_level_segment(seg, frame.to_local(*tip[k]), m(p, ts.terminals[k]));
    if (hit.empty())
      return fail(SceneFailure::Kind::EmptyIntersection,
                  "terminal " + std::to_string(p) + " has no position in quadrant " + std::to_string(k + 1));
    if (!hit.unique())
      return fail(SceneFailure::Kind::FixedQuadrantOccupied,
                  "terminal " + std::to_string(p) + " lies beyond the fixed terminal of quadrant " +
                      std::to_string(k + 1));
    out.located[p] = frame.to_world(seg.at(hit.xs.front()));
  }
  return out;
}

VerifyResult verify_isometric(const Embedding& e, const MetricSpace& m, OpCounter* counter) {
  VerifyResult r;
  const std::size_t n = m.size();
  if (e.size() != n) {
    r.ok = false;
    return r;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Scalar got = l1_distance(e[i], e[j]);
      if (got != m(i, j)) {
        r.ok = false;
        r.i = i;
        r.j = j;
        r.expected = m(i, j);
        r.actual = std::move(got);
        return r;
      }
    }
    if (counter) counter->add(n - i - 1);
  }
  return r;
}

Outcome<Embedding> extend_scene(const PlanarScene& scene, const MetricSpace& m,
                                const std::vector<Classification>& classes, OpCounter* counter) {
  auto regions = place_fixed_regions(scene, m, classes, counter);
  if (failed(regions)) return std::get<SceneFailure>(regions);
  RegionPlacement& rp = std::get<RegionPlacement>(regions);

  for (int k = 0; k < 4; ++k) {
    const auto& members = rp.quadrant_members[k];
    if (members.empty()) continue;
    const QuadrantFrame frame = QuadrantFrame::at_corner(scene.span, k);
    Fixers fixers;
    for (std::size_t p = 0; p < rp.located.size(); ++p) {
      if (!rp.located[p]) continue;
      const PlanePoint local = frame.to_local(*rp.located[p]);
      if (local.x.sign() <= 0 && local.y.sign() > 0 && (!fixers.upper || fixers.upper->pos.y < local.y))
        fixers.upper = Fixers::Located{p, local};
      if (local.y.sign() <= 0 && local.x.sign() > 0 && (!fixers.right || fixers.right->pos.x < local.x))
        fixers.right = Fixers::Located{p, local};
    }
    if (counter) counter->add(rp.located.size());
    auto placed = place_quadrant(m, members, fixers, counter);
    if (failed(placed)) return std::get<SceneFailure>(placed);
    const auto& local = std::get<std::vector<PlanePoint>>(placed);
    for (std::size_t i = 0; i < members.size(); ++i) rp.located[members[i].id] = frame.to_world(local[i]);
  }

  Embedding e;
  e.reserve(m.size());
  for (auto& p : rp.located) e.push_back(std::move(*p));
  const VerifyResult v = verify_isometric(e, m, counter);
  if (!v.ok)
    return fail(SceneFailure::Kind::NotIsometric, "pair (" + std::to_string(v.i) + "," + std::to_string(v.j) +
                                                      ") at " + v.actual.str() + ", expected " + v.expected.str());
  return e;
}

EmbedResult embed(const MetricSpace& m) {
  EmbedResult result;
  OpCounter counter;
  const std::size_t n = m.size();

  if (n <= 2) {
    result.embeddable = true;
    if (n >= 1) result.points.push_back({0, 0});
    if (n == 2) result.points.push_back({m(0, 1), 0});
    return result;
  }

  PcircResult pc = find_Pcirc(m, &counter);
  if (!pc.quad) {
    result.route = EmbedResult::Route::Tree;
    if (pc.tree.status == TreeBuild::Status::Complete && count_leaves(pc.tree.tree) <= 4) {
      Embedding e = embed_tree(pc.tree.tree);
      if (!verify_isometric(e, m, &counter).ok) throw std::logic_error("tree embedding failed verification");
      result.embeddable = true;
      result.points = std::move(e);
    }
    result.ops = counter.ops;
    return result;
  }

  result.route = EmbedResult::Route::Planar;
  auto finish = [&]() {
    result.ops = counter.ops;
    return result;
  };

  auto circ_classes = classify_all(*pc.quad, m, &counter);
  if (!circ_classes) return finish();
  const auto quad = select_P(*pc.quad, *circ_classes);
  auto span = tight_span4_cyclic(m, quad);
  if (!span || span->degenerate()) return finish();
  auto classes = classify_all(*span, m, &counter);
  if (!classes) return finish();

  for (const PlanarScene& scene : enumerate_phi0(*span)) {
    ++result.scenes_tried;
    auto attempt = extend_scene(scene, m, *classes, &counter);
    if (failed(attempt)) {
      result.scene_failures.push_back(std::get<SceneFailure>(attempt));
      continue;
    }
    result.embeddable = true;
    result.points = std::move(std::get<Embedding>(attempt));
    break;
  }
  return finish();
}

}  // namespace l1embed
