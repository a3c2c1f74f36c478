#include "l1embed/quadrant.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace l1embed {

const char* to_string(SceneFailure::Kind kind) {
  switch (kind) {
    case SceneFailure::Kind::InconsistentCornerDistances: return "InconsistentCornerDistances";
    case SceneFailure::Kind::EmptyIntersection: return "EmptyIntersection";
    case SceneFailure::Kind::FixedQuadrantOccupied: return "FixedQuadrantOccupied";
    case SceneFailure::Kind::ComponentOrderViolation: return "ComponentOrderViolation";
    case SceneFailure::Kind::RigidPlacementInfeasible: return "RigidPlacementInfeasible";
    case SceneFailure::Kind::FixedComponentContradiction: return "FixedComponentContradiction";
    case SceneFailure::Kind::AssemblyConditionViolated: return "AssemblyConditionViolated";
    case SceneFailure::Kind::NotIsometric: return "NotIsometric";
  }
  return "?";
}

SegmentIntersection intersect_level_segment(const LevelSegment& seg, const PlanePoint& center, const Scalar& radius) {
  // ||(s, delta - s) - center||_1 = |s - cx| + |s - (delta - cy)|: flat between the two kinks.
  SegmentIntersection out;
  const Scalar c = seg.delta - center.y;
  const Scalar& lo = min(center.x, c);
  const Scalar& hi = max(center.x, c);
  const Scalar flat = hi - lo;
  if (radius < flat) return out;
  if (radius == flat) {
    Scalar from = seg.whole_line ? lo : max(lo, Scalar(0));
    Scalar to = seg.whole_line ? hi : min(hi, seg.delta);
    if (to < from) return out;
    if (from == to) {
      out.xs.push_back(from);
    } else {
      out.range = std::make_pair(std::move(from), std::move(to));
    }
    return out;
  }
  const Scalar mid = lo + hi;
  for (Scalar s : {(mid - radius).half(), (mid + radius).half()})
    if (seg.whole_line || (s.sign() >= 0 && s <= seg.delta)) out.xs.push_back(std::move(s));
  return out;
}

namespace {

bool adjacent(const MetricSpace& m, const QuadrantPoint& u, const QuadrantPoint& v) {
  return (u.delta - v.delta).abs() < m(u.id, v.id);
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

bool lex_less(const std::vector<PlanePoint>& a, const std::vector<PlanePoint>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].x != b[i].x) return a[i].x < b[i].x;
    if (a[i].y != b[i].y) return a[i].y < b[i].y;
  }
  return false;
}

SceneFailure fail(SceneFailure::Kind kind, std::string detail) { return SceneFailure{kind, std::move(detail)}; }

}  // namespace

Outcome<std::vector<Component>> build_quadrant_graph(const MetricSpace& m, std::vector<QuadrantPoint> points,
                                                     OpCounter* counter) {
  std::stable_sort(points.begin(), points.end(),
                   [](const QuadrantPoint& a, const QuadrantPoint& b) { return a.delta < b.delta; });
  const std::size_t k = points.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (adjacent(m, points[a], points[b])) parent[find_root(parent, a)] = find_root(parent, b);
  if (counter) counter->add(k * (k - (k > 0 ? 1 : 0)) / 2);

  std::vector<Component> comps;
  std::unordered_map<std::size_t, std::size_t> slot;  // root -> component index
  std::size_t current = static_cast<std::size_t>(-1);
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t root = find_root(parent, a);
    auto it = slot.find(root);
    if (it == slot.end()) {
      slot.emplace(root, comps.size());
      current = comps.size();
      comps.emplace_back();
    } else if (it->second != current) {
      return fail(SceneFailure::Kind::ComponentOrderViolation,
                  "component of terminal " + std::to_string(points[a].id) + " resumes after another one");
    }
    comps[current].push_back(points[a]);
  }
  return comps;
}

Outcome<std::vector<PlanePoint>> rigid_placement(const MetricSpace& m, const Component& comp, std::size_t anchor,
                                                 const PlanePoint& anchor_pos, bool mirrored, OpCounter* counter,
                                                 bool bounded) {
  const std::size_t k = comp.size();
  std::vector<std::optional<PlanePoint>> pos(k);
  pos[anchor] = anchor_pos;

  // Breadth-first order over graph edges so that every member has a placed neighbour.
  std::vector<std::size_t> order{anchor}, via(k, anchor);
  std::vector<bool> queued(k, false);
  queued[anchor] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::size_t v = order[head];
    for (std::size_t w = 0; w < k; ++w) {
      if (queued[w] || !adjacent(m, comp[v], comp[w])) continue;
      queued[w] = true;
      via[w] = v;
      order.push_back(w);
    }
  }
  if (counter) counter->add(k * k);
  if (order.size() != k)
    return fail(SceneFailure::Kind::RigidPlacementInfeasible, "component is not connected");

  std::vector<std::size_t> placed{anchor};
  bool chose_reflection = false;

  // Candidates for w consistent with every placed member.
  auto candidates = [&](std::size_t w) {
    const LevelSegment seg{comp[w].delta, !bounded};
    auto hits = intersect_level_segment(seg, *pos[via[w]], m(comp[w].id, comp[via[w]].id));
    std::vector<PlanePoint> out;
    for (const Scalar& x : hits.xs) {
      PlanePoint c = seg.at(x);
      bool ok = true;
      for (std::size_t v : placed) {
        if (l1_distance(c, *pos[v]) != m(comp[w].id, comp[v].id)) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(std::move(c));
    }
    if (counter) counter->add(placed.size());
    return out;
  };

  std::vector<std::size_t> pending(order.begin() + 1, order.end());
  while (!pending.empty()) {
    std::vector<std::size_t> ambiguous;
    bool progress = false;
    for (std::size_t w : pending) {
      if (!pos[via[w]]) {
        ambiguous.push_back(w);
        continue;
      }
      auto cands = candidates(w);
      if (cands.empty())
        return fail(SceneFailure::Kind::RigidPlacementInfeasible,
                    "no position for terminal " + std::to_string(comp[w].id) + " on its level segment");
      if (cands.size() == 1 || !chose_reflection) {
        pos[w] = (cands.size() == 2 && mirrored) ? cands[1] : cands[0];
        if (cands.size() == 2) chose_reflection = true;
        placed.push_back(w);
        progress = true;
      } else {
        ambiguous.push_back(w);
      }
    }
    if (!progress && !ambiguous.empty()) {
      // Still two-way after everything else settled: take the reflection side.
      auto it = std::find_if(ambiguous.begin(), ambiguous.end(), [&](std::size_t w) { return pos[via[w]].has_value(); });
      if (it == ambiguous.end())
        return fail(SceneFailure::Kind::RigidPlacementInfeasible, "placement order stalled");
      auto cands = candidates(*it);
      if (cands.empty()) return fail(SceneFailure::Kind::RigidPlacementInfeasible, "placement order stalled");
      pos[*it] = mirrored ? cands.back() : cands.front();
      placed.push_back(*it);
      ambiguous.erase(it);
    }
    pending = std::move(ambiguous);
  }

  std::vector<PlanePoint> out;
  out.reserve(k);
  for (auto& p : pos) out.push_back(std::move(*p));
  return out;
}

ComponentBox make_box(const Component& comp, const std::vector<PlanePoint>& positions) {
  ComponentBox box;
  box.members = comp;
  PlanePoint lo = positions.front(), hi = positions.front();
  for (const auto& p : positions) {
    lo = {min(lo.x, p.x), min(lo.y, p.y)};
    hi = {max(hi.x, p.x), max(hi.y, p.y)};
  }
  for (const auto& p : positions) box.relative.push_back({p.x - lo.x, p.y - lo.y});
  box.width = hi.x - lo.x;
  box.height = hi.y - lo.y;
  box.delta_a = lo.x + lo.y;
  box.delta_b = hi.x + hi.y;
  return box;
}

Outcome<ComponentBox> embed_free_component(const MetricSpace& m, const Component& comp, OpCounter* counter) {
  const Scalar mid = comp.front().delta.half();
  auto placed = rigid_placement(m, comp, 0, {mid, mid}, false, counter, false);
  if (failed(placed)) return std::get<SceneFailure>(placed);
  return make_box(comp, std::get<std::vector<PlanePoint>>(placed));
}

Outcome<FixedPrefix> fix_components(const MetricSpace& m, const std::vector<Component>& comps, const Fixers& fixers,
                                    OpCounter* counter) {
  FixedPrefix out;
  out.anchor = {fixers.right ? max(fixers.right->pos.x, Scalar(0)) : Scalar(0),
                fixers.upper ? max(fixers.upper->pos.y, Scalar(0)) : Scalar(0)};

  // pins[c][i]: position forced on member i of component c, if any.
  std::vector<std::vector<std::optional<PlanePoint>>> pins(comps.size());
  std::optional<std::size_t> last;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    pins[c].resize(comps[c].size());
    for (std::size_t i = 0; i < comps[c].size(); ++i) {
      const QuadrantPoint& u = comps[c][i];
      const LevelSegment seg{u.delta};
      for (const auto* fixer : {&fixers.upper, &fixers.right}) {
        if (!*fixer) continue;
        if (counter) counter->add();
        auto hit = intersect_level_segment(seg, (*fixer)->pos, m(u.id, (*fixer)->id));
        if (hit.empty())
          return fail(SceneFailure::Kind::EmptyIntersection,
                      "terminal " + std::to_string(u.id) + " cannot reach " + std::to_string((*fixer)->id));
        if (!hit.unique()) continue;
        PlanePoint p = seg.at(hit.xs.front());
        if (pins[c][i] && *pins[c][i] != p)
          return fail(SceneFailure::Kind::FixedComponentContradiction,
                      "terminal " + std::to_string(u.id) + " pinned at two places");
        pins[c][i] = std::move(p);
        last = c;
      }
    }
  }
  if (!last) return out;

  out.count = *last + 1;
  PlanePoint hi = out.anchor;
  for (std::size_t c = 0; c < out.count; ++c) {
    std::size_t anchor = comps[c].size();
    for (std::size_t i = 0; i < comps[c].size(); ++i)
      if (pins[c][i]) {
        anchor = i;
        break;
      }
    if (anchor == comps[c].size())
      return fail(SceneFailure::Kind::FixedComponentContradiction,
                  "component " + std::to_string(c) + " precedes a pinned one but has no pinned member");

    std::optional<std::vector<PlanePoint>> chosen;
    for (bool mirrored : {false, true}) {
      auto placed = rigid_placement(m, comps[c], anchor, *pins[c][anchor], mirrored, counter);
      if (failed(placed)) continue;
      auto& pts = std::get<std::vector<PlanePoint>>(placed);
      bool ok = true;
      for (std::size_t i = 0; i < pts.size() && ok; ++i) {
        if (pins[c][i] && *pins[c][i] != pts[i]) ok = false;
        // Fixers that only bound a member to a range still decide the reflection.
        for (const auto* fixer : {&fixers.upper, &fixers.right})
          if (ok && *fixer && l1_distance(pts[i], (*fixer)->pos) != m(comps[c][i].id, (*fixer)->id)) ok = false;
      }
      if (ok && (!chosen || lex_less(pts, *chosen))) chosen = std::move(pts);
    }
    if (!chosen)
      return fail(SceneFailure::Kind::FixedComponentContradiction,
                  "no reflection of component " + std::to_string(c) + " matches its pins");
    for (auto& p : *chosen) {
      hi = {max(hi.x, p.x), max(hi.y, p.y)};
      out.positions.push_back(std::move(p));
    }
  }
  out.anchor = hi;
  return out;
}

Outcome<std::vector<std::vector<PlanePoint>>> assemble_boxes(const std::vector<ComponentBox>& boxes,
                                                             const PlanePoint& anchor) {
  std::vector<std::vector<PlanePoint>> out;
  PlanePoint prev = anchor;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const ComponentBox& box = boxes[i];
    if (box.delta_a < prev.x + prev.y)
      return fail(SceneFailure::Kind::AssemblyConditionViolated,
                  "box " + std::to_string(i) + " starts at " + box.delta_a.str() + " below " + (prev.x + prev.y).str());
    const PlanePoint a{prev.x, box.delta_a - prev.x};
    std::vector<PlanePoint> placed;
    placed.reserve(box.relative.size());
    for (const auto& r : box.relative) placed.push_back({a.x + r.x, a.y + r.y});
    out.push_back(std::move(placed));
    prev = {a.x + box.width, a.y + box.height};
  }
  return out;
}

Outcome<std::vector<PlanePoint>> place_quadrant(const MetricSpace& m, const std::vector<QuadrantPoint>& points,
                                                const Fixers& fixers, OpCounter* counter) {
  auto graph = build_quadrant_graph(m, points, counter);
  if (failed(graph)) return std::get<SceneFailure>(graph);
  const auto& comps = std::get<std::vector<Component>>(graph);

  auto prefix = fix_components(m, comps, fixers, counter);
  if (failed(prefix)) return std::get<SceneFailure>(prefix);
  const auto& fixed = std::get<FixedPrefix>(prefix);

  std::vector<ComponentBox> boxes;
  for (std::size_t c = fixed.count; c < comps.size(); ++c) {
    auto box = embed_free_component(m, comps[c], counter);
    if (failed(box)) return std::get<SceneFailure>(box);
    boxes.push_back(std::move(std::get<ComponentBox>(box)));
  }
  auto chain = assemble_boxes(boxes, fixed.anchor);
  if (failed(chain)) return std::get<SceneFailure>(chain);

  std::unordered_map<std::size_t, PlanePoint> by_id;
  std::size_t flat = 0;
  for (std::size_t c = 0; c < fixed.count; ++c)
    for (const auto& u : comps[c]) by_id.emplace(u.id, fixed.positions[flat++]);
  const auto& placed = std::get<std::vector<std::vector<PlanePoint>>>(chain);
  for (std::size_t b = 0; b < boxes.size(); ++b)
    for (std::size_t i = 0; i < boxes[b].members.size(); ++i) by_id.emplace(boxes[b].members[i].id, placed[b][i]);

  std::vector<PlanePoint> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(by_id.at(p.id));
  return out;
}

}  // namespace l1embed
