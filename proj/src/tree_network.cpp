#include "l1embed/tree_network.hpp"

#include <algorithm>
#include <deque>

#include "l1embed/tight_span.hpp"

namespace l1embed {

std::size_t TreeNetwork::add_node(std::size_t terminal) {
  adj_.emplace_back();
  node_terminal_.push_back(kNoTerminal);
  const std::size_t node = adj_.size() - 1;
  if (terminal != kNoTerminal) set_terminal(node, terminal);
  return node;
}

void TreeNetwork::add_edge(std::size_t a, std::size_t b, Scalar length) {
  adj_[a].push_back({b, length});
  adj_[b].push_back({a, std::move(length)});
}

void TreeNetwork::remove_edge(std::size_t a, std::size_t b) {
  auto drop = [](std::vector<Edge>& list, std::size_t to) {
    list.erase(std::find_if(list.begin(), list.end(), [to](const Edge& e) { return e.to == to; }));
  };
  drop(adj_[a], b);
  drop(adj_[b], a);
}

void TreeNetwork::set_terminal(std::size_t node, std::size_t terminal) {
  if (node_terminal_[node] != kNoTerminal) throw std::logic_error("node already houses a terminal");
  node_terminal_[node] = terminal;
  if (terminal_node_.size() <= terminal) terminal_node_.resize(terminal + 1, kNoTerminal);
  terminal_node_[terminal] = node;
}

std::vector<std::pair<std::size_t, std::size_t>> TreeNetwork::consecutive_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> stack;
  std::vector<std::size_t> seen(adj_.size(), kNoTerminal);
  for (std::size_t start = 0; start < adj_.size(); ++start) {
    const std::size_t t = node_terminal_[start];
    if (t == kNoTerminal) continue;
    // Explore the terminal-free region around `start`; terminals stop the walk.
    stack.assign(1, start);
    seen[start] = start;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (const Edge& e : adj_[node]) {
        if (seen[e.to] == start) continue;
        seen[e.to] = start;
        const std::size_t u = node_terminal_[e.to];
        if (u == kNoTerminal) {
          stack.push_back(e.to);
        } else if (t < u) {
          pairs.emplace_back(t, u);
        }
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<Scalar> TreeNetwork::distances_from(std::size_t node, OpCounter* counter) const {
  std::vector<Scalar> dist(adj_.size());
  std::vector<bool> done(adj_.size(), false);
  std::vector<std::size_t> stack{node};
  done[node] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (counter) counter->add();
    for (const Edge& e : adj_[v]) {
      if (done[e.to]) continue;
      done[e.to] = true;
      dist[e.to] = dist[v] + e.length;
      stack.push_back(e.to);
    }
  }
  return dist;
}

namespace {

/// Node path from `from` to `to` (inclusive).
std::vector<std::size_t> tree_path(const TreeNetwork& tree, std::size_t from, std::size_t to) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(tree.node_count(), kUnset);
  std::deque<std::size_t> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (const auto& e : tree.neighbors(v)) {
      if (parent[e.to] != kUnset) continue;
      parent[e.to] = v;
      queue.push_back(e.to);
    }
  }
  std::vector<std::size_t> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

const Scalar& edge_length(const TreeNetwork& tree, std::size_t a, std::size_t b) {
  for (const auto& e : tree.neighbors(a))
    if (e.to == b) return e.length;
  throw std::logic_error("nodes are not adjacent");
}

/// Node at distance `offset` from the start of `path`, splitting an edge if needed.
std::size_t point_on_path(TreeNetwork& tree, const std::vector<std::size_t>& path, const Scalar& offset) {
  Scalar walked;
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    if (walked == offset) return path[s];
    const Scalar len = edge_length(tree, path[s], path[s + 1]);
    Scalar next = walked + len;
    if (offset < next) {
      const std::size_t mid = tree.add_node();
      tree.remove_edge(path[s], path[s + 1]);
      tree.add_edge(path[s], mid, offset - walked);
      tree.add_edge(mid, path[s + 1], next - offset);
      return mid;
    }
    walked = std::move(next);
  }
  if (walked == offset) return path.back();
  throw std::logic_error("attachment offset beyond the end of the path");
}

}  // namespace

TreeBuild build_tree_network(const MetricSpace& m, const TreeBuildOptions& options, OpCounter* counter) {
  TreeBuild out;
  TreeNetwork& tree = out.tree;
  const std::size_t n = m.size();
  if (n == 0) return out;
  tree.add_node(0);
  if (n >= 2) tree.add_edge(0, tree.add_node(1), m(0, 1));

  for (std::size_t i = 2; i < n; ++i) {
    const auto pairs = tree.consecutive_pairs();
    std::size_t best = 0;
    Scalar best_alpha;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      Scalar alpha = gromov_product(m, i, pairs[p].first, pairs[p].second);
      if (p == 0 || alpha < best_alpha) {
        best = p;
        best_alpha = std::move(alpha);
      }
    }
    if (counter) counter->add(pairs.size());
    const auto [a, b] = pairs[best];

    const auto path = tree_path(tree, tree.node_of(a), tree.node_of(b));
    if (counter) counter->add(path.size());
    const std::size_t c = point_on_path(tree, path, gromov_product(m, a, b, i));
    if (best_alpha.is_zero()) {
      tree.set_terminal(c, i);
    } else {
      tree.add_edge(c, tree.add_node(i), best_alpha);
    }

    const auto dist = tree.distances_from(tree.node_of(i), counter);
    for (std::size_t j = 0; j < i; ++j) {
      if (counter) counter->add();
      if (dist[tree.node_of(j)] != m(i, j)) {
        out.status = TreeBuild::Status::Failure;
        out.failure = FirstFailure{a, b, i, j};
        return out;
      }
    }
    if (options.max_leaves && count_leaves(tree) > *options.max_leaves) {
      out.status = TreeBuild::Status::TooManyLeaves;
      return out;
    }
  }
  return out;
}

std::size_t count_leaves(const TreeNetwork& tree) {
  if (tree.node_count() == 1) return 1;
  std::size_t leaves = 0;
  for (std::size_t v = 0; v < tree.node_count(); ++v)
    if (tree.degree(v) == 1) ++leaves;
  return leaves;
}

Embedding embed_tree(const TreeNetwork& tree) {
  if (count_leaves(tree) > 4) throw TooManyLeaves("tree network has more than four leaves");
  Embedding out(tree.terminal_count());
  if (tree.node_count() == 0) return out;

  struct Dir {
    int dx, dy;
  };
  constexpr Dir kRight{1, 0}, kLeft{-1, 0}, kUp{0, 1}, kDown{0, -1};

  std::vector<std::size_t> ramification;
  for (std::size_t v = 0; v < tree.node_count(); ++v)
    if (tree.degree(v) >= 3) ramification.push_back(v);

  // Direction assigned to the edge (parent -> child) when leaving a node.
  std::size_t root = 0;
  std::size_t second = TreeNetwork::kNoTerminal;
  std::size_t toward_second = TreeNetwork::kNoTerminal;
  if (ramification.empty()) {
    for (std::size_t v = 0; v < tree.node_count(); ++v)
      if (tree.degree(v) <= 1) {
        root = v;
        break;
      }
  } else {
    root = ramification[0];
    if (ramification.size() == 2) {
      second = ramification[1];
      toward_second = tree_path(tree, root, second)[1];
    }
  }

  std::vector<PlanePoint> pos(tree.node_count());
  struct Item {
    std::size_t node, parent;
    Dir dir;
  };
  std::vector<Item> stack;
  auto push_children = [&](std::size_t node, std::size_t parent, Dir inherited) {
    const auto& nbrs = tree.neighbors(node);
    const bool ramifies = nbrs.size() >= 3;
    if (!ramifies) {
      for (const auto& e : nbrs)
        if (e.to != parent) stack.push_back({e.to, node, inherited});
      return;
    }
    if (second == TreeNetwork::kNoTerminal) {
      const Dir order[4] = {kRight, kLeft, kUp, kDown};
      std::size_t slot = 0;
      for (const auto& e : nbrs) stack.push_back({e.to, node, order[slot++]});
      return;
    }
    // Two ramification nodes: the spine runs rightwards from the root, the root's
    // other branches go left and up, the far node's branches go right and down.
    if (node == root) {
      const Dir order[2] = {kLeft, kUp};
      std::size_t slot = 0;
      for (const auto& e : nbrs) {
        if (e.to == toward_second) {
          stack.push_back({e.to, node, kRight});
        } else {
          stack.push_back({e.to, node, order[slot++]});
        }
      }
    } else {
      const Dir order[2] = {kRight, kDown};
      std::size_t slot = 0;
      for (const auto& e : nbrs)
        if (e.to != parent) stack.push_back({e.to, node, order[slot++]});
    }
  };

  push_children(root, TreeNetwork::kNoTerminal, kRight);
  while (!stack.empty()) {
    Item item = stack.back();
    stack.pop_back();
    const Scalar& len = edge_length(tree, item.parent, item.node);
    pos[item.node] = {pos[item.parent].x + len * Scalar(item.dir.dx), pos[item.parent].y + len * Scalar(item.dir.dy)};
    push_children(item.node, item.parent, item.dir);
  }

  for (std::size_t t = 0; t < tree.terminal_count(); ++t) out[t] = pos[tree.node_of(t)];
  return out;
}

}  // namespace l1embed
