#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "l1embed/metric.hpp"

namespace l1embed {

/// Counts primitive steps (pair scans, node visits, distance comparisons) so
/// that the quadratic bound can be checked independently of wall time.
struct OpCounter {
  std::uint64_t ops = 0;
  void add(std::uint64_t n = 1) noexcept { ops += n; }
};

/// Weighted tree whose nodes are either terminals (points of the metric) or
/// Steiner attachment points. Edge lengths are strictly positive.
class TreeNetwork {
 public:
  struct Edge {
    std::size_t to;
    Scalar length;
  };
  static constexpr std::size_t kNoTerminal = static_cast<std::size_t>(-1);

  std::size_t node_count() const noexcept { return adj_.size(); }
  const std::vector<Edge>& neighbors(std::size_t node) const { return adj_[node]; }
  std::size_t degree(std::size_t node) const { return adj_[node].size(); }

  /// Terminal index housed by a node, or kNoTerminal for Steiner nodes.
  std::size_t terminal_at(std::size_t node) const { return node_terminal_[node]; }
  /// Node housing terminal t; terminals are inserted as 0, 1, 2, ...
  std::size_t node_of(std::size_t terminal) const { return terminal_node_[terminal]; }
  std::size_t terminal_count() const noexcept { return terminal_node_.size(); }

  /// Pairs (j, k), j < k, of terminals joined by a tree path free of other
  /// terminals; sorted lexicographically.
  std::vector<std::pair<std::size_t, std::size_t>> consecutive_pairs() const;

  /// Tree distances from a node to every node.
  std::vector<Scalar> distances_from(std::size_t node, OpCounter* counter = nullptr) const;

  std::size_t add_node(std::size_t terminal = kNoTerminal);
  void add_edge(std::size_t a, std::size_t b, Scalar length);
  void remove_edge(std::size_t a, std::size_t b);
  void set_terminal(std::size_t node, std::size_t terminal);

 private:
  std::vector<std::vector<Edge>> adj_;
  std::vector<std::size_t> node_terminal_;
  std::vector<std::size_t> terminal_node_;
};

/// Quadruple found when inserting x_i breaks the tree distances: {a, b} is the
/// chosen consecutive pair and x_j the first earlier terminal whose tree
/// distance to x_i is wrong.
struct FirstFailure {
  std::size_t a, b, x_i, x_j;
};

struct TreeBuild {
  enum class Status { Complete, Failure, TooManyLeaves };
  Status status = Status::Complete;
  TreeNetwork tree;
  std::optional<FirstFailure> failure;
};

struct TreeBuildOptions {
  /// Stop as soon as the partial tree has more leaves than this.
  std::optional<std::size_t> max_leaves;
};

/// Inserts the points in input order, attaching each at the point of the
/// current tree closest to it (minimum Gromov product over consecutive pairs,
/// ties broken lexicographically), and checks the new distances by traversal.
TreeBuild build_tree_network(const MetricSpace& m, const TreeBuildOptions& options = {},
                             OpCounter* counter = nullptr);

/// Degree-one nodes; a single-node tree counts as one leaf.
std::size_t count_leaves(const TreeNetwork& tree);

class TooManyLeaves : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Isometric l1 placement of the terminals of a tree with at most four leaves,
/// indexed by terminal. Branches leave ramification nodes along the axes.
Embedding embed_tree(const TreeNetwork& tree);

}  // namespace l1embed
