#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "l1embed/oracle.hpp"
#include "l1embed/tight_span.hpp"
#include "l1embed/tree_network.hpp"
#include "support.hpp"

using namespace l1embed;
using l1test::P;
using l1test::table_metric;

namespace {

/// Tree distance between terminals, recomputed by a fresh traversal.
::testing::AssertionResult realizes(const TreeNetwork& t, const MetricSpace& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto d = t.distances_from(t.node_of(i));
    for (std::size_t j = 0; j < m.size(); ++j)
      if (d[t.node_of(j)] != m(i, j)) return ::testing::AssertionFailure() << "pair " << i << "," << j;
  }
  return ::testing::AssertionSuccess();
}

/// Random tree whose terminals are its leaves plus a few interior nodes, with
/// the number of leaves fixed.
MetricSpace tree_with_leaves(std::size_t leaves, std::mt19937_64& rng) {
  // A caterpillar: a spine of `leaves - 2` joints, one leaf per joint plus the
  // two spine ends, so exactly `leaves` degree-one nodes.
  struct Node {
    std::size_t parent;
    Scalar up;
  };
  std::uniform_int_distribution<int> len(1, 4);
  std::vector<Node> nodes{{0, 0}};
  std::vector<std::size_t> spine{0};
  const std::size_t joints = leaves >= 2 ? leaves - 2 : 0;
  for (std::size_t s = 0; s < joints + 1; ++s) {
    nodes.push_back({spine.back(), Scalar(len(rng), 1 + len(rng) % 2)});
    spine.push_back(nodes.size() - 1);
  }
  for (std::size_t s = 1; s <= joints; ++s) nodes.push_back({spine[s], Scalar(len(rng))});
  const std::size_t n = nodes.size();
  std::vector<Scalar> depth(n);
  for (std::size_t v = 1; v < n; ++v) depth[v] = depth[nodes[v].parent] + nodes[v].up;
  auto ancestors = [&](std::size_t v) {
    std::vector<std::size_t> a{v};
    while (a.back() != 0) a.push_back(nodes[a.back()].parent);
    return a;
  };
  DistanceTable t(n, std::vector<Scalar>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto pa = ancestors(a), pb = ancestors(b);
      std::size_t lca = 0;
      for (std::size_t x : pa)
        if (std::find(pb.begin(), pb.end(), x) != pb.end()) {
          lca = x;
          break;
        }
      t[a][b] = depth[a] + depth[b] - depth[lca] - depth[lca];
    }
  // Shuffle the insertion order.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return MetricSpace::from_trusted(t).subspace(perm);
}

}  // namespace

TEST(BuildTreeNetwork, UnitPath) {
  const MetricSpace m = path_metric(5);
  const TreeBuild b = build_tree_network(m);
  ASSERT_EQ(b.status, TreeBuild::Status::Complete);
  EXPECT_TRUE(realizes(b.tree, m));
  EXPECT_EQ(count_leaves(b.tree), 2u);
}

TEST(BuildTreeNetwork, FiveLeafStar) {
  // Centre last so that the leaves meet at a Steiner node first.
  const MetricSpace m = star_metric(5).subspace({1, 2, 3, 4, 5, 0});
  const TreeBuild b = build_tree_network(m);
  ASSERT_EQ(b.status, TreeBuild::Status::Complete);
  EXPECT_TRUE(realizes(b.tree, m));
  EXPECT_EQ(count_leaves(b.tree), 5u);
  EXPECT_EQ(b.tree.node_count(), 6u);  // the Steiner node merged with the centre
}

TEST(BuildTreeNetwork, RectangleFailsOnItsFourCorners) {
  const MetricSpace m = MetricSpace::from_points({P(0, 0), P(4, 0), P(4, 2), P(0, 2)});
  const TreeBuild b = build_tree_network(m);
  ASSERT_EQ(b.status, TreeBuild::Status::Failure);
  const FirstFailure f = *b.failure;
  EXPECT_EQ(f.x_i, 3u);
  std::array<std::size_t, 4> quad{f.a, f.b, f.x_i, f.x_j};
  std::sort(quad.begin(), quad.end());
  EXPECT_EQ(quad, (std::array<std::size_t, 4>{0, 1, 2, 3}));
  EXPECT_FALSE(tight_span4(m, f.a, f.b, f.x_i, f.x_j).degenerate());
}

TEST(BuildTreeNetwork, LeafCapStopsEarly) {
  const TreeBuild b = build_tree_network(star_metric(6), TreeBuildOptions{4});
  EXPECT_EQ(b.status, TreeBuild::Status::TooManyLeaves);
}

TEST(CountLeaves, Conventions) {
  EXPECT_EQ(count_leaves(build_tree_network(path_metric(1)).tree), 1u);
  EXPECT_EQ(count_leaves(build_tree_network(path_metric(5)).tree), 2u);
  EXPECT_EQ(count_leaves(build_tree_network(star_metric(5)).tree), 5u);
}

TEST(EmbedTree, PathOnALine) {
  const MetricSpace m = path_metric(3, {Scalar(1), Scalar(2)});
  const Embedding e = embed_tree(build_tree_network(m).tree);
  EXPECT_EQ(e, (Embedding{P(0, 0), P(1, 0), P(3, 0)}));
}

TEST(EmbedTree, UnitStars) {
  const Embedding three = embed_tree(build_tree_network(star_metric(3)).tree);
  EXPECT_EQ(three, (Embedding{P(0, 0), P(1, 0), P(-1, 0), P(0, 1)}));
  EXPECT_EQ(l1test::ref_mismatches(three, star_metric(3)), 0u);
  const Embedding four = embed_tree(build_tree_network(star_metric(4)).tree);
  EXPECT_EQ(four, (Embedding{P(0, 0), P(1, 0), P(-1, 0), P(0, 1), P(0, -1)}));
  EXPECT_EQ(l1test::ref_mismatches(four, star_metric(4)), 0u);
}

TEST(EmbedTree, RefusesFiveLeaves) {
  EXPECT_THROW(embed_tree(build_tree_network(star_metric(5)).tree), TooManyLeaves);
}

TEST(TreeProperty, AtMostFourLeavesEmbedIsometrically) {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 300; ++iter) {
    const MetricSpace m = tree_with_leaves(1 + iter % 4, rng);
    const TreeBuild b = build_tree_network(m);
    ASSERT_EQ(b.status, TreeBuild::Status::Complete);
    ASSERT_TRUE(realizes(b.tree, m));
    ASSERT_LE(count_leaves(b.tree), 4u);
    ASSERT_EQ(l1test::ref_mismatches(embed_tree(b.tree), m), 0u) << iter;
  }
}

TEST(TreeProperty, FiveOrMoreLeavesAreCounted) {
  std::mt19937_64 rng(19);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t leaves = 5 + iter % 6;
    const MetricSpace m = tree_with_leaves(leaves, rng);
    const TreeBuild b = build_tree_network(m);
    ASSERT_EQ(b.status, TreeBuild::Status::Complete);
    ASSERT_TRUE(realizes(b.tree, m));
    ASSERT_EQ(count_leaves(b.tree), leaves);
  }
}

TEST(TreeProperty, RandomTreesAreRealized) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const MetricSpace m = random_tree_metric(3 + seed % 25, seed);
    const TreeBuild b = build_tree_network(m);
    ASSERT_EQ(b.status, TreeBuild::Status::Complete);
    ASSERT_TRUE(realizes(b.tree, m));
  }
}

// Work stays quadratic on trees: ops / n^2 must not grow with n.
TEST(TreeProperty, OperationCountIsQuadratic) {
  double worst = 0, first = 0;
  for (std::size_t n : {100, 200, 400, 800}) {
    OpCounter c;
    build_tree_network(random_tree_metric(n, n), {}, &c);
    const double ratio = static_cast<double>(c.ops) / static_cast<double>(n * n);
    if (first == 0) first = ratio;
    worst = std::max(worst, ratio);
  }
  EXPECT_LE(worst, 4 * first + 1);
}

// Connected and acyclic, with few consecutive pairs while the leaf count stays
// within four.
TEST(TreeProperty, ShapeAndConsecutivePairs) {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 200; ++iter) {
    const MetricSpace m = iter % 2 ? tree_with_leaves(1 + iter % 4, rng) : random_tree_metric(2 + iter % 30, iter);
    const TreeBuild b = build_tree_network(m);
    ASSERT_EQ(b.status, TreeBuild::Status::Complete);
    const TreeNetwork& t = b.tree;
    std::size_t edges = 0;
    for (std::size_t v = 0; v < t.node_count(); ++v) edges += t.degree(v);
    ASSERT_EQ(edges, 2 * (t.node_count() - 1)) << iter;
    std::vector<bool> seen(t.node_count(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (const auto& e : t.neighbors(v)) {
        if (seen[e.to]) continue;
        seen[e.to] = true;
        stack.push_back(e.to);
      }
    }
    ASSERT_TRUE(std::all_of(seen.begin(), seen.end(), [](bool s) { return s; })) << iter;
    if (count_leaves(t) <= 4) ASSERT_LE(t.consecutive_pairs().size(), m.size() + 4) << iter;
  }
}
