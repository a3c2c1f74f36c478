#include <gtest/gtest.h>

#include "support.hpp"

using namespace l1embed;
using l1test::P;
using l1test::S;
using l1test::table_metric;

namespace {

DistanceTable ints(const std::vector<std::vector<std::int64_t>>& rows) {
  DistanceTable t;
  for (const auto& r : rows) {
    t.emplace_back();
    for (auto v : r) t.back().emplace_back(v);
  }
  return t;
}

MetricError::Kind kind_of(const DistanceTable& t) {
  try {
    validate_metric(t);
  } catch (const MetricError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a MetricError";
  return MetricError::Kind::NotSquare;
}

}  // namespace

TEST(ValidateMetric, AcceptsSmallestMetric) {
  const MetricSpace m = validate_metric(ints({{0, 5}, {5, 0}}));
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m(0, 1), Scalar(5));
  EXPECT_EQ(m.label(1), "1");
}

TEST(ValidateMetric, ReportsAsymmetry) {
  try {
    validate_metric(ints({{0, 1}, {2, 0}}));
    FAIL();
  } catch (const MetricError& e) {
    EXPECT_EQ(e.kind(), MetricError::Kind::NotSymmetric);
    EXPECT_EQ(e.i(), 0u);
    EXPECT_EQ(e.j(), 1u);
    EXPECT_STREQ(e.what(), "NotSymmetric(0,1)");
  }
}

TEST(ValidateMetric, ReportsTriangleViolationWithWitness) {
  try {
    validate_metric(ints({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}));
    FAIL();
  } catch (const MetricError& e) {
    EXPECT_EQ(e.kind(), MetricError::Kind::TriangleViolation);
    EXPECT_EQ(e.i(), 0u);
    EXPECT_EQ(e.j(), 2u);
    EXPECT_EQ(e.k(), 1u);
  }
}

TEST(ValidateMetric, OtherAxioms) {
  EXPECT_EQ(kind_of(ints({{1, 1}, {1, 0}})), MetricError::Kind::NonzeroDiagonal);
  EXPECT_EQ(kind_of(ints({{0, 0}, {0, 0}})), MetricError::Kind::NegativeOrZeroOffDiagonal);
  EXPECT_EQ(kind_of(ints({{0, -1}, {-1, 0}})), MetricError::Kind::NegativeOrZeroOffDiagonal);
  EXPECT_EQ(kind_of(ints({{0, 1}, {1}})), MetricError::Kind::NotSquare);
}

TEST(L1Distance, Basics) {
  EXPECT_EQ(l1_distance(P(0, 0), P(4, 2)), Scalar(6));
  EXPECT_EQ(l1_distance(P("1/2", "0"), P("0", "1/2")), Scalar(1));
  EXPECT_EQ(l1_distance(P(3, -7), P(3, -7)), Scalar(0));
}

TEST(IsBetween, UnitPath) {
  const MetricSpace m = table_metric({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  EXPECT_TRUE(is_between(0, 1, 2, m));
  EXPECT_FALSE(is_between(1, 0, 2, m));
  EXPECT_TRUE(is_between(0, 0, 2, m));
}

TEST(MetricSpace, SubspaceKeepsLabelsAndDistances) {
  const MetricSpace m = validate_metric(ints({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}), {"a", "b", "c"});
  const MetricSpace s = m.subspace({2, 0});
  EXPECT_EQ(s.label(0), "c");
  EXPECT_EQ(s(0, 1), Scalar(2));
}

TEST(MetricProperty, PlantedPointSetsValidate) {
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 200; ++iter) {
    const auto pts = l1test::random_points(rng, 2 + iter % 12, 1 + iter % 6);
    const MetricSpace ref = l1test::ref_metric(pts);
    EXPECT_NO_THROW(validate_metric(ref.table()));
    const MetricSpace lib = MetricSpace::from_points(pts);
    EXPECT_EQ(lib.table(), ref.table());
  }
}

TEST(MetricProperty, L1TriangleAndSymmetry) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 2000; ++iter) {
    const auto p = l1test::random_points(rng, 3, 20);
    EXPECT_EQ(l1_distance(p[0], p[1]), l1_distance(p[1], p[0]));
    EXPECT_LE(l1_distance(p[0], p[2]), l1_distance(p[0], p[1]) + l1_distance(p[1], p[2]));
  }
}

TEST(MetricProperty, BrokenTriangleIsFound) {
  std::mt19937_64 rng(9);
  for (int iter = 0; iter < 100; ++iter) {
    const auto pts = l1test::random_points(rng, 5, 10);
    DistanceTable t = l1test::ref_metric(pts).table();
    // Stretch one pair beyond the detour through a third point.
    const Scalar detour = t[0][2] + t[2][1];
    t[0][1] = t[1][0] = detour + S("1/3");
    EXPECT_EQ(kind_of(t), MetricError::Kind::TriangleViolation);
  }
}
