#pragma once

// Helpers shared by the unit tests. The reference computations here use GMP
// rationals directly so they do not lean on the library's own arithmetic.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "l1embed/metric.hpp"

namespace l1test {

using l1embed::DistanceTable;
using l1embed::Embedding;
using l1embed::MetricSpace;
using l1embed::PlanePoint;
using l1embed::Scalar;

inline Scalar S(const char* text) { return Scalar::parse(text); }
inline PlanePoint P(std::int64_t x, std::int64_t y) { return {Scalar(x), Scalar(y)}; }
inline PlanePoint P(int x, int y) { return {Scalar(x), Scalar(y)}; }
inline PlanePoint P(const char* x, const char* y) { return {S(x), S(y)}; }

inline mpq_class Q(const Scalar& s) { return s.to_mpq(); }

/// |dx| + |dy| evaluated in GMP.
inline mpq_class ref_l1(const PlanePoint& a, const PlanePoint& b) {
  return abs(Q(a.x) - Q(b.x)) + abs(Q(a.y) - Q(b.y));
}

/// Metric of a point set, built entry by entry from ref_l1.
inline MetricSpace ref_metric(const Embedding& pts) {
  const std::size_t n = pts.size();
  DistanceTable t(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = Scalar(ref_l1(pts[i], pts[j]));
  return MetricSpace::from_trusted(t);
}

/// Every pair checked in GMP; returns the number of mismatching pairs.
inline std::size_t ref_mismatches(const Embedding& e, const MetricSpace& m) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (ref_l1(e[i], e[j]) != Q(m(i, j))) ++bad;
  return bad;
}

inline MetricSpace table_metric(const std::vector<std::vector<std::int64_t>>& rows) {
  DistanceTable t;
  for (const auto& r : rows) {
    t.emplace_back();
    for (auto v : r) t.back().emplace_back(v);
  }
  return MetricSpace::from_trusted(t);
}

/// Random rational with denominator in 1..4 and |value| <= bound.
inline Scalar random_rational(std::mt19937_64& rng, std::int64_t bound) {
  const std::int64_t q = std::uniform_int_distribution<std::int64_t>(1, 4)(rng);
  return Scalar(std::uniform_int_distribution<std::int64_t>(-bound * q, bound * q)(rng), q);
}

/// Distinct random rational points (may be collinear or share coordinates).
inline Embedding random_points(std::mt19937_64& rng, std::size_t n, std::int64_t bound) {
  Embedding pts;
  while (pts.size() < n) {
    PlanePoint p{random_rational(rng, bound), random_rational(rng, bound)};
    bool dup = false;
    for (const auto& q : pts) dup = dup || q == p;
    if (!dup) pts.push_back(p);
  }
  return pts;
}

inline MetricSpace permuted(const MetricSpace& m, const std::vector<std::size_t>& perm) { return m.subspace(perm); }

}  // namespace l1test
