#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

#include "l1embed/metric.hpp"

// Brute-force ground truth for small spaces, and instance generators.
//
// In rotated coordinates u = x + y, v = x - y the l1 distance becomes
// max(|du|, |dv|), so an embedding is a choice, per pair, of the coordinate
// attaining the distance and the sign of the difference. Each choice leaves
// two independent systems of difference constraints.

namespace l1embed {

class TooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAMetricAfterPerturbation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr std::size_t kOracleMaxPoints = 6;

struct OracleResult {
  bool embeddable = false;
  std::optional<Embedding> witness;  // exact coordinates when embeddable
  std::uint64_t assignments_tried = 0;
};

/// Exhaustive decision for n <= 6. Throws TooLarge beyond that.
OracleResult oracle_embed(const MetricSpace& m);

struct PlantedInstance {
  MetricSpace metric;
  Embedding points;
};

/// n distinct points with coordinates p/q, |p/q| <= bound, q in 1..4.
PlantedInstance random_planar_instance(std::size_t n, std::uint64_t seed, std::int64_t bound = 100);

/// Adds epsilon to d(i,j). Throws NotAMetricAfterPerturbation if the result
/// breaks an axiom.
MetricSpace perturb_instance(const MetricSpace& m, std::size_t i, std::size_t j, const Scalar& epsilon);

/// Path metric of a random tree on n nodes with integer edge lengths in 1..max_len.
MetricSpace random_tree_metric(std::size_t n, std::uint64_t seed, std::int64_t max_len = 5);

/// Shortest-path closure of a random complete graph with weights in 1..max_w.
MetricSpace random_valid_matrix(std::size_t n, std::uint64_t seed, std::int64_t max_w = 6);

/// Star K_{1,k} with unit legs: the centre is point 0.
MetricSpace star_metric(std::size_t k);

/// Points 0..n-1 on a line with the given consecutive gaps (cycled if short).
MetricSpace path_metric(std::size_t n, const std::vector<Scalar>& gaps = {Scalar(1)});

}  // namespace l1embed
