#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "l1embed/scalar.hpp"

namespace l1embed {

struct PlanePoint {
  Scalar x;
  Scalar y;

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

/// |p.x - q.x| + |p.y - q.y|
Scalar l1_distance(const PlanePoint& p, const PlanePoint& q);

/// Point coordinates indexed like the labels of the metric they embed.
using Embedding = std::vector<PlanePoint>;

using DistanceTable = std::vector<std::vector<Scalar>>;

class MetricError : public std::runtime_error {
 public:
  enum class Kind { NotSquare, NonzeroDiagonal, NotSymmetric, NegativeOrZeroOffDiagonal, TriangleViolation };

  MetricError(Kind kind, std::size_t i, std::size_t j = 0, std::size_t k = 0);

  Kind kind() const noexcept { return kind_; }
  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }
  std::size_t k() const noexcept { return k_; }

 private:
  Kind kind_;
  std::size_t i_, j_, k_;
};

const char* to_string(MetricError::Kind kind);

/// Finite metric space with exact distances, stored as a packed upper triangle.
class MetricSpace {
 public:
  MetricSpace() = default;

  /// Builds a space without any axiom check. Used for generated instances that
  /// are metric by construction, and by validate_metric once checks pass.
  static MetricSpace from_trusted(const DistanceTable& table, std::vector<std::string> labels = {});

  /// l1 metric of a point set; labels default to "0", "1", ...
  static MetricSpace from_points(const Embedding& points, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return n_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

  const Scalar& operator()(std::size_t i, std::size_t j) const {
    if (i == j) return zero_;
    if (i > j) std::swap(i, j);
    return packed_[i * (2 * n_ - i - 1) / 2 + (j - i - 1)];
  }

  void set(std::size_t i, std::size_t j, Scalar value);

  /// Sub-space on the given indices (in that order), labels carried over.
  MetricSpace subspace(const std::vector<std::size_t>& indices) const;

  DistanceTable table() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Scalar> packed_;
  Scalar zero_;
};

/// Checks every metric axiom and throws MetricError naming the first violation.
/// Triangle violations are reported as (i, j, k) with d(i,j) > d(i,k) + d(k,j).
MetricSpace validate_metric(const DistanceTable& table, std::vector<std::string> labels = {});

/// Square shape, zero diagonal, symmetry and positivity only; O(n^2).
void check_basic_axioms(const DistanceTable& table);

/// First (i, j, k) with i < j and d(i,j) > d(i,k) + d(k,j); O(n^3).
std::optional<MetricError> find_triangle_violation(const MetricSpace& m);

/// d(i,k) == d(i,j) + d(j,k)
bool is_between(std::size_t i, std::size_t j, std::size_t k, const MetricSpace& m);

std::vector<std::string> default_labels(std::size_t n);

}  // namespace l1embed
