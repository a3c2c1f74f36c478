#include "l1embed/metric.hpp"

#include <sstream>

namespace l1embed {

Scalar l1_distance(const PlanePoint& p, const PlanePoint& q) {
  return (p.x - q.x).abs() + (p.y - q.y).abs();
}

const char* to_string(MetricError::Kind kind) {
  switch (kind) {
    case MetricError::Kind::NotSquare: return "NotSquare";
    case MetricError::Kind::NonzeroDiagonal: return "NonzeroDiagonal";
    case MetricError::Kind::NotSymmetric: return "NotSymmetric";
    case MetricError::Kind::NegativeOrZeroOffDiagonal: return "NegativeOrZeroOffDiagonal";
    case MetricError::Kind::TriangleViolation: return "TriangleViolation";
  }
  return "?";
}

namespace {

std::string describe(MetricError::Kind kind, std::size_t i, std::size_t j, std::size_t k) {
  std::ostringstream os;
  os << to_string(kind);
  switch (kind) {
    case MetricError::Kind::NotSquare:
    case MetricError::Kind::NonzeroDiagonal: os << "(" << i << ")"; break;
    case MetricError::Kind::NotSymmetric:
    case MetricError::Kind::NegativeOrZeroOffDiagonal: os << "(" << i << "," << j << ")"; break;
    case MetricError::Kind::TriangleViolation: os << "(" << i << "," << j << "," << k << ")"; break;
  }
  return os.str();
}

}  // namespace

MetricError::MetricError(Kind kind, std::size_t i, std::size_t j, std::size_t k)
    : std::runtime_error(describe(kind, i, j, k)), kind_(kind), i_(i), j_(j), k_(k) {}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

MetricSpace MetricSpace::from_trusted(const DistanceTable& table, std::vector<std::string> labels) {
  MetricSpace m;
  m.n_ = table.size();
  m.labels_ = labels.empty() ? default_labels(m.n_) : std::move(labels);
  if (m.labels_.size() != m.n_) throw std::invalid_argument("label count does not match matrix size");
  m.packed_.reserve(m.n_ * (m.n_ - (m.n_ > 0 ? 1 : 0)) / 2);
  for (std::size_t i = 0; i < m.n_; ++i)
    for (std::size_t j = i + 1; j < m.n_; ++j) m.packed_.push_back(table[i][j]);
  return m;
}

MetricSpace MetricSpace::from_points(const Embedding& points, std::vector<std::string> labels) {
  MetricSpace m;
  m.n_ = points.size();
  m.labels_ = labels.empty() ? default_labels(m.n_) : std::move(labels);
  if (m.labels_.size() != m.n_) throw std::invalid_argument("label count does not match point count");
  m.packed_.reserve(m.n_ * (m.n_ - (m.n_ > 0 ? 1 : 0)) / 2);
  for (std::size_t i = 0; i < m.n_; ++i)
    for (std::size_t j = i + 1; j < m.n_; ++j) m.packed_.push_back(l1_distance(points[i], points[j]));
  return m;
}

void MetricSpace::set(std::size_t i, std::size_t j, Scalar value) {
  if (i == j) throw std::invalid_argument("cannot set a diagonal distance");
  if (i > j) std::swap(i, j);
  packed_[i * (2 * n_ - i - 1) / 2 + (j - i - 1)] = std::move(value);
}

MetricSpace MetricSpace::subspace(const std::vector<std::size_t>& indices) const {
  MetricSpace m;
  m.n_ = indices.size();
  for (std::size_t idx : indices) m.labels_.push_back(labels_.at(idx));
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = a + 1; b < indices.size(); ++b) m.packed_.push_back((*this)(indices[a], indices[b]));
  return m;
}

DistanceTable MetricSpace::table() const {
  DistanceTable t(n_, std::vector<Scalar>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t[i][j] = (*this)(i, j);
  return t;
}

void check_basic_axioms(const DistanceTable& table) {
  const std::size_t n = table.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw MetricError(MetricError::Kind::NotSquare, i);
    if (!table[i][i].is_zero()) throw MetricError(MetricError::Kind::NonzeroDiagonal, i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (table[i][j] != table[j][i]) throw MetricError(MetricError::Kind::NotSymmetric, i, j);
      if (table[i][j].sign() <= 0) throw MetricError(MetricError::Kind::NegativeOrZeroOffDiagonal, i, j);
    }
  }
}

std::optional<MetricError> find_triangle_violation(const MetricSpace& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Scalar& dij = m(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (m(i, k) + m(k, j) < dij) return MetricError(MetricError::Kind::TriangleViolation, i, j, k);
      }
    }
  return std::nullopt;
}

MetricSpace validate_metric(const DistanceTable& table, std::vector<std::string> labels) {
  check_basic_axioms(table);
  MetricSpace m = MetricSpace::from_trusted(table, std::move(labels));
  if (auto err = find_triangle_violation(m)) throw *err;
  return m;
}

bool is_between(std::size_t i, std::size_t j, std::size_t k, const MetricSpace& m) {
  return m(i, k) == m(i, j) + m(j, k);
}

}  // namespace l1embed
