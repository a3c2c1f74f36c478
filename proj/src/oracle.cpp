#include "l1embed/oracle.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>

#include <gmpxx.h>

namespace l1embed {
namespace {

constexpr std::size_t N = kOracleMaxPoints;

/// Closed difference-constraint system: bound[i][j] >= x_j - x_i.
template <class T>
struct DiffSystem {
  std::array<std::array<T, N>, N> bound{};
  std::size_t n = 0;

  /// Adds x_b - x_a <= w; false if that creates a negative cycle.
  bool add(std::size_t a, std::size_t b, const T& w) {
    if (bound[b][a] + w < 0) return false;
    if (!(w < bound[a][b])) return true;
    for (std::size_t i = 0; i < n; ++i) {
      const T via = bound[i][a] + w;
      for (std::size_t j = 0; j < n; ++j) {
        T cand = via + bound[b][j];
        if (cand < bound[i][j]) bound[i][j] = std::move(cand);
      }
    }
    return true;
  }

  /// x_i - x_j == w
  bool fix(std::size_t i, std::size_t j, const T& w) { return add(j, i, w) && add(i, j, -w); }
};

template <class T>
class Search {
 public:
  Search(const std::vector<std::vector<T>>& d, std::size_t n) : d_(d), n_(n) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) pairs_.emplace_back(i, j);
    // (0,1), (0,2), (1,2), (0,3), ... so constraints close cycles early.
    std::stable_sort(pairs_.begin(), pairs_.end(), [](auto a, auto b) { return a.second < b.second; });
    DiffSystem<T> base;
    base.n = n;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) base.bound[i][j] = i == j ? T(0) : d[i][j];
    u_ = v_ = base;
  }

  bool run() { return pairs_.empty() || step(0, u_, v_); }
  std::uint64_t tried() const { return tried_; }
  const DiffSystem<T>& u() const { return found_u_; }
  const DiffSystem<T>& v() const { return found_v_; }

 private:
  bool step(std::size_t k, const DiffSystem<T>& u, const DiffSystem<T>& v) {
    if (k == pairs_.size()) {
      found_u_ = u;
      found_v_ = v;
      return true;
    }
    const auto [i, j] = pairs_[k];
    const T& d = d_[i][j];
    // The first pair can be taken as u-attained and positive: swapping u and v,
    // or negating one of them, is an isometry of the plane.
    const int choices = k == 0 ? 1 : 4;
    for (int c = 0; c < choices; ++c) {
      ++tried_;
      const bool on_u = c < 2;
      const T w = c % 2 == 0 ? d : T(-d);
      if (on_u) {
        DiffSystem<T> next = u;
        if (next.fix(i, j, w) && step(k + 1, next, v)) return true;
      } else {
        DiffSystem<T> next = v;
        if (next.fix(i, j, w) && step(k + 1, u, next)) return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<T>>& d_;
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  DiffSystem<T> u_, v_, found_u_, found_v_;
  std::uint64_t tried_ = 0;
};

template <class T, class ToScalar>
OracleResult solve(const std::vector<std::vector<T>>& d, std::size_t n, ToScalar to_scalar) {
  Search<T> search(d, n);
  OracleResult out;
  out.embeddable = search.run();
  out.assignments_tried = search.tried();
  if (out.embeddable) {
    // Shortest paths from point 0 are a feasible solution of each system.
    Embedding e(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar u = to_scalar(search.u().bound[0][i]);
      const Scalar v = to_scalar(search.v().bound[0][i]);
      e[i] = {(u + v).half(), (u - v).half()};
    }
    out.witness = std::move(e);
  }
  return out;
}

}  // namespace

OracleResult oracle_embed(const MetricSpace& m) {
  const std::size_t n = m.size();
  if (n > kOracleMaxPoints) throw TooLarge("oracle handles at most 6 points, got " + std::to_string(n));
  if (n <= 1) return OracleResult{true, Embedding(n), 0};

  // Clear denominators; int64 when the scaled entries stay small.
  mpz_class lcm = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const mpq_class q = m(i, j).to_mpq();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    }
  std::vector<std::vector<mpz_class>> scaled(n, std::vector<mpz_class>(n));
  bool small = true;
  const mpz_class limit = mpz_class(1) << 40;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const mpq_class q = m(i, j).to_mpq() * lcm;
      scaled[i][j] = q.get_num();
      if (abs(scaled[i][j]) >= limit) small = false;
    }

  if (small && lcm.fits_slong_p()) {
    const std::int64_t den = lcm.get_si();
    std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = i == j ? 0 : scaled[i][j].get_si();
    return solve(d, n, [den](std::int64_t v) { return Scalar(v, den); });
  }
  std::vector<std::vector<mpq_class>> d(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) d[i][j] = m(i, j).to_mpq();
  return solve(d, n, [](const mpq_class& v) { return Scalar(v); });
}

PlantedInstance random_planar_instance(std::size_t n, std::uint64_t seed, std::int64_t bound) {
  if (n == 0) throw std::invalid_argument("random_planar_instance needs n >= 1");
  if (bound <= 0) throw std::invalid_argument("coordinate bound must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> den_dist(1, 4);
  std::set<std::pair<Scalar, Scalar>> seen;
  PlantedInstance out;
  out.points.reserve(n);
  std::size_t attempts = 0;
  while (out.points.size() < n) {
    if (++attempts > 100 * n + 1000) throw std::invalid_argument("coordinate bound too small for n distinct points");
    const std::int64_t qx = den_dist(rng), qy = den_dist(rng);
    std::uniform_int_distribution<std::int64_t> nx(-bound * qx, bound * qx), ny(-bound * qy, bound * qy);
    PlanePoint p{Scalar(nx(rng), qx), Scalar(ny(rng), qy)};
    if (!seen.emplace(p.x, p.y).second) continue;
    out.points.push_back(std::move(p));
  }
  out.metric = MetricSpace::from_points(out.points);
  return out;
}

MetricSpace perturb_instance(const MetricSpace& m, std::size_t i, std::size_t j, const Scalar& epsilon) {
  if (i == j || i >= m.size() || j >= m.size()) throw std::invalid_argument("perturbation needs two distinct points");
  MetricSpace out = m;
  const Scalar d = m(i, j) + epsilon;
  if (d.sign() <= 0)
    throw NotAMetricAfterPerturbation("d(" + std::to_string(i) + "," + std::to_string(j) + ") is no longer positive");
  out.set(i, j, d);
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (k == i || k == j) continue;
    if (d > out(i, k) + out(k, j) || out(i, k) > d + out(k, j) || out(k, j) > out(i, k) + d)
      throw NotAMetricAfterPerturbation("triangle (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                        std::to_string(k) + ") violated");
  }
  return out;
}

MetricSpace random_tree_metric(std::size_t n, std::uint64_t seed, std::int64_t max_len) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> len(1, max_len);
  std::vector<std::size_t> parent(n, 0);
  std::vector<Scalar> up(n);
  for (std::size_t v = 1; v < n; ++v) {
    parent[v] = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
    up[v] = len(rng);
  }
  // Depths and ancestors are enough: d(a,b) = depth a + depth b - 2 depth lca.
  std::vector<Scalar> depth(n);
  std::vector<std::size_t> level(n, 0);
  for (std::size_t v = 1; v < n; ++v) {
    depth[v] = depth[parent[v]] + up[v];
    level[v] = level[parent[v]] + 1;
  }
  DistanceTable t(n, std::vector<Scalar>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      std::size_t x = a, y = b;
      while (x != y) {
        if (level[x] >= level[y]) {
          x = parent[x];
        } else {
          y = parent[y];
        }
      }
      t[a][b] = t[b][a] = depth[a] + depth[b] - depth[x] - depth[x];
    }
  return MetricSpace::from_trusted(t);
}

MetricSpace random_valid_matrix(std::size_t n, std::uint64_t seed, std::int64_t max_w) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> w(1, max_w);
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = w(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  DistanceTable t(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = d[i][j];
  return MetricSpace::from_trusted(t);
}

MetricSpace star_metric(std::size_t k) {
  DistanceTable t(k + 1, std::vector<Scalar>(k + 1, Scalar(2)));
  for (std::size_t i = 0; i <= k; ++i) {
    t[i][i] = 0;
    t[0][i] = t[i][0] = i == 0 ? 0 : 1;
  }
  return MetricSpace::from_trusted(t);
}

MetricSpace path_metric(std::size_t n, const std::vector<Scalar>& gaps) {
  if (gaps.empty()) throw std::invalid_argument("path_metric needs at least one gap");
  Embedding pts(n);
  Scalar at;
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = {at, 0};
    at += gaps[i % gaps.size()];
  }
  return MetricSpace::from_points(pts);
}

}  // namespace l1embed
