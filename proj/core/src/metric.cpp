#include "zsk/metric.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace zsk {

FiniteMetricSpace FiniteMetricSpace::unchecked(Matrix dist, std::vector<std::string> ids) {
  FiniteMetricSpace m;
  int n = static_cast<int>(dist.size());
  if (ids.empty()) {
    ids.reserve(n);
    for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  }
  m.dist_ = std::move(dist);
  m.ids_ = std::move(ids);
  return m;
}

double FiniteMetricSpace::diameter() const {
  double best = 0;
  for (const auto& row : dist_)
    for (double v : row) best = std::max(best, v);
  return best;
}

double FiniteMetricSpace::min_distance() const {
  double best = kInf;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j) best = std::min(best, dist_[i][j]);
  return best;
}

PointSet FiniteMetricSpace::ball(int x, double r) const {
  PointSet out;
  for (int y = 0; y < size(); ++y)
    if (within(dist_[x][y], r)) out.push_back(y);
  return out;
}

double FiniteMetricSpace::dist_to_set(int x, const PointSet& s) const {
  double best = kInf;
  for (int z : s) best = std::min(best, dist_[x][z]);
  return best;
}

double PointMeasure::total() const {
  double t = 0;
  for (double v : w) t += v;
  return t;
}

double PointMeasure::min() const { return *std::min_element(w.begin(), w.end()); }

double PointMeasure::of(const PointSet& s) const {
  double t = 0;
  for (int i : s) t += w[i];
  return t;
}

double PointMeasure::ball(const FiniteMetricSpace& m, int x, double r) const {
  double t = 0;
  for (int y = 0; y < m.size(); ++y)
    if (within(m.d(x, y), r)) t += w[y];
  return t;
}

PointMeasure PointMeasure::normalized_min_one() const {
  double lo = min();
  PointMeasure out = *this;
  for (auto& v : out.w) v /= lo;
  return out;
}

PointMeasure PointMeasure::probability() const {
  double t = total();
  PointMeasure out = *this;
  for (auto& v : out.w) v /= t;
  return out;
}

void PointMeasure::validate(int n) const {
  if (static_cast<int>(w.size()) != n) throw Error(ErrorCode::DimensionMismatch, "measure size");
  for (double v : w)
    if (!(v > 0) || !std::isfinite(v)) throw Error(ErrorCode::BadParams, "measure weights must be positive and finite");
}

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (size_t k = 0; k < a.size(); ++k) {
    double t = a[k] - b[k];
    s += t * t;
  }
  return std::sqrt(s);
}

double EuclideanMap::dist(int i, int j) const { return euclid(coords[i], coords[j]); }

double EuclideanMap::dot(int i, const std::vector<double>& v) const {
  double s = 0;
  for (int k = 0; k < dim; ++k) s += coords[i][k] * v[k];
  return s;
}

EuclideanMap EuclideanMap::scaled(double c) const {
  EuclideanMap out = *this;
  for (auto& row : out.coords)
    for (auto& x : row) x *= c;
  return out;
}

void QuasiParams::validate() const {
  if (!(s > 0 && s < 1 && eps > 0 && eps < 1)) throw Error(ErrorCode::BadParams, "need 0 < s, eps < 1");
}

FiniteMetricSpace validate_metric(const Matrix& dist, std::vector<std::string> ids) {
  int n = static_cast<int>(dist.size());
  for (const auto& row : dist)
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::NotSquare, "distance matrix must be square");
  if (n < 2) throw Error(ErrorCode::TooSmall, "need at least 2 points");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double v = dist[i][j];
      if (!std::isfinite(v) || v < 0 || (i == j && v != 0) || (i != j && v == 0)) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") = " << v;
        throw Error(ErrorCode::NegativeEntry, os.str());
      }
      if (dist[i][j] != dist[j][i]) {
        std::ostringstream os;
        os << "d(" << i << "," << j << ") != d(" << j << "," << i << ")";
        throw Error(ErrorCode::AsymmetricMatrix, os.str());
      }
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (dist[i][k] > dist[i][j] + dist[j][k] + 1e-9) {
          std::ostringstream os;
          os << "(" << i << "," << j << "," << k << ")";
          throw Error(ErrorCode::TriangleViolation, os.str());
        }
  if (!ids.empty() && static_cast<int>(ids.size()) != n) throw Error(ErrorCode::DimensionMismatch, "ids size");
  return FiniteMetricSpace::unchecked(dist, std::move(ids));
}

FiniteMetricSpace trusted_space(Matrix dist, std::vector<std::string> ids) {
  return FiniteMetricSpace::unchecked(std::move(dist), std::move(ids));
}

namespace {

Eigen::MatrixXd schoenberg(const Matrix& d) {
  int n = static_cast<int>(d.size());
  Eigen::MatrixXd g(n - 1, n - 1);
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b) g(a - 1, b - 1) = 0.5 * (d[0][a] + d[0][b] - d[a][b]);
  return g;
}

}  // namespace

NegTypeResult negative_type_test_matrix(const Matrix& d) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(schoenberg(d));
  const auto& ev = es.eigenvalues();
  NegTypeResult r;
  r.min_eigenvalue = ev(0);
  double top = std::max(ev(ev.size() - 1), 0.0);
  r.negative_type = ev(0) >= -1e-9 * top;
  if (!r.negative_type) {
    auto w = es.eigenvectors().col(0);
    r.witness.assign(w.data(), w.data() + w.size());
  }
  return r;
}

NegTypeResult negative_type_test(const FiniteMetricSpace& m) { return negative_type_test_matrix(m.dist()); }

EuclideanMap snowflake_embed(const FiniteMetricSpace& m, double theta) {
  if (!(theta > 0 && theta <= 1)) throw Error(ErrorCode::BadParams, "theta in (0,1]");
  int n = m.size();
  Matrix d2(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d2[i][j] = std::pow(m.d(i, j), 2 * theta);
  if (!negative_type_test_matrix(d2).negative_type)
    throw Error(ErrorCode::NotNegativeType, "d^(2 theta) is not of negative type");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(schoenberg(d2));
  Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXd x = es.eigenvectors() * root.asDiagonal();
  EuclideanMap f;
  f.dim = n - 1;
  f.coords.assign(n, std::vector<double>(n - 1, 0.0));
  for (int a = 1; a < n; ++a)
    for (int k = 0; k < n - 1; ++k) f.coords[a][k] = x(a - 1, k);
  return f;
}

double max_snowflake_exponent(const FiniteMetricSpace& m) {
  int n = m.size();
  auto euclidean = [&](double theta) {
    Matrix d2(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d2[i][j] = std::pow(m.d(i, j), 2 * theta);
    return negative_type_test_matrix(d2).negative_type;
  };
  if (euclidean(0.5)) return 0.5;
  double lo = 0, hi = 0.5;
  for (int it = 0; it < 40; ++it) {
    double mid = 0.5 * (lo + hi);
    (euclidean(mid) ? lo : hi) = mid;
  }
  if (lo <= 0) throw Error(ErrorCode::NotNegativeType, "no Euclidean snowflake found");
  return lo;
}

SnowflakeChoice quasisymmetric_snowflake(const FiniteMetricSpace& m, QuasiParams q) {
  q.validate();
  SnowflakeChoice c;
  c.theta = max_snowflake_exponent(m);
  c.map = snowflake_embed(m, c.theta);
  // Image ratios are at most s^theta whenever the premise holds.
  double room = 1 - std::pow(q.s, c.theta);
  if (q.eps > room) q.eps = room * (1 - 1e-6);
  c.quasi = q;
  return c;
}

namespace {

void require_injective(const FiniteMetricSpace& m, const EuclideanMap& f) {
  if (f.size() != m.size()) throw Error(ErrorCode::DimensionMismatch, "map size");
  for (int i = 0; i < m.size(); ++i)
    for (int j = i + 1; j < m.size(); ++j)
      if (f.dist(i, j) <= 1e-12) {
        std::ostringstream os;
        os << "points " << i << " and " << j << " share an image";
        throw Error(ErrorCode::NonInjectiveMap, os.str());
      }
}

}  // namespace

QuasiResult quasisym_check(const FiniteMetricSpace& m, const EuclideanMap& f, const QuasiParams& q) {
  q.validate();
  require_injective(m, f);
  int n = m.size();
  QuasiResult r;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (y == x) continue;
      for (int z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        if (!within(m.d(x, y), q.s * m.d(x, z))) continue;
        double lhs = f.dist(x, y), rhs = (1 - q.eps) * f.dist(x, z);
        if (lhs > rhs * (1 + 1e-9)) {
          r.ok = false;
          r.violation = Triple{x, y, z};
          return r;
        }
      }
    }
  return r;
}

EmbeddingReport distortion(const FiniteMetricSpace& m, const EuclideanMap& f) {
  require_injective(m, f);
  EmbeddingReport r;
  for (int i = 0; i < m.size(); ++i)
    for (int j = i + 1; j < m.size(); ++j) {
      double e = f.dist(i, j), d = m.d(i, j);
      r.lipschitz = std::max(r.lipschitz, e / d);
      if (d / e > r.inverse_lipschitz) {
        r.inverse_lipschitz = d / e;
        r.contraction_witness_i = i;
        r.contraction_witness_j = j;
      }
    }
  r.distortion = r.lipschitz * r.inverse_lipschitz;
  return r;
}

double p_average_distortion(const FiniteMetricSpace& m, const EuclideanMap& f, const PointMeasure& mu,
                            double p) {
  if (p < 1) throw Error(ErrorCode::BadParams, "p >= 1");
  if (f.size() != m.size()) throw Error(ErrorCode::DimensionMismatch, "map size");
  mu.validate(m.size());
  double lip = 0, num = 0, den = 0;
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) {
      if (i == j) continue;
      double e = f.dist(i, j), d = m.d(i, j);
      lip = std::max(lip, e / d);
      double w = mu.w[i] * mu.w[j];
      num += w * std::pow(d, p);
      den += w * std::pow(e, p);
    }
  if (den <= 0) return kInf;
  return lip * std::pow(num, 1 / p) / std::pow(den, 1 / p);
}

}  // namespace zsk
