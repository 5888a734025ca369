#pragma once

// Independent reference computations. Nothing here calls into the library
// routine it is used to check.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "zsk/lp.hpp"

namespace oracle {

using Mat = std::vector<std::vector<double>>;
using Edges = std::vector<std::pair<int, int>>;

inline bool is_metric(const Mat& d, double tol = 1e-9) {
  int n = static_cast<int>(d.size());
  if (n < 2) return false;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(d[i].size()) != n || d[i][i] != 0) return false;
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(d[i][j]) || d[i][j] != d[j][i]) return false;
      if (i != j && !(d[i][j] > 0)) return false;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (d[i][j] > d[i][k] + d[k][j] + tol) return false;
  return true;
}

// Smallest eigenvalue of the Schoenberg matrix based at point 0.
inline double schoenberg_min_eig(const Mat& d) {
  int n = static_cast<int>(d.size());
  if (n < 2) return 0;
  Eigen::MatrixXd G(n - 1, n - 1);
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) G(i - 1, j - 1) = 0.5 * (d[0][i] + d[0][j] - d[i][j]);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(G, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

inline int max_matching(int n, const Edges& edges) {
  std::vector<std::uint32_t> nb(n, 0);
  for (auto [a, b] : edges)
    if (a != b) {
      nb[a] |= 1u << b;
      nb[b] |= 1u << a;
    }
  std::vector<int> memo(std::size_t{1} << n, -1);
  auto rec = [&](auto&& self, std::uint32_t free) -> int {
    if (!free) return 0;
    int& m = memo[free];
    if (m >= 0) return m;
    int v = __builtin_ctz(free);
    std::uint32_t rest = free & ~(1u << v);
    int best = self(self, rest);
    for (std::uint32_t c = nb[v] & rest; c; c &= c - 1) best = std::max(best, 1 + self(self, rest & ~(1u << __builtin_ctz(c))));
    return m = best;
  };
  return rec(rec, (n ? (1u << n) - 1 : 0));
}

// With unit capacities the fractional matching polytope has half-integral
// vertices, so enumerating phi in {0, 1/2, 1}^E is exact.
inline double fractional_matching_unit(int n, const Edges& edges) {
  Edges e;
  for (auto [a, b] : edges)
    if (a != b) e.push_back({a, b});
  int m = static_cast<int>(e.size());
  std::vector<double> load(n, 0);
  double best = 0;
  auto rec = [&](auto&& self, int i, double val) -> void {
    if (i == m) {
      best = std::max(best, val);
      return;
    }
    for (double phi : {0.0, 0.5, 1.0}) {
      auto [a, b] = e[i];
      if (load[a] + phi > 1 + 1e-12 || load[b] + phi > 1 + 1e-12) continue;
      load[a] += phi;
      load[b] += phi;
      self(self, i + 1, val + phi);
      load[a] -= phi;
      load[b] -= phi;
    }
  };
  rec(rec, 0, 0);
  return best;
}

inline double cut_ratio(const Mat& cap, const Mat& dem, std::uint64_t mask) {
  int n = static_cast<int>(cap.size());
  double c = 0, d = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (((mask >> i) & 1) != ((mask >> j) & 1)) {
        c += cap[i][j];
        d += dem[i][j];
      }
  return d > 0 ? c / d : std::numeric_limits<double>::infinity();
}

inline double brute_cut(const Mat& cap, const Mat& dem) {
  int n = static_cast<int>(cap.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) best = std::min(best, cut_ratio(cap, dem, mask));
  return best;
}

// Goemans-Linial value by cutting planes: an LP over squared distances with the
// triangle inequalities, refined by negative-type cuts sum u_i u_j d_ij <= 0 taken
// from negative eigenvectors of the centered Gram matrix.
struct CuttingPlaneResult {
  double value = 0;
  double min_eig = 0;
  int rounds = 0;
};

inline CuttingPlaneResult gl_cutting_plane(const Mat& cap, const Mat& dem, double tol = 1e-9, int max_rounds = 400) {
  int n = static_cast<int>(cap.size());
  std::vector<std::pair<int, int>> var;
  std::vector<std::vector<int>> id(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      id[i][j] = id[j][i] = static_cast<int>(var.size());
      var.push_back({i, j});
    }
  int V = static_cast<int>(var.size());
  Mat A;
  std::vector<double> b;
  std::vector<double> row(V, 0);
  for (int v = 0; v < V; ++v) row[v] = dem[var[v].first][var[v].second];
  A.push_back(row);
  b.push_back(1);
  for (auto& x : row) x = -x;
  A.push_back(row);
  b.push_back(-1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        std::vector<double> r(V, 0);
        r[id[i][j]] += 1;
        r[id[i][k]] -= 1;
        r[id[k][j]] -= 1;
        A.push_back(r);
        b.push_back(0);
      }
  std::vector<double> c(V);
  for (int v = 0; v < V; ++v) c[v] = -cap[var[v].first][var[v].second];
  CuttingPlaneResult out;
  for (out.rounds = 1; out.rounds <= max_rounds; ++out.rounds) {
    auto lp = zsk::solve_lp(A, b, c);
    out.value = -lp.value;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    for (int v = 0; v < V; ++v) D(var[v].first, var[v].second) = D(var[v].second, var[v].first) = lp.x[v];
    Eigen::MatrixXd J = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    Eigen::MatrixXd G = -0.5 * J * D * J;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    out.min_eig = es.eigenvalues()(0);
    if (out.min_eig > -tol) break;
    for (int e = 0; e < n && es.eigenvalues()(e) < -tol; ++e) {
      Eigen::VectorXd u = J * es.eigenvectors().col(e);
      std::vector<double> r(V, 0);
      for (int v = 0; v < V; ++v) r[v] = u(var[v].first) * u(var[v].second);
      A.push_back(r);
      b.push_back(0);
    }
  }
  return out;
}

// I_mu(t) for a probability vector w: max over S with w(S) >= 1/2 of w{x : d(x,S) >= t}.
inline double isoperimetric(const Mat& d, const std::vector<double>& w, double t) {
  int n = static_cast<int>(d.size());
  double total = 0;
  for (double x : w) total += x;
  double best = 0;
  for (std::uint64_t S = 1; S < (std::uint64_t{1} << n); ++S) {
    double mass = 0;
    for (int i = 0; i < n; ++i)
      if ((S >> i) & 1) mass += w[i] / total;
    if (mass < 0.5 - 1e-12) continue;
    double far = 0;
    for (int x = 0; x < n; ++x) {
      bool near = false;
      for (int i = 0; i < n && !near; ++i) near = ((S >> i) & 1) && d[x][i] < t;
      if (!near) far += w[x] / total;
    }
    best = std::max(best, far);
  }
  return best;
}

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// max expansion times max contraction over all pairs.
inline double distortion(const Mat& d, const Mat& f) {
  double up = 0, down = 0;
  int n = static_cast<int>(d.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double e = euclid(f[i], f[j]);
      up = std::max(up, e / d[i][j]);
      down = std::max(down, d[i][j] / e);
    }
  return up * down;
}

}  // namespace oracle
