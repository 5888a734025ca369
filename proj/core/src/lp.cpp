#include "zsk/lp.hpp"

#include <limits>
#include <utility>

namespace zsk {

namespace {

class Tableau {
 public:
  Tableau(const std::vector<std::vector<double>>& A, const std::vector<double>& b, const std::vector<double>& c,
          double eps)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        eps_(eps),
        basis_(m_),
        nonbasis_(n_ + 1),
        D_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j) D_[i][j] = A[i][j];
    for (int i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      D_[i][n_] = -1;
      D_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasis_[j] = j;
      D_[m_][j] = -c[j];
    }
    nonbasis_[n_] = -1;
    D_[m_ + 1][n_] = 1;
  }

  LpResult solve() {
    LpResult res;
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (D_[i][n_ + 1] < D_[r][n_ + 1]) r = i;
    if (m_ > 0 && D_[r][n_ + 1] < -eps_) {
      pivot(r, n_);
      if (!simplex(1) || D_[m_ + 1][n_ + 1] < -eps_) {
        res.status = LpResult::Infeasible;
        return res;
      }
      for (int i = 0; i < m_; ++i)
        if (basis_[i] == -1) {
          int s = -1;
          for (int j = 0; j <= n_; ++j)
            if (s == -1 || D_[i][j] < D_[i][s] || (D_[i][j] == D_[i][s] && nonbasis_[j] < nonbasis_[s])) s = j;
          pivot(i, s);
        }
    }
    if (!simplex(2)) {
      res.status = LpResult::Unbounded;
      res.value = std::numeric_limits<double>::infinity();
      return res;
    }
    res.x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= 0 && basis_[i] < n_) res.x[basis_[i]] = D_[i][n_ + 1];
    res.dual.assign(m_, 0.0);
    for (int j = 0; j <= n_; ++j)
      if (nonbasis_[j] >= n_) res.dual[nonbasis_[j] - n_] = D_[m_][j];
    res.value = D_[m_][n_ + 1];
    return res;
  }

 private:
  void pivot(int r, int s) {
    double inv = 1.0 / D_[r][s];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || D_[i][s] == 0) continue;
      double f = D_[i][s] * inv;
      auto& row = D_[i];
      const auto& pr = D_[r];
      for (int j = 0; j < n_ + 2; ++j)
        if (j != s) row[j] -= pr[j] * f;
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) D_[r][j] *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) D_[i][s] *= -inv;
    D_[r][s] = inv;
    std::swap(basis_[r], nonbasis_[s]);
  }

  // Dantzig pricing, switching to Bland's rule after many pivots to rule out cycling.
  bool simplex(int phase) {
    int x = phase == 1 ? m_ + 1 : m_;
    long iter = 0;
    const long bland_after = 50L * (m_ + n_ + 10);
    while (true) {
      bool bland = ++iter > bland_after;
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (phase == 2 && nonbasis_[j] == -1) continue;
        if (bland) {
          if (D_[x][j] < -eps_ && (s == -1 || nonbasis_[j] < nonbasis_[s])) s = j;
        } else if (s == -1 || D_[x][j] < D_[x][s] || (D_[x][j] == D_[x][s] && nonbasis_[j] < nonbasis_[s])) {
          s = j;
        }
      }
      if (s == -1 || D_[x][s] > -eps_) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (D_[i][s] < eps_) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        double lhs = D_[i][n_ + 1] / D_[i][s], rhs = D_[r][n_ + 1] / D_[r][s];
        if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[r])) r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  int m_, n_;
  double eps_;
  std::vector<int> basis_, nonbasis_;
  std::vector<std::vector<double>> D_;
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c, double eps) {
  if (c.empty()) {
    LpResult r;
    r.dual.assign(b.size(), 0.0);
    return r;
  }
  return Tableau(A, b, c, eps).solve();
}

}  // namespace zsk
