#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "zsk/applications.hpp"

namespace zsk {

void SparsestCutInstance::validate() const {
  if (n < 2) throw Error(ErrorCode::TooSmall, "instance needs n >= 2");
  auto check = [this](const Matrix& M, const char* what) {
    if (static_cast<int>(M.size()) != n) throw Error(ErrorCode::NotSquare, what);
    for (const auto& row : M)
      if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::NotSquare, what);
    for (int i = 0; i < n; ++i) {
      if (M[i][i] != 0) throw Error(ErrorCode::NegativeEntry, std::string(what) + " diagonal must be zero");
      for (int j = 0; j < n; ++j) {
        if (!(M[i][j] >= 0) || !std::isfinite(M[i][j])) throw Error(ErrorCode::NegativeEntry, what);
        if (M[i][j] != M[j][i]) throw Error(ErrorCode::AsymmetricMatrix, what);
      }
    }
  };
  check(capacities, "capacities");
  check(demands, "demands");
  bool any = false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) any |= demands[i][j] > 0;
  if (!any) throw Error(ErrorCode::BadParams, "no positive demand");
}

double SparsestCutInstance::ratio(const std::vector<char>& in_S) const {
  // Sum over unordered crossing pairs so S and its complement give the same bits.
  double c = 0, d = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (in_S[i] != in_S[j]) {
        c += capacities[i][j];
        d += demands[i][j];
      }
  return d > 0 ? c / d : kInf;
}

SparsestCutInstance random_cut_instance(int n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::TooSmall, "instance needs n >= 2");
  Rng g = make_rng(derive(seed, label_of("cut_instance"), n));
  SparsestCutInstance inst;
  inst.n = n;
  inst.capacities.assign(n, std::vector<double>(n, 0.0));
  inst.demands.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double c = uniform01(g) < 0.7 ? 0.1 + 0.9 * uniform01(g) : 0.0;
      double d = uniform01(g);
      inst.capacities[i][j] = inst.capacities[j][i] = c;
      inst.demands[i][j] = inst.demands[j][i] = d;
    }
  inst.demands[0][1] = inst.demands[1][0] = std::max(inst.demands[0][1], 0.05);
  return inst;
}

CutResult brute_sparsest_cut(const SparsestCutInstance& inst) {
  inst.validate();
  int n = inst.n;
  if (n > 20) throw Error(ErrorCode::CapExceeded, "brute-force cut search is limited to n <= 20");
  // S ranges over nonempty subsets avoiding the last point: each cut once.
  const long total = (1L << (n - 1)) - 1;
  const int blocks = static_cast<int>(std::min<long>(total, 256));
  std::vector<double> best(blocks, kInf);
  std::vector<long> arg(blocks, -1);
  parallel_for(blocks, [&](int b) {
    std::vector<char> in(n);
    for (long mask = 1 + b; mask <= total; mask += blocks) {
      for (int i = 0; i < n; ++i) in[i] = (mask >> i) & 1;
      double r = inst.ratio(in);
      if (r < best[b] || (r == best[b] && mask < arg[b])) {
        best[b] = r;
        arg[b] = mask;
      }
    }
  });
  CutResult res;
  long mask = -1;
  for (int b = 0; b < blocks; ++b)
    if (arg[b] >= 0 && (best[b] < res.value || (best[b] == res.value && arg[b] < mask))) {
      res.value = best[b];
      mask = arg[b];
    }
  res.S.assign(n, 0);
  for (int i = 0; i < n && mask > 0; ++i) res.S[i] = (mask >> i) & 1;
  return res;
}

CutResult sweep_round_cut(const SparsestCutInstance& inst, const EuclideanMap& embedding) {
  inst.validate();
  int n = inst.n;
  if (embedding.size() != n) throw Error(ErrorCode::DimensionMismatch, "embedding size");
  CutResult res;
  std::vector<int> order(n);
  std::vector<char> in(n);
  for (int c = 0; c < embedding.dim; ++c) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return embedding.coords[a][c] < embedding.coords[b][c]; });
    std::fill(in.begin(), in.end(), 0);
    for (int k = 0; k + 1 < n; ++k) {
      in[order[k]] = 1;
      double r = inst.ratio(in);
      if (r < res.value) {
        res.value = r;
        res.S = in;
      }
    }
  }
  if (res.S.empty()) {
    // Constant embedding: fall back to singletons.
    for (int i = 0; i < n; ++i) {
      std::fill(in.begin(), in.end(), 0);
      in[i] = 1;
      double r = inst.ratio(in);
      if (r < res.value) {
        res.value = r;
        res.S = in;
      }
    }
  }
  return res;
}

namespace {

using Eigen::MatrixXd;

struct Tri {
  int i, j, k;  // d_ij <= d_ik + d_kj
};

double sq_dist(const MatrixXd& X, int i, int j) { return X(i, i) + X(j, j) - 2 * X(i, j); }

double tri_form(const MatrixXd& Y, const Tri& t) {
  return 2 * (Y(t.i, t.k) + Y(t.j, t.k) - Y(t.k, t.k) - Y(t.i, t.j));
}

void tri_add(MatrixXd& Y, const Tri& t, double s) {
  Y(t.k, t.k) -= 2 * s;
  Y(t.i, t.j) -= s;
  Y(t.j, t.i) -= s;
  Y(t.i, t.k) += s;
  Y(t.k, t.i) += s;
  Y(t.j, t.k) += s;
  Y(t.k, t.j) += s;
}

MatrixXd laplacian(const Matrix& W) {
  int n = static_cast<int>(W.size());
  MatrixXd L = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) {
        L(i, j) = -W[i][j];
        L(i, i) += W[i][j];
      }
  return L;
}

// Nearest centered PSD matrix.
MatrixXd project_psd(const MatrixXd& Z) {
  int n = static_cast<int>(Z.rows());
  MatrixXd J = MatrixXd::Identity(n, n) - MatrixXd::Constant(n, n, 1.0 / n);
  MatrixXd S = J * (0.5 * (Z + Z.transpose())) * J;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(S);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

class ConstraintProjector {
 public:
  ConstraintProjector(int n, MatrixXd LD) : LD_(std::move(LD)), ld_norm2_(LD_.squaredNorm()) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (k != i && k != j) tris_.push_back({i, j, k});
    lambda_.resize(tris_.size());
  }

  double max_violation(const MatrixXd& X) const {
    double v = std::abs((LD_.cwiseProduct(X)).sum() - 1);
    for (const auto& t : tris_) v = std::max(v, tri_form(X, t));
    return v;
  }

  // Dykstra cycles over the hyperplane and every triangle halfspace.
  MatrixXd project(MatrixXd Y, double tol) {
    std::fill(lambda_.begin(), lambda_.end(), 0.0);
    for (int pass = 0; pass < 5000; ++pass) {
      double moved = 0;
      double off = (LD_.cwiseProduct(Y)).sum() - 1;
      if (off != 0) {
        Y -= (off / ld_norm2_) * LD_;
        moved = std::abs(off) / std::sqrt(ld_norm2_);
      }
      for (size_t t = 0; t < tris_.size(); ++t) {
        double lam = std::max(0.0, tri_form(Y, tris_[t]) / 10 + lambda_[t]);
        double step = lambda_[t] - lam;
        if (step != 0) {
          tri_add(Y, tris_[t], step);
          moved = std::max(moved, std::abs(step) * std::sqrt(10.0));
          lambda_[t] = lam;
        }
      }
      if (moved <= tol) break;
    }
    return Y;
  }

 private:
  MatrixXd LD_;
  double ld_norm2_;
  std::vector<Tri> tris_;
  std::vector<double> lambda_;
};

}  // namespace

SdpResult sdp_gl_solve(const SparsestCutInstance& inst, const SdpConfig& cfg) {
  inst.validate();
  const int n = inst.n;
  if (n > cfg.max_n) throw Error(ErrorCode::CapExceeded, "SDP solver limited to n <= " + std::to_string(cfg.max_n));
  if (!(cfg.tol > 0) || cfg.max_iter < 1) throw Error(ErrorCode::BadParams, "SDP tolerance and iteration cap");
  MatrixXd LC = laplacian(inst.capacities);
  MatrixXd LD = laplacian(inst.demands);
  ConstraintProjector proj(n, LD);

  MatrixXd J = MatrixXd::Identity(n, n) - MatrixXd::Constant(n, n, 1.0 / n);
  MatrixXd Y = J / (LD.cwiseProduct(J)).sum();
  MatrixXd U = MatrixXd::Zero(n, n);
  MatrixXd X = Y;
  double rho = std::max(1.0, LC.norm());

  SdpResult res;
  double prev_obj = kInf;
  int calm = 0;
  for (long it = 1; it <= cfg.max_iter; ++it) {
    X = project_psd(Y - U - LC / rho);
    MatrixXd Yold = Y;
    Y = proj.project(X + U, cfg.tol * 1e-3);
    U += X - Y;
    double r = (X - Y).norm();
    double s = rho * (Y - Yold).norm();
    double mass = (LD.cwiseProduct(X)).sum();
    double obj = mass > 0 ? (LC.cwiseProduct(X)).sum() / mass : kInf;
    double stall = std::abs(obj - prev_obj) / std::max(1.0, std::abs(obj));
    prev_obj = obj;
    res.iterations = it;
    if (it % 25 == 0) {
      if (r > 10 * s) {
        rho *= 2;
        U /= 2;
      } else if (s > 10 * r) {
        rho /= 2;
        U *= 2;
      }
    }
    calm = stall <= cfg.tol ? calm + 1 : 0;
    if (r <= cfg.tol && s <= cfg.tol && calm >= 10 && mass > 0 && proj.max_violation(X / mass) <= cfg.tol) {
      res.converged = true;
      break;
    }
  }

  double mass = (LD.cwiseProduct(X)).sum();
  if (!(mass > 0)) throw Error(ErrorCode::SolverStalled, "iterate carries no demand");
  X /= mass;
  res.value = (LC.cwiseProduct(X)).sum();
  res.max_violation = proj.max_violation(X);
  res.objective_stall = std::abs(res.value - prev_obj) / std::max(1.0, std::abs(res.value));
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(X);
  res.vectors.dim = n;
  res.vectors.coords.assign(n, std::vector<double>(n));
  for (int c = 0; c < n; ++c) {
    double root = std::sqrt(std::max(0.0, es.eigenvalues()(c)));
    for (int i = 0; i < n; ++i) res.vectors.coords[i][c] = es.eigenvectors()(i, c) * root;
  }
  res.neg_type_metric.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) res.neg_type_metric[i][j] = std::max(0.0, sq_dist(X, i, j));
  return res;
}

void require_converged(const SdpResult& r) {
  if (!r.converged)
    throw Error(ErrorCode::SolverStalled, "SDP did not reach tolerance after " + std::to_string(r.iterations) +
                                              " iterations (violation " + std::to_string(r.max_violation) + ")");
}

}  // namespace zsk
