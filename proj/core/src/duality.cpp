#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "zsk/lp.hpp"
#include "zsk/zeroset.hpp"

namespace zsk {

double column_payoff(const std::pair<PointSet, PointSet>& col, int x, int y) {
  auto has = [](const PointSet& s, int v) { return std::binary_search(s.begin(), s.end(), v); };
  double p = 0;
  if (has(col.first, x) && has(col.second, y)) p += 0.5;
  if (has(col.first, y) && has(col.second, x)) p += 0.5;
  return p;
}

ColumnFactory pipeline_factory(const SeparatedPairSampler& base) {
  auto shared = std::make_shared<SeparatedPairSampler>(base);
  return [shared](const PairWeighting& omega, std::uint64_t stream) {
    return shared->with_omega(omega).draw(stream);
  };
}

namespace {

ZeroSetDistribution mixture_distribution(std::vector<std::pair<PointSet, PointSet>> cols, std::vector<double> w,
                                         double tau, const std::string& name) {
  ZeroSetDistribution d;
  d.construction = name;
  d.tau = tau;
  d.params["columns"] = static_cast<double>(cols.size());
  auto shared_cols = std::make_shared<const std::vector<std::pair<PointSet, PointSet>>>(std::move(cols));
  auto shared_w = std::make_shared<const std::vector<double>>(std::move(w));
  d.draw = [shared_cols, shared_w](std::uint64_t stream) {
    Rng g = make_rng(stream);
    std::discrete_distribution<int> pick(shared_w->begin(), shared_w->end());
    const auto& c = (*shared_cols)[pick(g)];
    return uniform01(g) < 0.5 ? c.first : c.second;
  };
  return d;
}

int best_response(const std::vector<std::vector<int>>& cover, const std::vector<double>& w) {
  int best = -1;
  double best_score = -1;
  for (size_t j = 0; j < cover.size(); ++j) {
    double sc = 0;
    for (int s : cover[j]) sc += w[s];
    if (sc > best_score) {
      best_score = sc;
      best = static_cast<int>(j);
    }
  }
  return best;
}

}  // namespace

DualityResult duality_solve(const FiniteMetricSpace& m, double tau, const ColumnFactory& factory,
                            const DualityConfig& cfg, std::uint64_t seed) {
  int n = m.size();
  DualityResult res;
  std::vector<std::vector<int>> pair_id(n, std::vector<int>(n, -1));
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (m.d(x, y) >= tau * (1 - 1e-12)) {
        pair_id[x][y] = pair_id[y][x] = static_cast<int>(res.pairs.size());
        res.pairs.push_back({x, y});
      }
  const int S = static_cast<int>(res.pairs.size());
  if (S == 0) throw Error(ErrorCode::EmptySupport, "no pairs at distance >= tau");
  if (cfg.rounds < 1) throw Error(ErrorCode::BadParams, "rounds >= 1");

  // Columns are deduplicated by the set of pairs they cover; payoff is 1/2 on each.
  std::vector<std::vector<int>> cover;
  std::map<std::vector<int>, int> index;
  std::vector<long> plays;
  std::vector<double> logw(S, 0.0);
  std::vector<long> covered_count(S, 0);
  const double eta = std::sqrt(std::log(static_cast<double>(S)) / cfg.rounds);

  PairWeighting omega;
  omega.n = n;
  omega.tau = tau;
  omega.omega.assign(n, std::vector<double>(n, 0.0));
  std::vector<double> w(S);

  for (int t = 0; t < cfg.rounds; ++t) {
    double top = *std::max_element(logw.begin(), logw.end());
    double total = 0;
    for (int s = 0; s < S; ++s) total += (w[s] = std::exp(logw[s] - top));
    for (int s = 0; s < S; ++s) {
      auto [x, y] = res.pairs[s];
      omega.omega[x][y] = omega.omega[y][x] = 0.5 * w[s] / total;
    }
    auto col = factory(omega, derive(seed, label_of("duality"), t));
    std::vector<int> cov;
    for (int a : col.first)
      for (int b : col.second) {
        int id = pair_id[a][b];
        if (id >= 0) cov.push_back(id);
      }
    std::sort(cov.begin(), cov.end());
    auto it = index.find(cov);
    if (it == index.end()) {
      it = index.emplace(cov, static_cast<int>(cover.size())).first;
      cover.push_back(cov);
      res.columns.push_back(col);
      plays.push_back(0);
    }
    int best = best_response(cover, w);
    for (int s : cover[best]) logw[s] -= eta * 0.5;
  }
  // Second pass: plain MW over the fixed pool, from uniform weights.
  std::fill(logw.begin(), logw.end(), 0.0);
  for (int t = 0; t < cfg.rounds; ++t) {
    double top = *std::max_element(logw.begin(), logw.end());
    for (int s = 0; s < S; ++s) w[s] = std::exp(logw[s] - top);
    int best = best_response(cover, w);
    ++plays[best];
    for (int s : cover[best]) {
      logw[s] -= eta * 0.5;
      ++covered_count[s];
    }
  }
  long least = *std::min_element(covered_count.begin(), covered_count.end());
  res.mw_value = 0.5 * static_cast<double>(least) / cfg.rounds;

  if (cfg.mode == DualityConfig::MW) {
    res.weights.resize(plays.size());
    for (size_t j = 0; j < plays.size(); ++j) res.weights[j] = static_cast<double>(plays[j]) / cfg.rounds;
    res.value = res.mw_value;
  } else {
    // max sum y s.t. (M + 1)^T y <= 1; value = 1 / sum y - 1, mixture from the duals.
    int J = static_cast<int>(cover.size());
    std::vector<std::vector<double>> A(J, std::vector<double>(S, 1.0));
    for (int j = 0; j < J; ++j)
      for (int s : cover[j]) A[j][s] += 0.5;
    auto lp = solve_lp(A, std::vector<double>(J, 1.0), std::vector<double>(S, 1.0));
    if (lp.status != LpResult::Optimal || lp.value <= 0) throw Error(ErrorCode::SolverStalled, "game LP failed");
    double vprime = 1 / lp.value;
    res.lp_value = vprime - 1;
    res.weights.assign(J, 0.0);
    double tw = 0;
    for (int j = 0; j < J; ++j) tw += (res.weights[j] = std::max(0.0, lp.dual[j] * vprime));
    for (auto& x : res.weights) x /= tw;
    std::vector<double> pay(S, 0.0);
    for (int j = 0; j < J; ++j)
      for (int s : cover[j]) pay[s] += 0.5 * res.weights[j];
    res.value = *std::min_element(pay.begin(), pay.end());
  }
  std::vector<std::pair<PointSet, PointSet>> cols;
  std::vector<double> wts;
  for (size_t j = 0; j < res.columns.size(); ++j)
    if (res.weights[j] > 0) {
      cols.push_back(res.columns[j]);
      wts.push_back(res.weights[j]);
    }
  res.dist = mixture_distribution(std::move(cols), std::move(wts), tau,
                                  cfg.mode == DualityConfig::MW ? "duality_mw" : "duality_exact_lp");
  res.dist.params["value"] = res.value;
  return res;
}

ZeroSetDistribution glue_scales(std::vector<ZeroSetDistribution> dists) {
  int kmax = static_cast<int>(dists.size());
  if (kmax < 1) throw Error(ErrorCode::BadParams, "kmax >= 1");
  if (kmax == 1) return dists[0];
  std::vector<double> w(kmax);
  for (int k = 1; k <= kmax; ++k) w[k - 1] = glue_weight(k, kmax);
  ZeroSetDistribution d;
  d.construction = "glue_scales";
  d.tau = dists[0].tau;
  d.params["kmax"] = kmax;
  auto shared = std::make_shared<const std::vector<ZeroSetDistribution>>(std::move(dists));
  d.draw = [shared, w](std::uint64_t stream) {
    Rng g = make_rng(stream);
    std::discrete_distribution<int> pick(w.begin(), w.end());
    int k = pick(g);
    return (*shared)[k].draw(derive(stream, label_of("glue"), k));
  };
  return d;
}

double glue_weight(int k, int kmax) { return std::ldexp(1.0, -k) / (1 - std::ldexp(1.0, -kmax)); }

}  // namespace zsk
