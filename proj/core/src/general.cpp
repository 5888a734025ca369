#include <algorithm>
#include <cmath>

#include "zsk/zeroset.hpp"

namespace zsk {

ZeroSetDistribution general_zeroset_sampler(const FiniteMetricSpace& m, const PointMeasure& mu, double tau) {
  mu.validate(m.size());
  if (!(tau > 0)) throw Error(ErrorCode::BadParams, "tau must be positive");
  ZeroSetDistribution d;
  d.construction = "general_zeroset";
  d.tau = tau;
  d.params["tau"] = tau;
  auto space = std::make_shared<const FiniteMetricSpace>(m);
  auto weights = std::make_shared<const std::vector<double>>(mu.w);

  auto raw = [space, weights, tau](Rng& g) {
    int n = space->size();
    double R = tau / 4 + uniform01(g) * (tau / 4);
    while (R <= tau / 4) R = tau / 4 + uniform01(g) * (tau / 4);
    std::discrete_distribution<int> pick(weights->begin(), weights->end());
    std::vector<char> bit_of_point(n, 0), done(n, 0);
    int remaining = n;
    for (long t = 1; remaining > 0; ++t) {
      if (t > 1000000) throw Error(ErrorCode::IterationCapExceeded, "stopping times undetermined after 1e6 draws");
      int z = pick(g);
      char sigma = uniform01(g) < 0.5;
      for (int x = 0; x < n; ++x)
        if (!done[x] && space->d(z, x) <= R) {
          done[x] = 1;
          bit_of_point[x] = sigma;
          --remaining;
        }
    }
    PointSet Z;
    for (int x = 0; x < n; ++x)
      if (bit_of_point[x]) Z.push_back(x);
    return Z;
  };
  d.draw_raw = [raw](std::uint64_t stream) {
    Rng g = make_rng(stream);
    return raw(g);
  };
  d.draw = [raw](std::uint64_t stream) {
    Rng g = make_rng(stream);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      auto Z = raw(g);
      if (!Z.empty()) return Z;
    }
    throw Error(ErrorCode::RejectionCapExceeded, "no nonempty draw in 1000 attempts");
  };
  return d;
}

std::vector<SpreadingEstimate> spreading_estimate(const FiniteMetricSpace& m, const ZeroSetDistribution& dist,
                                                  double zeta, double tau, const std::vector<std::pair<int, int>>& pairs,
                                                  int n_samples, std::uint64_t seed, bool raw) {
  for (auto [x, y] : pairs)
    if (m.d(x, y) < tau * (1 - 1e-12)) throw Error(ErrorCode::PairTooClose, "pair closer than tau");
  if (n_samples < 1) throw Error(ErrorCode::BadParams, "n_samples >= 1");
  if (raw && !dist.draw_raw) throw Error(ErrorCode::BadParams, "distribution has no raw law");
  std::vector<PointSet> draws(n_samples);
  parallel_for(n_samples, [&](int i) {
    auto stream = derive(seed, label_of("spreading"), i);
    draws[i] = raw ? dist.draw_raw(stream) : dist.draw(stream);
  });
  std::vector<SpreadingEstimate> out;
  for (auto [x, y] : pairs) {
    long hits = 0;
    for (const auto& Z : draws) {
      if (!std::binary_search(Z.begin(), Z.end(), x)) continue;
      if (m.dist_to_set(y, Z) >= tau / zeta) ++hits;
    }
    double p = static_cast<double>(hits) / n_samples;
    double half = 1.96 * std::sqrt(p * (1 - p) / n_samples);
    out.push_back({x, y, p, std::max(0.0, p - half), std::min(1.0, p + half)});
  }
  return out;
}

}  // namespace zsk
