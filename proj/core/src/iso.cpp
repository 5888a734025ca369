#include <algorithm>
#include <cmath>

#include "zsk/applications.hpp"

namespace zsk {

double iso_value_of(const FiniteMetricSpace& m, const PointMeasure& prob, const PointSet& Z, double t) {
  if (Z.empty()) return 0;
  double far = 0;
  for (int y = 0; y < m.size(); ++y)
    if (m.dist_to_set(y, Z) >= 2 * t) far += prob.w[y];
  return std::min(far, prob.of(Z));
}

IsoCertificate iso_certificate(const FiniteMetricSpace& m, const PointMeasure& mu, const ZeroSetDistribution& dist,
                               double t, int n_samples, std::uint64_t seed) {
  if (!(t > 0)) throw Error(ErrorCode::BadParams, "t must be positive");
  if (n_samples < 1) throw Error(ErrorCode::BadParams, "n_samples >= 1");
  mu.validate(m.size());
  PointMeasure prob = mu.probability();
  std::vector<PointSet> draws(n_samples);
  std::vector<double> vals(n_samples);
  parallel_for(n_samples, [&](int i) {
    draws[i] = dist.draw(derive(seed, label_of("iso"), i));
    vals[i] = iso_value_of(m, prob, draws[i], t);
  });
  IsoCertificate c;
  for (int i = 0; i < n_samples; ++i)
    if (vals[i] > c.bound) {
      c.bound = vals[i];
      c.witness = draws[i];
    }
  if (c.witness.empty()) c.witness = draws[0];
  return c;
}

double brute_isoperimetric(const FiniteMetricSpace& m, const PointMeasure& mu, double t) {
  int n = m.size();
  if (n > 20) throw Error(ErrorCode::CapExceeded, "brute-force isoperimetry is limited to |M| <= 20");
  mu.validate(n);
  PointMeasure prob = mu.probability();
  const long total = 1L << n;
  const int blocks = static_cast<int>(std::min<long>(total, 256));
  std::vector<double> best(blocks, 0.0);
  parallel_for(blocks, [&](int b) {
    for (long mask = 1 + b; mask < total; mask += blocks) {
      double mass = 0;
      for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1) mass += prob.w[i];
      if (mass < 0.5 - 1e-12) continue;
      double far = 0;
      for (int x = 0; x < n; ++x) {
        double dx = kInf;
        for (int i = 0; i < n; ++i)
          if ((mask >> i) & 1) dx = std::min(dx, m.d(x, i));
        if (dx >= t) far += prob.w[x];
      }
      best[b] = std::max(best[b], far);
    }
  });
  return *std::max_element(best.begin(), best.end());
}

}  // namespace zsk
