#include <algorithm>
#include <cmath>

#include "zsk/applications.hpp"

namespace zsk {

double lq_norm(const std::vector<double>& x, double q) {
  if (std::isinf(q)) {
    double m = 0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0;
  for (double v : x) s += std::pow(std::abs(v), q);
  return std::pow(s, 1 / q);
}

FiniteMetricSpace lq_space(const std::vector<std::vector<double>>& points, double q) {
  int n = static_cast<int>(points.size());
  if (n < 2) throw Error(ErrorCode::TooSmall, "need at least 2 points");
  Matrix d(n, std::vector<double>(n, 0.0));
  std::vector<double> diff(points[0].size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (points[i].size() != points[j].size()) throw Error(ErrorCode::DimensionMismatch, "point dimensions differ");
      for (size_t c = 0; c < diff.size(); ++c) diff[c] = points[i][c] - points[j][c];
      d[i][j] = d[j][i] = lq_norm(diff, q);
      if (d[i][j] == 0) throw Error(ErrorCode::NegativeEntry, "repeated point");
    }
  return trusted_space(std::move(d));
}

double LineFunctional::operator()(const std::vector<double>& x) const {
  double s = 0;
  for (int c = 0; c < n; ++c) s += x[c] * u[c];
  return scale * s;
}

LineFunctional sample_line_functional(int n, double p, double q, Rng& g) {
  if (n < 1 || p < 1 || q < 1) throw Error(ErrorCode::BadParams, "line functional needs n >= 1, p, q >= 1");
  LineFunctional f;
  f.q = q;
  f.n = n;
  f.u.resize(n);
  const double qd = q > 1 ? q / (q - 1) : kInf;  // dual exponent
  do {
    if (std::isinf(qd)) {
      for (auto& h : f.u) h = (g() & 1) ? 1.0 : -1.0;
    } else {
      // |h|^{q'} ~ Gamma(1/q', 1)
      std::gamma_distribution<double> gam(1 / qd, 1.0);
      for (auto& h : f.u) h = std::pow(gam(g), 1 / qd) * ((g() & 1) ? 1.0 : -1.0);
    }
  } while (lq_norm(f.u, qd) == 0);
  double rate = std::pow(std::max(1.0, n / p), 1 - 1 / std::max(2.0, q));
  f.scale = rate / lq_norm(f.u, qd);
  return f;
}

LineEmbedResult line_functional_embed(const std::vector<std::vector<double>>& points, const std::vector<double>& mu,
                                      double p, double q, int n_candidates, std::uint64_t seed) {
  if (n_candidates < 1) throw Error(ErrorCode::BadParams, "n_candidates >= 1");
  if (points.empty()) throw Error(ErrorCode::TooSmall, "no points");
  const int n = static_cast<int>(points[0].size());
  auto space = lq_space(points, q);
  PointMeasure measure = mu.empty() ? PointMeasure::counting(space.size()) : PointMeasure{mu};
  measure.validate(space.size());

  LineEmbedResult res;
  std::vector<LineFunctional> cands(n_candidates);
  res.candidate_distortions.assign(n_candidates, kInf);
  parallel_for(n_candidates, [&](int c) {
    Rng g = make_rng(derive(seed, label_of("line_functional"), c));
    cands[c] = sample_line_functional(n, p, q, g);
    EuclideanMap F;
    F.dim = 1;
    F.coords.resize(space.size());
    for (int i = 0; i < space.size(); ++i) F.coords[i] = {cands[c](points[i])};
    res.candidate_distortions[c] = p_average_distortion(space, F, measure, p);
  });
  int best = static_cast<int>(std::min_element(res.candidate_distortions.begin(), res.candidate_distortions.end()) -
                              res.candidate_distortions.begin());
  res.best = cands[best];
  res.distortion = res.candidate_distortions[best];
  return res;
}

}  // namespace zsk
