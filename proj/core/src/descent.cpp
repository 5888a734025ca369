#include "zsk/descent.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

namespace zsk {

long ck_extended(const FiniteMetricSpace& m, const PointMeasure& mu, int x, double t) {
  double lo = mu.min();
  double cap = std::exp(t);
  int n = m.size();
  if (mu.total() / lo <= cap) return kIndexPlusInf;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return m.d(x, a) < m.d(x, b); });
  // First radius at which the ball mass exceeds e^t.
  double mass = 0, rstar = 0;
  for (int k = 0; k < n;) {
    double r = m.d(x, order[k]);
    while (k < n && m.d(x, order[k]) == r) mass += mu.w[order[k++]] / lo;
    if (mass > cap) {
      rstar = r;
      break;
    }
  }
  if (rstar == 0) return kIndexMinusInf;
  long k = static_cast<long>(std::ceil(std::log2(rstar))) - 1;
  while (!within(rstar, std::ldexp(1.0, static_cast<int>(k + 1)))) ++k;
  while (within(rstar, std::ldexp(1.0, static_cast<int>(k)))) --k;
  return k;
}

int ck_scale_index(const FiniteMetricSpace& m, const PointMeasure& mu, int x, double t) {
  mu.validate(m.size());
  long k = ck_extended(m, mu, x, t);
  if (k == kIndexPlusInf) throw Error(ErrorCode::InfiniteIndex, "e^t >= mu(M): index is +infinity");
  if (k == kIndexMinusInf) throw Error(ErrorCode::InfiniteIndex, "mu(x) > e^t: index is -infinity");
  return static_cast<int>(k);
}

int LazySelectors::sigma(long i) {
  auto it = sigma_.find(i);
  if (it == sigma_.end()) it = sigma_.emplace(i, static_cast<int>(g_() & 1)).first;
  return it->second;
}

int LazySelectors::eta(long i) {
  auto it = eta_.find(i);
  if (it == eta_.end()) it = eta_.emplace(i, std::uniform_int_distribution<int>(0, 2)(g_)).first;
  return it->second;
}

void MixerConfig::validate() const {
  if (!(a > b)) throw Error(ErrorCode::BadParams, "mixer needs a > b");
  if (distributions.empty()) throw Error(ErrorCode::BadParams, "mixer window is empty");
  if (nonempty_cap < 1) throw Error(ErrorCode::BadParams, "nonempty cap >= 1");
}

ZeroSetDistribution mixed_zeroset_sampler(const FiniteMetricSpace& m, const PointMeasure& mu, MixerConfig config) {
  config.validate();
  mu.validate(m.size());
  int n = m.size();
  long ilo = static_cast<long>(std::ceil(config.b)), ihi = static_cast<long>(std::ceil(config.a));
  double phi = mu.total() / mu.min();
  long tcount = std::max(1L, static_cast<long>(std::ceil(std::log(phi))));
  // ck(z, t) for every z and t in T.
  auto table = std::make_shared<std::vector<std::vector<long>>>(tcount, std::vector<long>(n));
  for (long t = 0; t < tcount; ++t)
    for (int z = 0; z < n; ++z) (*table)[t][z] = ck_extended(m, mu, z, static_cast<double>(t));

  auto cfg = std::make_shared<const MixerConfig>(std::move(config));
  ZeroSetDistribution d;
  d.construction = "mixed_descent";
  d.params["a"] = cfg->a;
  d.params["b"] = cfg->b;
  d.params["n_lo"] = cfg->n_lo;
  d.params["n_hi"] = cfg->n_hi();
  d.draw = [cfg, table, ilo, ihi, tcount, n](std::uint64_t stream) {
    Rng g = make_rng(stream);
    for (int attempt = 0; attempt < cfg->nonempty_cap; ++attempt) {
      long i = std::uniform_int_distribution<long>(ilo, ihi)(g);
      long t = std::uniform_int_distribution<long>(0, tcount - 1)(g);
      LazySelectors sel(g);
      std::map<int, PointSet> scale_sets;
      std::uint64_t round_stream = g();
      PointSet Z;
      for (int z = 0; z < n; ++z) {
        long k = (*table)[t][z];
        long idx = (k == kIndexPlusInf || k == kIndexMinusInf) ? k : k - i;
        if (sel.sigma(idx) == 1) {
          Z.push_back(z);
          continue;
        }
        long target;
        if (idx == kIndexPlusInf) target = cfg->n_hi();
        else if (idx == kIndexMinusInf) target = cfg->n_lo;
        else target = std::clamp(idx + sel.eta(idx), static_cast<long>(cfg->n_lo), static_cast<long>(cfg->n_hi()));
        int slot = static_cast<int>(target - cfg->n_lo);
        auto it = scale_sets.find(slot);
        if (it == scale_sets.end())
          it = scale_sets.emplace(slot, cfg->distributions[slot].draw(derive(round_stream, slot))).first;
        if (std::binary_search(it->second.begin(), it->second.end(), z)) Z.push_back(z);
      }
      if (!Z.empty()) return Z;
    }
    throw Error(ErrorCode::RejectionCapExceeded, "mixed sampler produced only empty sets");
  };
  return d;
}

EuclideanMap frechet_embed(const FiniteMetricSpace& m, const std::vector<PointSet>& zero_sets) {
  int N = static_cast<int>(zero_sets.size());
  if (N == 0) throw Error(ErrorCode::BadParams, "need at least one zero set");
  EuclideanMap F;
  F.dim = N;
  F.coords.assign(m.size(), std::vector<double>(N));
  double scale = 1 / std::sqrt(static_cast<double>(N));
  for (int j = 0; j < N; ++j) {
    if (zero_sets[j].empty()) throw Error(ErrorCode::EmptyZeroSet, "zero set " + std::to_string(j) + " is empty");
    for (int x = 0; x < m.size(); ++x) F.coords[x][j] = m.dist_to_set(x, zero_sets[j]) * scale;
  }
  return F;
}

int lipschitz_violations(const FiniteMetricSpace& m, const EuclideanMap& F) {
  int bad = 0;
  for (int x = 0; x < m.size(); ++x)
    for (int y = x + 1; y < m.size(); ++y)
      if (F.dist(x, y) > m.d(x, y) * (1 + 1e-12)) ++bad;
  return bad;
}

std::pair<int, int> scale_window(const FiniteMetricSpace& m) {
  int lo = static_cast<int>(std::floor(std::log2(m.min_distance()))) - 1;
  int hi = static_cast<int>(std::ceil(std::log2(m.diameter())));
  return {lo, hi};
}

EmbedResult euclidean_embed_pipeline(const FiniteMetricSpace& m, const PointMeasure& mu, const EuclideanMap& phi_in,
                                     const EmbedConfig& cfg, std::uint64_t seed) {
  if (cfg.N < 1 || !(cfg.theta > 0 && cfg.theta <= 1) || cfg.kmax < 1)
    throw Error(ErrorCode::BadParams, "embedding configuration");
  mu.validate(m.size());
  EmbedResult res;
  PipelineParams base_params = cfg.pipeline;
  EuclideanMap phi = phi_in;
  if (phi.dim == 0) {
    auto sf = quasisymmetric_snowflake(m, cfg.pipeline.quasi);
    phi = std::move(sf.map);
    base_params.quasi = sf.quasi;
    res.theta = sf.theta;
  }
  auto qs = quasisym_check(m, phi, base_params.quasi);
  if (!qs.ok) throw Error(ErrorCode::QuasisymmetryViolated, "map is not quasisymmetric for the given (s, eps)");
  res.quasi = base_params.quasi;

  std::tie(res.n_lo, res.n_hi) = scale_window(m);
  const double diam = m.diameter();
  const int offsets = static_cast<int>(std::ceil(1 / cfg.theta)) + 1;
  const int scales = res.n_hi - res.n_lo + 1;

  struct Job {
    int scale, offset, k;
  };
  std::vector<Job> jobs;
  for (int s = 0; s < scales; ++s)
    for (int j = 0; j < offsets; ++j)
      for (int k = 1; k <= cfg.kmax; ++k) jobs.push_back({s, j, k});
  std::vector<ZeroSetDistribution> solved(jobs.size());
  std::vector<double> betas(jobs.size());
  std::vector<char> clamped(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), [&](int idx) {
    const Job& jb = jobs[idx];
    double tau = std::min(std::ldexp(1.0, res.n_lo + jb.scale) * std::pow(1 + cfg.theta, jb.offset), diam);
    PipelineParams pp = base_params;
    pp.tau = tau;
    pp.C = std::exp(jb.k - 1.0);
    pp.check_quasi = false;
    SeparatedPairSampler base(m, mu, phi, pp, PairWeighting::uniform(m, tau));
    DualityConfig dc;
    dc.mode = DualityConfig::MW;
    dc.rounds = cfg.duality_rounds;
    auto dr = duality_solve(m, tau, pipeline_factory(base), dc, derive(seed, label_of("scale"), idx));
    solved[idx] = dr.dist;
    betas[idx] = base.beta();
    clamped[idx] = base.beta_clamped();
  });
  res.beta = betas[0];
  res.beta_clamped = clamped[0];

  MixerConfig mix;
  mix.n_lo = res.n_lo;
  for (int s = 0; s < scales; ++s) {
    std::vector<ZeroSetDistribution> per_offset;
    for (int j = 0; j < offsets; ++j) {
      std::vector<ZeroSetDistribution> per_k;
      for (int k = 1; k <= cfg.kmax; ++k) per_k.push_back(solved[(s * offsets + j) * cfg.kmax + (k - 1)]);
      per_offset.push_back(glue_scales(std::move(per_k)));
    }
    auto shared = std::make_shared<const std::vector<ZeroSetDistribution>>(std::move(per_offset));
    ZeroSetDistribution q;
    q.construction = "scale_offsets";
    q.tau = std::ldexp(1.0, res.n_lo + s);
    q.draw = [shared](std::uint64_t stream) {
      Rng g = make_rng(stream);
      int j = std::uniform_int_distribution<int>(0, static_cast<int>(shared->size()) - 1)(g);
      return (*shared)[j].draw(derive(stream, label_of("offset"), j));
    };
    mix.distributions.push_back(std::move(q));
  }
  // Zero-set radii live between beta tau and 19 beta tau.
  double beta = res.beta;
  res.a = cfg.a ? *cfg.a : std::log2(2 * std::max(19 * beta, 2.0));
  res.b = cfg.b ? *cfg.b : std::log2(std::min(beta, 1.0) / 2);
  mix.a = res.a;
  mix.b = res.b;
  auto mixed = mixed_zeroset_sampler(m, PointMeasure::counting(m.size()), std::move(mix));

  std::vector<PointSet> sets(cfg.N);
  parallel_for(cfg.N, [&](int j) { sets[j] = mixed.draw(derive(seed, label_of("frechet"), j)); });
  res.map = frechet_embed(m, sets);
  res.lipschitz_violations = lipschitz_violations(m, res.map);
  res.report = distortion(m, res.map);
  return res;
}

}  // namespace zsk
