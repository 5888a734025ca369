#pragma once

#include <climits>
#include <map>
#include <optional>
#include <vector>

#include "zsk/metric.hpp"
#include "zsk/zeroset.hpp"

namespace zsk {

inline constexpr long kIndexPlusInf = LONG_MAX;
inline constexpr long kIndexMinusInf = LONG_MIN;

// ck(x,t) = max{k : mu(B(x,2^k)) <= e^t} after normalizing min mu = 1.
// Throws InfiniteIndex when the maximum does not exist as an integer.
int ck_scale_index(const FiniteMetricSpace& m, const PointMeasure& mu, int x, double t);
// Same, with kIndexPlusInf / kIndexMinusInf sentinels instead of throwing.
long ck_extended(const FiniteMetricSpace& m, const PointMeasure& mu, int x, double t);

// Lazily materialized selector bits sigma_i in {0,1} and eta_i in {0,1,2}.
class LazySelectors {
 public:
  explicit LazySelectors(Rng& g) : g_(g) {}
  int sigma(long i);
  int eta(long i);

 private:
  Rng& g_;
  std::map<long, int> sigma_, eta_;
};

struct MixerConfig {
  double a = 2, b = -2;
  int n_lo = 0;                                // scale of distributions[0]
  std::vector<ZeroSetDistribution> distributions;  // consecutive integer scales
  int nonempty_cap = 1000;

  int n_hi() const { return n_lo + static_cast<int>(distributions.size()) - 1; }
  void validate() const;
};

ZeroSetDistribution mixed_zeroset_sampler(const FiniteMetricSpace& m, const PointMeasure& mu, MixerConfig config);

EuclideanMap frechet_embed(const FiniteMetricSpace& m, const std::vector<PointSet>& zero_sets);

struct EmbedConfig {
  int N = 512;
  double theta = 1.0;
  int kmax = 3;
  int duality_rounds = 300;
  PipelineParams pipeline;  // tau and C are set per scale
  std::optional<double> a, b;
};

struct EmbedResult {
  EuclideanMap map;
  EmbeddingReport report;
  int n_lo = 0, n_hi = 0;
  double a = 0, b = 0, beta = 0;
  bool beta_clamped = false;
  double theta = 0;  // snowflake exponent of the default map, 0 when phi was supplied
  QuasiParams quasi;
  int lipschitz_violations = 0;
};

// phi may be empty (dim 0): then the largest Euclidean snowflake is used, with eps
// lowered to keep it quasisymmetric. Negative-type spaces get the 1/2-snowflake.
EmbedResult euclidean_embed_pipeline(const FiniteMetricSpace& m, const PointMeasure& mu, const EuclideanMap& phi,
                                     const EmbedConfig& cfg, std::uint64_t seed);

// Scale window [floor(log2 min d) - 1, ceil(log2 diam)].
std::pair<int, int> scale_window(const FiniteMetricSpace& m);

// Count of pairs where |F(x)-F(y)| exceeds d(x,y) beyond rounding.
int lipschitz_violations(const FiniteMetricSpace& m, const EuclideanMap& F);

}  // namespace zsk
