#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "zsk/compression.hpp"
#include "zsk/graph.hpp"
#include "zsk/metric.hpp"

namespace zsk {

// A seeded sampler of nonempty subsets. draw(stream) is a pure function of stream.
struct ZeroSetDistribution {
  std::string construction;
  std::map<std::string, double> params;
  double tau = 0;
  std::function<PointSet(std::uint64_t)> draw;
  // Law before conditioning on nonemptiness, when the construction has one.
  std::function<PointSet(std::uint64_t)> draw_raw;
};

// ---- slabs and layered sets ----

struct SlabMembership {
  bool in_L = false, in_R = false;
};
SlabMembership slab_membership(double a, double theta);
double tent(double s);

struct LayeredDraw {
  PointSet E, F;
  int k = 1;
  double r = 0;
};

// E/F for a fixed direction v, with randomness (r, theta_i, k) drawn from g.
// Lambda entries equal to kInf form X_inf.
LayeredDraw layered_pair_sets(const PointSet& pts, const EuclideanMap& f, const std::vector<double>& Lambda,
                              double alpha, double C, const std::vector<double>& v, Rng& g);

class ComponentSampler {
 public:
  // Checks moderate variation along edges and the minimum image distance on
  // omega-supported pairs in a common component.
  ComponentSampler(const ThresholdedGraph& g, EuclideanMap f, std::vector<double> Lambda, const PairWeighting& omega,
                   double C);
  std::pair<PointSet, PointSet> draw(const std::vector<double>& v, Rng& g) const;

  const std::vector<int>& component() const { return comp_; }
  double alpha() const { return alpha_; }

 private:
  EuclideanMap f_;
  std::vector<double> Lambda_;
  double C_, alpha_;
  std::vector<int> comp_;
  std::vector<PointSet> groups_;
};

// ---- good graph and separated pairs ----

struct GoodGraph {
  CompressionOutput comp;  // graph, sigma, q, rho at scale beta*tau with constant r*C
  EuclideanMap f;          // phi composed with q
  std::vector<double> Lambda;
};

GoodGraph good_graph_builder(const FiniteMetricSpace& m, const PointMeasure& mu, const EuclideanMap& phi,
                             const QuasiParams& params, double tau, double C, double r, double beta,
                             bool check_quasi = true, double zeta = 2.0);

// Lambda(x) = C min_{w,z in Gamma(x), d(w,z) >= tau} max{|f(x)-f(w)|, |f(x)-f(z)|}, infinite on small components.
std::vector<double> level_function(const FiniteMetricSpace& m, const std::vector<int>& component, const EuclideanMap& f,
                                   double tau, double C);

struct PipelineParams {
  QuasiParams quasi;
  double tau = 1;
  double C = 1;
  double alpha = 2;
  double zeta = 2;
  bool check_quasi = true;
};

struct PipelineDraw {
  std::vector<double> v;
  PointSet A, B;            // component sampler output
  PointSet A_star, B_star;  // after removing saturated points
  bool fallback = false;
};

class SeparatedPairSampler {
 public:
  SeparatedPairSampler(const FiniteMetricSpace& m, const PointMeasure& mu, const EuclideanMap& phi,
                       const PipelineParams& params, const PairWeighting& omega);
  SeparatedPairSampler with_omega(const PairWeighting& omega) const;

  PipelineDraw draw_full(std::uint64_t stream) const;
  std::pair<PointSet, PointSet> draw(std::uint64_t stream) const;

  double beta() const { return core_->beta; }
  bool beta_clamped() const { return core_->beta_clamped; }
  double tau() const { return core_->params.tau; }
  double separation(int x, int y) const;  // beta tau / min(rho(x), rho(y))
  double psi(int y) const;                // beta tau / rho(y)
  const GoodGraph& good_graph() const { return core_->gg; }
  const std::vector<double>& rho() const { return core_->gg.comp.rho; }
  std::pair<int, int> fallback_pair() const { return {core_->x0, core_->y0}; }

 private:
  struct Core {
    FiniteMetricSpace m;
    PipelineParams params;
    double beta = 0;
    bool beta_clamped = false;
    GoodGraph gg;
    EuclideanMap Cf;
    int x0 = -1, y0 = -1;
  };
  SeparatedPairSampler(std::shared_ptr<const Core> core, const PairWeighting& omega);

  std::shared_ptr<const Core> core_;
  PairWeighting omega_;
  std::shared_ptr<const ComponentSampler> sampler_;
};

// ---- duality ----

using ColumnFactory = std::function<std::pair<PointSet, PointSet>(const PairWeighting&, std::uint64_t)>;

struct DualityConfig {
  enum Mode { MW, ExactLP } mode = MW;
  int rounds = 2000;
};

struct DualityResult {
  ZeroSetDistribution dist;
  std::vector<std::pair<PointSet, PointSet>> columns;  // distinct columns
  std::vector<double> weights;                         // mixture over columns
  std::vector<Edge> pairs;                             // S as unordered pairs
  double value = 0;      // min over S of the mixture payoff
  double mw_value = 0;   // value of the empirical MW mixture
  double lp_value = -1;  // set in ExactLP mode
};

// Payoff of column (A,B) against the pair {x,y}.
double column_payoff(const std::pair<PointSet, PointSet>& col, int x, int y);

DualityResult duality_solve(const FiniteMetricSpace& m, double tau, const ColumnFactory& factory,
                            const DualityConfig& cfg, std::uint64_t seed);
ColumnFactory pipeline_factory(const SeparatedPairSampler& base);

ZeroSetDistribution glue_scales(std::vector<ZeroSetDistribution> dists);
double glue_weight(int k, int kmax);

ZeroSetDistribution general_zeroset_sampler(const FiniteMetricSpace& m, const PointMeasure& mu, double tau);

struct SpreadingEstimate {
  int x, y;
  double p, lo, hi;
};
std::vector<SpreadingEstimate> spreading_estimate(const FiniteMetricSpace& m, const ZeroSetDistribution& dist,
                                                  double zeta, double tau, const std::vector<std::pair<int, int>>& pairs,
                                                  int n_samples, std::uint64_t seed, bool raw = false);

}  // namespace zsk
