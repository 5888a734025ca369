#pragma once

#include <vector>

#include "zsk/graph.hpp"
#include "zsk/metric.hpp"

namespace zsk {

struct SublevelNets {
  std::vector<double> theta;        // per point of the space
  std::vector<double> levels;       // increasing distinct values of theta on the domain
  std::vector<PointSet> nets;       // nets[i] is N_{levels[i]}, nested
  PointSet domain;

  // Index of the level equal to xi (exact match expected).
  int level_index(double xi) const;
};

SublevelNets nested_sublevel_nets(const FiniteMetricSpace& m, const std::vector<double>& theta, double tau,
                                  PointSet domain = {});

// q over the nets' domain; entries outside the domain are left as -1 unless `q` already holds values.
void rounding_map(const FiniteMetricSpace& m, const SublevelNets& nets, double tau, std::vector<int>& q);
std::vector<int> rounding_map(const FiniteMetricSpace& m, const SublevelNets& nets, double tau);

// theta(x) = mu(B(x,19 tau)) / mu(B(x, tau)).
std::vector<double> growth_ratio(const FiniteMetricSpace& m, const PointMeasure& mu, double tau);
std::vector<double> growth_ratio_rho(const FiniteMetricSpace& m, const PointMeasure& mu, double tau, double C,
                                     double zeta);

struct CompressionOutput {
  std::vector<int> q;
  ThresholdedGraph graph;
  CompatibilityCertificate cert;
  std::vector<double> rho, rho_tilde, theta;
  std::vector<int> component;  // label per point
  std::vector<SublevelNets> nets;  // one per component, in label order
  EuclideanMap f;                  // phi composed with q
  double zeta = 2, tau = 0;
};

CompressionOutput universal_compression(const FiniteMetricSpace& m, const PointMeasure& mu, double tau, double C,
                                        const EuclideanMap& phi, double zeta = 2.0);

}  // namespace zsk
