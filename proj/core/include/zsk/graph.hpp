#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zsk/metric.hpp"

namespace zsk {

using Edge = std::pair<int, int>;  // stored with first <= second

struct ThresholdedGraph {
  int n = 0;
  std::vector<Edge> edges;    // sorted, unique; self-loops allowed
  std::vector<double> sigma;  // parallel to edges; empty until set

  bool has_sigma() const { return sigma.size() == edges.size(); }
  // Neighbor lists without self-loops.
  std::vector<std::vector<int>> adjacency() const;
  // Incident edge indices per vertex, self-loops included once.
  std::vector<std::vector<int>> incidence() const;
  void normalize();  // sort + dedupe edges (drops sigma)
  int find_edge(int u, int v) const;
};

struct CompatibilityCertificate {
  double C = 1;
  std::vector<double> Delta;
  std::vector<int> K;
};

struct PairWeighting {
  int n = 0;
  double tau = 0;
  std::vector<std::vector<double>> omega;  // ordered pairs

  double mass(const PointSet& A, const PointSet& B) const;
  std::vector<double> marginals() const;
  void validate(const FiniteMetricSpace& m) const;
  // Uniform over ordered pairs with d >= tau.
  static PairWeighting uniform(const FiniteMetricSpace& m, double tau);
};

// Hop distances from x; -1 for unreachable.
std::vector<int> hop_distances(const std::vector<std::vector<int>>& adj, int x);
// B_G(x, R) = {y : hop(x,y) <= R}; empty when R < 0.
PointSet graph_ball(const std::vector<std::vector<int>>& adj, int x, double R);
// Connected component label per vertex, numbered by lowest member id.
std::vector<int> components(const ThresholdedGraph& g);

ThresholdedGraph build_proximity_graph(const FiniteMetricSpace& m, const std::vector<double>& rho, double tau);

std::vector<Edge> sparsify_directional(const ThresholdedGraph& g, const EuclideanMap& f, const std::vector<double>& v);

int max_matching(int n, const std::vector<Edge>& edges);

struct FractionalMatching {
  double value = 0;
  std::vector<Edge> edges;  // non-loop edges the LP ran on
  std::vector<double> phi;
};
FractionalMatching fractional_matching(int n, const std::vector<Edge>& edges, const std::vector<double>& Q);

struct UnsaturatedPair {
  PointSet L0, R0;
  double nu_star = 0;
  double mass_before = 0, mass_after = 0;
};
UnsaturatedPair extract_unsaturated_pair(const PointSet& L, const PointSet& R, const std::vector<Edge>& bipartite_edges,
                                         const PairWeighting& omega);

double m_sigma(const ThresholdedGraph& g, int x, double R);

struct CompatibilityReport {
  bool cond1 = true;
  bool cond3 = true;
  long cond2_pairs = 0;
  long cond2_sound = 0;     // verified by the Gaussian-max bound
  long cond2_mc = 0;        // verified by Monte Carlo after the bound failed
  long cond2_undetermined = 0;
  std::optional<Triple> cond1_witness;        // (x, y, edge index)
  std::optional<std::pair<int, int>> cond2_witness;
  std::optional<std::pair<int, int>> cond3_witness;
  bool cond2_all_verified() const { return cond2_undetermined == 0; }
  bool all_pass() const { return cond1 && cond3 && cond2_all_verified(); }
};
CompatibilityReport check_compatibility(const ThresholdedGraph& g, const EuclideanMap& f,
                                        const CompatibilityCertificate& cert, int mc_samples, std::uint64_t seed);

struct MatchingBoundReport {
  double mean = 0, stderr_ = 0, bound = 0;
  bool pass = false;
  int samples = 0;
};
MatchingBoundReport empirical_matching_bound(const ThresholdedGraph& g, const EuclideanMap& f, double C, int n_samples,
                                             std::uint64_t seed);

}  // namespace zsk
