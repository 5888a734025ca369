#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zsk/metric.hpp"
#include "zsk/zeroset.hpp"

namespace zsk {

struct SparsestCutInstance {
  int n = 0;
  Matrix capacities, demands;

  void validate() const;
  // Capacity / demand ratio across S and its complement; +inf when no demand crosses.
  double ratio(const std::vector<char>& in_S) const;
};

struct CutResult {
  double value = kInf;
  std::vector<char> S;  // indicator, S never contains every point
};

struct SdpConfig {
  double tol = 1e-6;
  long max_iter = 200000;
  int max_n = 40;
};

struct SdpResult {
  double value = 0;
  EuclideanMap vectors;
  Matrix neg_type_metric;  // squared distances |v_i - v_j|^2
  bool converged = false;
  long iterations = 0;
  double max_violation = 0;  // worst triangle or normalization residual
  double objective_stall = 0;
};

// Goemans-Linial relaxation by ADMM: PSD eigenvalue clipping alternated with a
// cyclic (Dykstra) projection onto the triangle and normalization constraints.
SdpResult sdp_gl_solve(const SparsestCutInstance& inst, const SdpConfig& cfg = {});
void require_converged(const SdpResult& r);

CutResult brute_sparsest_cut(const SparsestCutInstance& inst);
CutResult sweep_round_cut(const SparsestCutInstance& inst, const EuclideanMap& embedding);

SparsestCutInstance random_cut_instance(int n, std::uint64_t seed);

struct LineFunctional {
  double q = 2;
  int n = 0;
  std::vector<double> u;
  double scale = 1;

  double operator()(const std::vector<double>& x) const;
};

struct LineEmbedResult {
  LineFunctional best;
  double distortion = kInf;
  std::vector<double> candidate_distortions;
};

// Sample the dual direction: iid coordinates of density proportional to
// exp(-|s|^{q/(q-1)}), symmetric signs when q = 1.
LineFunctional sample_line_functional(int n, double p, double q, Rng& g);

// Points live in l_q^n; mu weights them (empty for uniform).
LineEmbedResult line_functional_embed(const std::vector<std::vector<double>>& points, const std::vector<double>& mu,
                                      double p, double q, int n_candidates, std::uint64_t seed);

double lq_norm(const std::vector<double>& x, double q);
FiniteMetricSpace lq_space(const std::vector<std::vector<double>>& points, double q);

struct IsoCertificate {
  double bound = 0;
  PointSet witness;
};

IsoCertificate iso_certificate(const FiniteMetricSpace& m, const PointMeasure& mu, const ZeroSetDistribution& dist,
                               double t, int n_samples, std::uint64_t seed);
// min{mu(far set at 2t), mu(Z)} for a probability measure.
double iso_value_of(const FiniteMetricSpace& m, const PointMeasure& prob, const PointSet& Z, double t);
double brute_isoperimetric(const FiniteMetricSpace& m, const PointMeasure& mu, double t);

}  // namespace zsk
