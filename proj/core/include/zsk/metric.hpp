#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsk/common.hpp"

namespace zsk {

using Matrix = std::vector<std::vector<double>>;

class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;
  // No validation; callers guarantee the metric axioms.
  static FiniteMetricSpace unchecked(Matrix dist, std::vector<std::string> ids);

  int size() const { return static_cast<int>(dist_.size()); }
  double d(int i, int j) const { return dist_[i][j]; }
  const Matrix& dist() const { return dist_; }
  const std::vector<std::string>& ids() const { return ids_; }

  double diameter() const;
  double min_distance() const;
  // B(x, r) = {y : d(x,y) <= r}, sorted.
  PointSet ball(int x, double r) const;
  double dist_to_set(int x, const PointSet& s) const;

 private:
  Matrix dist_;
  std::vector<std::string> ids_;
};

struct PointMeasure {
  std::vector<double> w;

  static PointMeasure counting(int n) { return {std::vector<double>(n, 1.0)}; }
  double total() const;
  double min() const;
  double of(const PointSet& s) const;
  double ball(const FiniteMetricSpace& m, int x, double r) const;
  PointMeasure normalized_min_one() const;
  PointMeasure probability() const;
  void validate(int n) const;
};

struct EuclideanMap {
  int dim = 0;
  std::vector<std::vector<double>> coords;

  int size() const { return static_cast<int>(coords.size()); }
  double dist(int i, int j) const;
  double dot(int i, const std::vector<double>& v) const;
  EuclideanMap scaled(double c) const;
};

struct QuasiParams {
  double s = 0.25;
  double eps = 0.5;
  void validate() const;
};

struct EmbeddingReport {
  double lipschitz = 0;
  double inverse_lipschitz = 0;
  double distortion = 0;
  std::optional<double> p_average;
  std::optional<double> p;
  int contraction_witness_i = -1, contraction_witness_j = -1;
};

struct Triple {
  int i, j, k;
};

double euclid(const std::vector<double>& a, const std::vector<double>& b);

FiniteMetricSpace validate_metric(const Matrix& dist, std::vector<std::string> ids = {});
// Skips the O(n^3) triangle check; only for distances exact by construction.
FiniteMetricSpace trusted_space(Matrix dist, std::vector<std::string> ids = {});

struct Instance {
  FiniteMetricSpace space;
  std::optional<EuclideanMap> coords;
  std::optional<PointMeasure> measure;
  std::vector<std::vector<int>> graph_adj;  // set for graph families
};

struct GenParams {
  int dim = 2;        // hamming_cube, lp_cloud dimension, grid side count
  int n = 8;          // lp_cloud, expander point count
  double p = 2.0;     // lp_cloud / grid norm exponent
  int level = 1;      // diamond
  int degree = 3;     // expander
  int side = 4;       // grid side
};

Instance generate_instance(const std::string& family, const GenParams& params, std::uint64_t seed);
Instance hamming_cube(int dim);
Instance lp_cloud(int n, int dim, double p, std::uint64_t seed);
Instance diamond(int level);
Instance expander_path_metric(int n, int degree, std::uint64_t seed);
Instance grid(int side, int dim, double p);

// All-pairs shortest paths on an unweighted graph; -1 entries when disconnected.
std::vector<std::vector<int>> bfs_all_pairs(const std::vector<std::vector<int>>& adj);

struct NegTypeResult {
  bool negative_type = false;
  double min_eigenvalue = 0;
  std::vector<double> witness;
};
NegTypeResult negative_type_test(const FiniteMetricSpace& m);
NegTypeResult negative_type_test_matrix(const Matrix& d);

EuclideanMap snowflake_embed(const FiniteMetricSpace& m, double theta);
// Largest theta in (0, 1/2] (to bisection precision) whose snowflake d^theta is Euclidean.
double max_snowflake_exponent(const FiniteMetricSpace& m);
// Snowflake at max_snowflake_exponent, with eps lowered so that (s, eps) quasisymmetry holds.
struct SnowflakeChoice {
  EuclideanMap map;
  double theta = 0.5;
  QuasiParams quasi;
};
SnowflakeChoice quasisymmetric_snowflake(const FiniteMetricSpace& m, QuasiParams q);

struct QuasiResult {
  bool ok = true;
  std::optional<Triple> violation;
};
QuasiResult quasisym_check(const FiniteMetricSpace& m, const EuclideanMap& f, const QuasiParams& q);

EmbeddingReport distortion(const FiniteMetricSpace& m, const EuclideanMap& f);
double p_average_distortion(const FiniteMetricSpace& m, const EuclideanMap& f, const PointMeasure& mu,
                            double p);

}  // namespace zsk
