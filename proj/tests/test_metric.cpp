#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "zsk/metric.hpp"

using namespace zsk;

namespace {

Matrix line_metric(const std::vector<double>& x) {
  Matrix d(x.size(), std::vector<double>(x.size()));
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) d[i][j] = std::abs(x[i] - x[j]);
  return d;
}

ErrorCode code_of(const Matrix& d) {
  try {
    validate_metric(d);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::UsageError;  // sentinel for "accepted"
}

}  // namespace

TEST_CASE("validate_metric: small examples") {
  CHECK(validate_metric({{0, 1}, {1, 0}}).size() == 2);
  CHECK(code_of({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}) == ErrorCode::TriangleViolation);
  CHECK(code_of({{0, 1}, {2, 0}}) == ErrorCode::AsymmetricMatrix);
  CHECK(code_of({{0}}) == ErrorCode::TooSmall);
  CHECK(code_of({{0, 1}, {1, 0}, {1, 1}}) == ErrorCode::NotSquare);
  CHECK(code_of({{0, -1}, {-1, 0}}) == ErrorCode::NegativeEntry);
  CHECK(code_of({{0, 0}, {0, 0}}) != ErrorCode::UsageError);
  CHECK(validate_metric(hamming_cube(3).space.dist()).size() == 8);
}

TEST_CASE("validate_metric agrees with a brute-force axiom check") {
  Rng g = make_rng(11);
  int accepted = 0;
  for (int t = 0; t < 1000; ++t) {
    Matrix d(6, std::vector<double>(6, 0));
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) d[i][j] = d[j][i] = 1 + uniform01(g) * (t % 2 ? 0.9 : 3);
    if (t % 7 == 0) d[1][2] = d[2][1] = 0;
    bool ok = oracle::is_metric(d);
    bool lib = code_of(d) == ErrorCode::UsageError;
    CHECK(ok == lib);
    accepted += lib;
  }
  CHECK(accepted > 50);
  CHECK(accepted < 950);
}

TEST_CASE("generators") {
  auto c2 = hamming_cube(2);
  CHECK(c2.space.size() == 4);
  CHECK(c2.space.diameter() == 2);

  auto dm = diamond(1);
  REQUIRE(dm.space.size() == 4);
  int pairs_at_2 = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) pairs_at_2 += dm.space.d(i, j) == 2;
  CHECK(pairs_at_2 == 2);  // poles, and the two midpoints

  auto ex = expander_path_metric(8, 3, 7);
  CHECK(ex.space.size() == 8);
  CHECK(ex.space.diameter() <= 4);
  REQUIRE(ex.graph_adj.size() == 8);
  for (const auto& nb : ex.graph_adj) CHECK(nb.size() == 3);
  // Graph distances by Floyd-Warshall reproduce the metric.
  Matrix fw(8, std::vector<double>(8, kInf));
  for (int i = 0; i < 8; ++i) {
    fw[i][i] = 0;
    for (int j : ex.graph_adj[i]) fw[i][j] = 1;
  }
  for (int k = 0; k < 8; ++k)
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) fw[i][j] = std::min(fw[i][j], fw[i][k] + fw[k][j]);
  CHECK(fw == ex.space.dist());

  auto gr = grid(4, 2, 1);
  CHECK(gr.space.size() == 16);
  CHECK(gr.space.diameter() == doctest::Approx(6));
  CHECK(oracle::is_metric(lp_cloud(10, 3, 1.5, 5).space.dist()));
  CHECK(generate_instance("diamond", GenParams{.level = 2}, 0).space.size() == 12);
  CHECK_THROWS_AS(generate_instance("torus", {}, 0), Error);
}

TEST_CASE("negative type") {
  Rng g = make_rng(3);
  for (int t = 0; t < 50; ++t) {
    double a = 1 + uniform01(g), b = 1 + uniform01(g);
    double c = std::abs(a - b) + 0.01 + (a + b - std::abs(a - b) - 0.02) * uniform01(g);
    CHECK(negative_type_test(validate_metric({{0, a, b}, {a, 0, c}, {b, c, 0}})).negative_type);
  }
  for (int dim = 1; dim <= 5; ++dim) CHECK(negative_type_test(hamming_cube(dim).space).negative_type);

  // Every metric on at most 4 points embeds in l1 and so has negative type; the
  // search therefore perturbs the 4-cycle without keeping the triangle inequality.
  bool found = false;
  int metric_failures = 0;
  for (int t = 0; t < 2000 && !found; ++t) {
    Matrix d = {{0, 1, 1, 2}, {1, 0, 2, 1}, {1, 2, 0, 1}, {2, 1, 1, 0}};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) d[i][j] = d[j][i] = d[i][j] * (1 + 0.8 * (uniform01(g) - 0.5));
    bool fails = oracle::schoenberg_min_eig(d) < -1e-6;
    if (fails && oracle::is_metric(d)) ++metric_failures;
    if (fails) {
      found = true;
      auto r = negative_type_test_matrix(d);
      CHECK_FALSE(r.negative_type);
      CHECK(r.witness.size() > 0);
    }
  }
  CHECK(found);
  CHECK(metric_failures == 0);
  for (int t = 0; t < 500; ++t) {
    Matrix d(4, std::vector<double>(4, 0));
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) d[i][j] = d[j][i] = 1 + uniform01(g);
    if (oracle::is_metric(d)) CHECK(negative_type_test_matrix(d).negative_type);
  }

  for (int level = 1; level <= 2; ++level) {
    const Matrix d = diamond(level).space.dist();
    CHECK(negative_type_test_matrix(d).negative_type == (oracle::schoenberg_min_eig(d) > -1e-9));
  }
}

TEST_CASE("snowflake_embed") {
  auto two = validate_metric({{0, 4}, {4, 0}});
  CHECK(snowflake_embed(two, 0.5).dist(0, 1) == doctest::Approx(2));

  auto cube = hamming_cube(3).space;
  auto f = snowflake_embed(cube, 0.5);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(std::pow(f.dist(i, j), 2) == doctest::Approx(cube.d(i, j)).epsilon(1e-9));

  auto tri = snowflake_embed(validate_metric({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}), 1.0);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) CHECK(tri.dist(i, j) == doctest::Approx(1));

  CHECK_THROWS_AS(snowflake_embed(diamond(2).space, 0.5), Error);
}

TEST_CASE("snowflake of a negative-type space is an isometry") {
  std::vector<FiniteMetricSpace> spaces = {hamming_cube(4).space, grid(3, 2, 1).space, lp_cloud(9, 3, 1, 4).space,
                                           lp_cloud(8, 2, 2, 9).space};
  for (const auto& m : spaces) {
    REQUIRE(negative_type_test(m).negative_type);
    Matrix root(m.size(), std::vector<double>(m.size()));
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j) root[i][j] = std::sqrt(m.d(i, j));
    auto f = snowflake_embed(m, 0.5);
    CHECK(distortion(trusted_space(root), f).distortion == doctest::Approx(1).epsilon(1e-6));
  }
}

TEST_CASE("largest snowflake exponent") {
  CHECK(max_snowflake_exponent(hamming_cube(3).space) == 0.5);
  const auto d2 = diamond(2).space;
  double th = max_snowflake_exponent(d2);
  CHECK(th > 0.1);
  CHECK(th < 0.5);
  auto pw = [&](double e) {
    Matrix m = d2.dist();
    for (auto& r : m)
      for (auto& x : r) x = std::pow(x, 2 * e);
    return oracle::schoenberg_min_eig(m);
  };
  // PSD up to the relative tolerance: the top Schoenberg eigenvalue of d2 is O(100).
  CHECK(pw(th) > -1e-9 * 100);
  CHECK(pw(th + 0.01) < 0);

  auto choice = quasisymmetric_snowflake(d2, QuasiParams{});
  CHECK(quasisym_check(d2, choice.map, choice.quasi).ok);
  CHECK(choice.quasi.eps <= 0.5);
}

TEST_CASE("quasisym_check") {
  auto line = validate_metric(line_metric({0, 1, 3, 7}));
  EuclideanMap id{1, {{0}, {1}, {3}, {7}}};
  CHECK(quasisym_check(line, id, QuasiParams{0.5, 0.5}).ok);

  EuclideanMap ortho{4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  auto r = quasisym_check(line, ortho, QuasiParams{0.5, 0.1});
  CHECK_FALSE(r.ok);
  CHECK(r.violation.has_value());

  auto cube = hamming_cube(4).space;
  CHECK(quasisym_check(cube, snowflake_embed(cube, 0.5), QuasiParams{0.25, 0.5}).ok);
}

TEST_CASE("distortion") {
  auto line = validate_metric(line_metric({0, 1, 2.5, 4}));
  EuclideanMap id{1, {{0}, {1}, {2.5}, {4}}};
  CHECK(distortion(line, id).distortion == doctest::Approx(1));

  auto c2 = hamming_cube(2);
  REQUIRE(c2.coords);
  auto rep = distortion(c2.space, *c2.coords);
  CHECK(rep.distortion == doctest::Approx(std::sqrt(2.0)));
  CHECK(rep.distortion == doctest::Approx(oracle::distortion(c2.space.dist(), c2.coords->coords)));
  CHECK(distortion(c2.space, c2.coords->scaled(2)).distortion == doctest::Approx(rep.distortion));

  // Witness recomputes the contraction side.
  int i = rep.contraction_witness_i, j = rep.contraction_witness_j;
  REQUIRE(i >= 0);
  CHECK(c2.space.d(i, j) / c2.coords->dist(i, j) == doctest::Approx(rep.inverse_lipschitz));
}

TEST_CASE("distortion is invariant under relabeling and scaling") {
  Rng g = make_rng(21);
  for (int t = 0; t < 20; ++t) {
    auto inst = lp_cloud(7, 3, 1, 100 + t);
    EuclideanMap f{2, {}};
    for (int i = 0; i < 7; ++i) f.coords.push_back(gaussian_vector(g, 2));
    double base = distortion(inst.space, f).distortion;
    std::vector<int> perm{3, 0, 6, 1, 5, 2, 4};
    Matrix pd(7, std::vector<double>(7));
    EuclideanMap pf{2, std::vector<std::vector<double>>(7)};
    for (int i = 0; i < 7; ++i) {
      pf.coords[i] = f.coords[perm[i]];
      for (int j = 0; j < 7; ++j) pd[i][j] = inst.space.d(perm[i], perm[j]);
    }
    CHECK(distortion(trusted_space(pd), pf).distortion == doctest::Approx(base));
    CHECK(distortion(inst.space, f.scaled(0.3)).distortion == doctest::Approx(base));
    CHECK(base == doctest::Approx(oracle::distortion(inst.space.dist(), f.coords)));
  }
}

TEST_CASE("p-average distortion") {
  auto line = validate_metric(line_metric({0, 1, 2.5, 4}));
  EuclideanMap id{1, {{0}, {1}, {2.5}, {4}}};
  for (double p : {1.0, 2.0, 5.0})
    CHECK(p_average_distortion(line, id, PointMeasure{{1, 2, 3, 4}}, p) == doctest::Approx(1));

  auto c2 = hamming_cube(2);
  EuclideanMap first{1, {}};
  for (const auto& x : c2.coords->coords) first.coords.push_back({x[0]});
  auto mu = PointMeasure::counting(4);
  CHECK(p_average_distortion(c2.space, first, mu, 1) == doctest::Approx(2));
  CHECK(p_average_distortion(c2.space, first.scaled(5), mu, 1) == doctest::Approx(2));

  Rng g = make_rng(8);
  for (int t = 0; t < 100; ++t) {
    auto inst = lp_cloud(6, 2, 2, 300 + t);
    EuclideanMap f{3, {}};
    for (int i = 0; i < 6; ++i) f.coords.push_back(gaussian_vector(g, 3));
    PointMeasure w{std::vector<double>(6)};
    for (auto& x : w.w) x = 0.1 + uniform01(g);
    double p = 1 + 3 * uniform01(g);
    CHECK(p_average_distortion(inst.space, f, w, p) <= distortion(inst.space, f).distortion * (1 + 1e-12));
  }
}
