#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "zsk/compression.hpp"

using namespace zsk;

namespace {

FiniteMetricSpace line(const std::vector<double>& x) {
  Matrix d(x.size(), std::vector<double>(x.size()));
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) d[i][j] = std::abs(x[i] - x[j]);
  return validate_metric(d);
}

bool subset(const PointSet& a, const PointSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

void check_nets(const FiniteMetricSpace& m, const SublevelNets& s, double tau) {
  for (size_t i = 0; i + 1 < s.nets.size(); ++i) CHECK(subset(s.nets[i], s.nets[i + 1]));
  for (size_t i = 0; i < s.levels.size(); ++i) {
    const auto& net = s.nets[i];
    for (size_t a = 0; a < net.size(); ++a)
      for (size_t b = a + 1; b < net.size(); ++b) CHECK(m.d(net[a], net[b]) > 2 * tau);
    for (int x : s.domain)
      if (s.theta[x] <= s.levels[i]) CHECK(m.dist_to_set(x, net) <= 2 * tau + 1e-12);
  }
}

std::vector<std::pair<std::string, Instance>> instances() {
  return {{"cube3", hamming_cube(3)},   {"grid4", grid(4, 2, 1)},          {"diamond2", diamond(2)},
          {"cloud", lp_cloud(20, 2, 2, 3)}, {"expander", expander_path_metric(16, 3, 5)}};
}

}  // namespace

TEST_CASE("nested_sublevel_nets examples") {
  auto m = line({0, 1, 2, 3});
  auto s = nested_sublevel_nets(m, {1, 1, 1, 1}, 0.4);
  REQUIRE(s.levels.size() == 1);
  CHECK(s.nets[0] == PointSet{0, 1, 2, 3});

  auto c = nested_sublevel_nets(m, {2, 2, 2, 2}, 0.6);
  REQUIRE(c.nets.size() == 1);
  check_nets(m, c, 0.6);
  CHECK(c.nets[0] == PointSet{0, 2});  // greedy by lowest id
}

TEST_CASE("nets: nesting, separation, density, cardinality") {
  for (const auto& [name, inst] : instances()) {
    CAPTURE(name);
    const auto& m = inst.space;
    auto mu = PointMeasure::counting(m.size());
    for (double tau : {m.min_distance() / 2, m.min_distance(), m.diameter() / 20}) {
      auto theta = growth_ratio(m, mu, tau);
      auto s = nested_sublevel_nets(m, theta, tau);
      check_nets(m, s, tau);
      for (size_t i = 0; i < s.levels.size(); ++i)
        for (int z = 0; z < m.size(); ++z) {
          auto B = m.ball(z, 9 * tau);
          long hit = 0;
          for (int x : s.nets[i]) hit += std::binary_search(B.begin(), B.end(), x);
          CHECK(hit <= s.levels[i] + 1e-9);
        }
    }
  }
}

TEST_CASE("rounding map") {
  auto far = line({0, 100});
  auto s = nested_sublevel_nets(far, {1, 1}, 1);
  CHECK(rounding_map(far, s, 1) == std::vector<int>{0, 1});

  auto cl = line({0, 0.3, 0.5});
  auto sc = nested_sublevel_nets(cl, {3, 3, 3}, 1);
  auto q = rounding_map(cl, sc, 1);
  CHECK(q == std::vector<int>{0, 0, 0});
}

TEST_CASE("growth ratio and rho") {
  auto cl = line({0, 0.5, 1});
  auto r = growth_ratio_rho(cl, PointMeasure::counting(3), 1, 2, 2);
  for (double x : r) CHECK(x == doctest::Approx(1));

  // mu(B(0,19))/mu(B(0,1)) = e with masses 1 at 0 and e-1 at distance 5.
  auto two = line({0, 5});
  PointMeasure mu{{1, std::exp(1.0) - 1}};
  CHECK(growth_ratio_rho(two, mu, 1, 2, 2)[0] == doctest::Approx(2));

  auto three = line({0, 0.5, 5});
  PointMeasure base{{1, 1, 1}};
  auto before = growth_ratio_rho(three, base, 1, 1, 2)[0];
  base.w[2] = 4;
  CHECK(growth_ratio_rho(three, base, 1, 1, 2)[0] >= before);
}

TEST_CASE("universal compression invariants") {
  for (const auto& [name, inst] : instances()) {
    CAPTURE(name);
    const auto& m = inst.space;
    auto mu = PointMeasure::counting(m.size());
    EuclideanMap phi = negative_type_test(m).negative_type ? snowflake_embed(m, 0.5)
                                                           : quasisymmetric_snowflake(m, QuasiParams{}).map;
    for (double tau : {m.min_distance(), m.diameter() / 4}) {
      double C = 2;
      auto comp = universal_compression(m, mu, tau, C, phi);
      auto adj = comp.graph.adjacency();
      for (int x = 0; x < m.size(); ++x) {
        CHECK(m.d(comp.q[x], x) <= 7 * tau + 1e-12);
        CHECK(comp.component[comp.q[x]] == comp.component[x]);
        for (int y : graph_ball(adj, x, comp.rho_tilde[x] + 1)) CHECK(m.d(x, y) <= 2 * tau + 1e-12);
      }
      for (double sg : comp.graph.sigma) CHECK(sg >= 0);
      for (const auto& s : comp.nets) check_nets(m, s, tau);
      auto rep = check_compatibility(comp.graph, comp.f, comp.cert, 300, 5);
      CHECK(rep.cond1);
      CHECK(rep.cond3);
      CHECK(rep.cond2_all_verified());

      auto scaled = universal_compression(m, mu, tau, C, phi.scaled(3));
      REQUIRE(scaled.graph.sigma.size() == comp.graph.sigma.size());
      for (size_t e = 0; e < comp.graph.sigma.size(); ++e)
        CHECK(scaled.graph.sigma[e] == doctest::Approx(3 * comp.graph.sigma[e]));
    }
  }
}
