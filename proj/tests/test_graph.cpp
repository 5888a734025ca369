#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "zsk/compression.hpp"
#include "zsk/graph.hpp"

using namespace zsk;

namespace {

std::vector<Edge> random_graph(Rng& g, int n, double p) {
  std::vector<Edge> e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (uniform01(g) < p) e.push_back({a, b});
  return e;
}

ThresholdedGraph with_sigma(int n, std::vector<Edge> edges, double s) {
  ThresholdedGraph g;
  g.n = n;
  g.edges = std::move(edges);
  g.normalize();
  g.sigma.assign(g.edges.size(), s);
  return g;
}

FiniteMetricSpace line(const std::vector<double>& x) {
  Matrix d(x.size(), std::vector<double>(x.size()));
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) d[i][j] = std::abs(x[i] - x[j]);
  return validate_metric(d);
}

}  // namespace

TEST_CASE("max_matching examples") {
  CHECK(max_matching(3, {{0, 1}, {1, 2}}) == 1);
  CHECK(max_matching(3, {{0, 1}, {1, 2}, {0, 2}}) == 1);
  for (int k = 2; k <= 6; ++k) {
    std::vector<Edge> cyc;
    for (int i = 0; i < 2 * k; ++i) cyc.push_back({std::min(i, (i + 1) % (2 * k)), std::max(i, (i + 1) % (2 * k))});
    CHECK(max_matching(2 * k, cyc) == k);
  }
  CHECK(max_matching(2, {{0, 0}, {1, 1}}) == 0);
}

TEST_CASE("max_matching agrees with exhaustive search") {
  Rng g = make_rng(5);
  for (int t = 0; t < 300; ++t) {
    int n = 1 + static_cast<int>(g() % 14);
    auto e = random_graph(g, n, 0.1 + 0.8 * uniform01(g));
    CHECK(max_matching(n, e) == oracle::max_matching(n, e));
  }
}

TEST_CASE("fractional matching") {
  CHECK(fractional_matching(3, {{0, 1}, {1, 2}, {0, 2}}, {1, 1, 1}).value == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(fractional_matching(2, {{0, 1}}, {1, 1}).value == doctest::Approx(1));
  CHECK(fractional_matching(4, {}, {1, 1, 1, 1}).value == 0);

  Rng g = make_rng(6);
  for (int t = 0; t < 100; ++t) {
    int n = 2 + static_cast<int>(g() % 7);
    auto e = random_graph(g, n, 0.5);
    if (e.size() > 11) e.resize(11);
    std::vector<double> Q(n);
    for (auto& q : Q) q = 0.2 + uniform01(g);
    auto fm = fractional_matching(n, e, Q);
    auto Q2 = Q;
    for (auto& q : Q2) q *= 2;
    CHECK(fractional_matching(n, e, Q2).value == doctest::Approx(2 * fm.value).epsilon(1e-9));
    // The returned phi is feasible and attains the value.
    std::vector<double> load(n, 0);
    double sum = 0;
    for (size_t i = 0; i < fm.edges.size(); ++i) {
      CHECK(fm.phi[i] >= -1e-12);
      load[fm.edges[i].first] += fm.phi[i];
      load[fm.edges[i].second] += fm.phi[i];
      sum += fm.phi[i];
    }
    for (int x = 0; x < n; ++x) CHECK(load[x] <= Q[x] + 1e-9);
    CHECK(sum == doctest::Approx(fm.value));

    std::vector<double> ones(n, 1.0);
    double star = fractional_matching(n, e, ones).value;
    CHECK(star == doctest::Approx(oracle::fractional_matching_unit(n, e)).epsilon(1e-9));
    int nu = oracle::max_matching(n, e);
    CHECK(nu <= star + 1e-9);
    CHECK(star <= 1.5 * nu + 1e-9);
  }
}

TEST_CASE("build_proximity_graph") {
  auto m = line({0, 1, 2, 3});
  auto g = build_proximity_graph(m, {1, 1, 1, 1}, 1);
  std::vector<Edge> want{{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}};
  CHECK(g.edges == want);

  auto pair = line({0, 0.6});
  auto e1 = build_proximity_graph(pair, {2, 1}, 1).edges;
  CHECK(std::count(e1.begin(), e1.end(), Edge{0, 1}) == 1);
  auto e2 = build_proximity_graph(pair, {2, 2}, 1).edges;
  CHECK(std::count(e2.begin(), e2.end(), Edge{0, 1}) == 0);
}

TEST_CASE("sparsify_directional") {
  EuclideanMap f{1, {{0}, {1}}};
  auto g = with_sigma(2, {{0, 1}, {0, 0}}, 0.5);
  CHECK(sparsify_directional(g, f, {0}).empty());
  auto kept = sparsify_directional(g, f, {3});
  CHECK(kept == std::vector<Edge>{{0, 1}});

  Rng r = make_rng(9);
  EuclideanMap h{3, {}};
  for (int i = 0; i < 6; ++i) h.coords.push_back(gaussian_vector(r, 3));
  auto all = random_graph(r, 6, 0.7);
  for (int i = 0; i < 6; ++i) all.push_back({i, i});
  auto z = with_sigma(6, all, 0.0);
  int nonloop = 0;
  for (auto [a, b] : z.edges) nonloop += a != b;
  auto v = gaussian_vector(r, 3);
  CHECK(static_cast<int>(sparsify_directional(z, h, v).size()) == nonloop);

  auto s = with_sigma(6, all, 0.1);
  for (size_t i = 0; i < s.sigma.size(); ++i) s.sigma[i] = 0.3 * uniform01(r);
  for (int t = 0; t < 50; ++t) {
    auto w = gaussian_vector(r, 3);
    auto neg = w;
    for (auto& x : neg) x = -x;
    CHECK(sparsify_directional(s, h, w) == sparsify_directional(s, h, neg));
  }
}

TEST_CASE("m_sigma") {
  auto g = with_sigma(4, {{0, 1}, {1, 2}, {2, 3}, {0, 0}}, 0.7);
  CHECK(m_sigma(g, 0, 0.5) == 0);
  CHECK(m_sigma(g, 0, 1) == doctest::Approx(0.7));

  Rng r = make_rng(13);
  for (size_t i = 0; i < g.sigma.size(); ++i) g.sigma[i] = uniform01(r);
  for (int x = 0; x < 4; ++x) {
    double prev = kInf;
    for (double R : {1.0, 1.5, 2.0, 3.0, 4.0, 10.0}) {
      double m = m_sigma(g, x, R);
      CHECK(m <= prev);
      prev = m;
    }
    auto inc = g.incidence();
    for (int e : inc[x]) CHECK(m_sigma(g, x, 2) <= g.sigma[e]);
  }
}

TEST_CASE("check_compatibility") {
  auto g = with_sigma(4, {{0, 1}, {1, 2}, {2, 3}}, 0.2);
  EuclideanMap flat{2, std::vector<std::vector<double>>(4, {0.5, 0.5})};
  CompatibilityCertificate cert{3.0, {0, 0, 0, 0}, {1, 2, 3, 1}};
  auto rep = check_compatibility(g, flat, cert, 200, 1);
  CHECK(rep.all_pass());

  auto gr = grid(4, 2, 1);
  auto phi = snowflake_embed(gr.space, 0.5);
  auto comp = universal_compression(gr.space, PointMeasure::counting(16), 2.0, 2.0, phi);
  auto ok = check_compatibility(comp.graph, comp.f, comp.cert, 500, 2);
  CHECK(ok.cond1);
  CHECK(ok.cond3);
  CHECK(ok.cond2_all_verified());

  // Push one Delta above the smallest label within its ball.
  auto bad = comp.cert;
  double top = *std::max_element(comp.graph.sigma.begin(), comp.graph.sigma.end());
  bad.Delta[0] = 10 * (top + 1);
  auto fail = check_compatibility(comp.graph, comp.f, bad, 100, 3);
  CHECK_FALSE(fail.cond1);
  CHECK(fail.cond1_witness.has_value());
}

TEST_CASE("empirical matching bound") {
  auto g = with_sigma(5, {{0, 1}, {1, 2}, {3, 4}}, 0.0);
  EuclideanMap flat{2, std::vector<std::vector<double>>(5, {1, 2})};
  auto r = empirical_matching_bound(g, flat, 2, 500, 4);
  CHECK(r.mean == 0);
  CHECK(r.pass);
  CHECK(r.bound == doctest::Approx(6 * std::exp(-1.0) * 5));

  Rng q = make_rng(2);
  EuclideanMap f{2, {}};
  for (int i = 0; i < 5; ++i) f.coords.push_back(gaussian_vector(q, 2));
  auto a = empirical_matching_bound(g, f, 1, 300, 77);
  auto b = empirical_matching_bound(g, f, 1, 300, 77);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
}

TEST_CASE("extract_unsaturated_pair") {
  auto m = line({0, 1, 5, 6});
  auto omega = PairWeighting::uniform(m, 4);  // the 4 cross pairs, both orders
  PointSet L{0, 1}, R{2, 3};

  auto none = extract_unsaturated_pair(L, R, {}, omega);
  CHECK(none.L0 == L);
  CHECK(none.R0 == R);
  CHECK(omega.mass(none.L0, none.R0) == doctest::Approx(omega.mass(L, R)));

  std::vector<Edge> full{{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  auto out = extract_unsaturated_pair(L, R, full, omega);
  for (auto [a, b] : full) {
    bool cross = (std::count(out.L0.begin(), out.L0.end(), a) && std::count(out.R0.begin(), out.R0.end(), b)) ||
                 (std::count(out.L0.begin(), out.L0.end(), b) && std::count(out.R0.begin(), out.R0.end(), a));
    CHECK_FALSE(cross);
  }
  // Exhaustive oracle over sub-pairs without crossing edges.
  double best = 0;
  for (int ml = 0; ml < 4; ++ml)
    for (int mr = 0; mr < 4; ++mr) {
      PointSet l, r;
      for (int i = 0; i < 2; ++i) {
        if ((ml >> i) & 1) l.push_back(L[i]);
        if ((mr >> i) & 1) r.push_back(R[i]);
      }
      bool crossing = false;
      for (auto [a, b] : full)
        crossing |= std::count(l.begin(), l.end(), a) && std::count(r.begin(), r.end(), b);
      if (!crossing) best = std::max(best, omega.mass(l, r));
    }
  double got = omega.mass(out.L0, out.R0);
  CHECK(got <= best + 1e-12);
  CHECK(got >= omega.mass(L, R) - 2 * out.nu_star - 1e-12);

  // Random bipartite cases: no crossing edge and the mass bound.
  Rng g = make_rng(31);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x;
    for (int i = 0; i < 8; ++i) x.push_back(i < 4 ? uniform01(g) : 10 + uniform01(g));
    auto sp = line(x);
    auto w = PairWeighting::uniform(sp, 5);
    PointSet l{0, 1, 2, 3}, r{4, 5, 6, 7};
    std::vector<Edge> e;
    for (int a : l)
      for (int b : r)
        if (uniform01(g) < 0.3) e.push_back({a, b});
    auto u = extract_unsaturated_pair(l, r, e, w);
    for (auto [a, b] : e) {
      bool cross = std::count(u.L0.begin(), u.L0.end(), a) && std::count(u.R0.begin(), u.R0.end(), b);
      CHECK_FALSE(cross);
    }
    CHECK(w.mass(u.L0, u.R0) >= w.mass(l, r) - 2 * u.nu_star - 1e-12);
  }
}
