#include "zsk/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace zsk {

std::vector<std::vector<int>> ThresholdedGraph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges)
    if (u != v) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
  return adj;
}

std::vector<std::vector<int>> ThresholdedGraph::incidence() const {
  std::vector<std::vector<int>> inc(n);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    inc[edges[e].first].push_back(e);
    if (edges[e].second != edges[e].first) inc[edges[e].second].push_back(e);
  }
  return inc;
}

void ThresholdedGraph::normalize() {
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  sigma.clear();
}

int ThresholdedGraph::find_edge(int u, int v) const {
  Edge e = std::minmax(u, v);
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || *it != e) return -1;
  return static_cast<int>(it - edges.begin());
}

double PairWeighting::mass(const PointSet& A, const PointSet& B) const {
  double t = 0;
  for (int x : A)
    for (int y : B) t += omega[x][y];
  return t;
}

std::vector<double> PairWeighting::marginals() const {
  std::vector<double> q(n, 0.0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) q[x] += omega[x][y];
  return q;
}

void PairWeighting::validate(const FiniteMetricSpace& m) const {
  if (n != m.size()) throw Error(ErrorCode::DimensionMismatch, "omega size");
  double total = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      double w = omega[x][y];
      if (w < 0) throw Error(ErrorCode::BadParams, "omega must be nonnegative");
      if (std::abs(w - omega[y][x]) > 1e-12 * (1 + std::abs(w))) throw Error(ErrorCode::BadParams, "omega must be symmetric");
      if (w > 0 && m.d(x, y) < tau * (1 - 1e-12)) throw Error(ErrorCode::BadParams, "omega support below tau");
      total += w;
    }
  if (std::abs(total - 1) > 1e-9) throw Error(ErrorCode::BadParams, "omega must have total mass 1");
}

PairWeighting PairWeighting::uniform(const FiniteMetricSpace& m, double tau) {
  PairWeighting w;
  w.n = m.size();
  w.tau = tau;
  w.omega.assign(w.n, std::vector<double>(w.n, 0.0));
  long cnt = 0;
  for (int x = 0; x < w.n; ++x)
    for (int y = 0; y < w.n; ++y)
      if (x != y && m.d(x, y) >= tau * (1 - 1e-12)) ++cnt;
  if (cnt == 0) throw Error(ErrorCode::EmptySupport, "no pairs at distance >= tau");
  for (int x = 0; x < w.n; ++x)
    for (int y = 0; y < w.n; ++y)
      if (x != y && m.d(x, y) >= tau * (1 - 1e-12)) w.omega[x][y] = 1.0 / cnt;
  return w;
}

std::vector<int> hop_distances(const std::vector<std::vector<int>>& adj, int x) {
  std::vector<int> d(adj.size(), -1);
  std::queue<int> q;
  d[x] = 0;
  q.push(x);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u])
      if (d[v] < 0) {
        d[v] = d[u] + 1;
        q.push(v);
      }
  }
  return d;
}

PointSet graph_ball(const std::vector<std::vector<int>>& adj, int x, double R) {
  PointSet out;
  if (R < 0) return out;
  long cap = std::isinf(R) ? static_cast<long>(adj.size()) : static_cast<long>(std::floor(R + 1e-12));
  auto d = hop_distances(adj, x);
  for (int y = 0; y < static_cast<int>(adj.size()); ++y)
    if (d[y] >= 0 && d[y] <= cap) out.push_back(y);
  return out;
}

std::vector<int> components(const ThresholdedGraph& g) {
  auto adj = g.adjacency();
  std::vector<int> comp(g.n, -1);
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] >= 0) continue;
    std::queue<int> q;
    comp[s] = s;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u])
        if (comp[v] < 0) {
          comp[v] = s;
          q.push(v);
        }
    }
  }
  return comp;
}

ThresholdedGraph build_proximity_graph(const FiniteMetricSpace& m, const std::vector<double>& rho, double tau) {
  if (!(tau > 0)) throw Error(ErrorCode::BadParams, "tau must be positive");
  if (static_cast<int>(rho.size()) != m.size()) throw Error(ErrorCode::DimensionMismatch, "rho size");
  for (double r : rho)
    if (!(r >= 1)) throw Error(ErrorCode::RhoBelowOne, "rho must be >= 1");
  ThresholdedGraph g;
  g.n = m.size();
  for (int x = 0; x < g.n; ++x)
    for (int y = x; y < g.n; ++y)
      if (within(m.d(x, y), tau / std::min(rho[x], rho[y]))) g.edges.push_back({x, y});
  return g;
}

std::vector<Edge> sparsify_directional(const ThresholdedGraph& g, const EuclideanMap& f, const std::vector<double>& v) {
  if (static_cast<int>(v.size()) != f.dim) throw Error(ErrorCode::DimensionMismatch, "direction dimension");
  if (!g.has_sigma()) throw Error(ErrorCode::BadParams, "sigma unset");
  std::vector<double> proj(g.n);
  for (int x = 0; x < g.n; ++x) proj[x] = f.dot(x, v);
  std::vector<Edge> out;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto [a, b] = g.edges[e];
    if (std::abs(proj[a] - proj[b]) > 4 * g.sigma[e]) out.push_back(g.edges[e]);
  }
  return out;
}

double m_sigma(const ThresholdedGraph& g, int x, double R) {
  if (R < 1) return 0;
  auto adj = g.adjacency();
  auto inc = g.incidence();
  double best = kInf;
  for (int y : graph_ball(adj, x, R - 1))
    for (int e : inc[y]) best = std::min(best, g.sigma[e]);
  return best;
}

CompatibilityReport check_compatibility(const ThresholdedGraph& g, const EuclideanMap& f,
                                        const CompatibilityCertificate& cert, int mc_samples, std::uint64_t seed) {
  int n = g.n;
  if (f.size() != n || static_cast<int>(cert.Delta.size()) != n || static_cast<int>(cert.K.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "certificate or map size");
  if (!g.has_sigma()) throw Error(ErrorCode::BadParams, "sigma unset");
  auto adj = g.adjacency();
  auto inc = g.incidence();
  CompatibilityReport rep;
  const double tol = 1e-12;

  for (int x = 0; x < n && rep.cond1; ++x)
    for (int y : graph_ball(adj, x, cert.K[x] - 1)) {
      for (int e : inc[y])
        if (cert.Delta[x] > g.sigma[e] * (1 + tol) + tol) {
          rep.cond1 = false;
          rep.cond1_witness = Triple{x, y, e};
          break;
        }
      if (!rep.cond1) break;
    }

  std::vector<PointSet> kball(n);
  for (int x = 0; x < n; ++x) kball[x] = graph_ball(adj, x, cert.K[x]);

  for (int x = 0; x < n && rep.cond3; ++x)
    for (int z : kball[x])
      if (f.dist(x, z) > cert.Delta[x] / cert.C * (1 + tol) + tol) {
        rep.cond3 = false;
        rep.cond3_witness = std::make_pair(x, z);
        break;
      }

  // Expected Gaussian max per y, bounded soundly and estimated by Monte Carlo.
  std::vector<double> sound(n), mc_mean(n, 0), mc_se(n, 0);
  std::vector<char> mc_done(n, 0);
  for (int y = 0; y < n; ++y) {
    std::vector<std::vector<double>> imgs;
    double radius = 0;
    for (int z : kball[y]) {
      radius = std::max(radius, f.dist(y, z));
      bool dup = false;
      for (auto& im : imgs)
        if (euclid(im, f.coords[z]) <= 1e-12) {
          dup = true;
          break;
        }
      if (!dup) imgs.push_back(f.coords[z]);
    }
    size_t m = imgs.size();
    sound[y] = m >= 2 ? std::sqrt(2 * std::log(static_cast<double>(m))) * radius : 0.0;
  }
  auto run_mc = [&](int y) {
    if (mc_done[y] || mc_samples < 2) return;
    Rng gen = make_rng(derive(seed, label_of("cond2"), y));
    double s = 0, s2 = 0;
    for (int t = 0; t < mc_samples; ++t) {
      auto v = gaussian_vector(gen, f.dim);
      double py = f.dot(y, v), best = 0;
      for (int z : kball[y]) best = std::max(best, f.dot(z, v) - py);
      s += best;
      s2 += best * best;
    }
    double mean = s / mc_samples;
    double var = std::max(0.0, s2 / mc_samples - mean * mean) * mc_samples / (mc_samples - 1);
    mc_mean[y] = mean;
    mc_se[y] = std::sqrt(var / mc_samples);
    mc_done[y] = 1;
  };
  for (int x = 0; x < n; ++x) {
    std::set<int> nbrs(adj[x].begin(), adj[x].end());
    if (g.find_edge(x, x) >= 0) nbrs.insert(x);
    for (int y : nbrs) {
      ++rep.cond2_pairs;
      double rhs = cert.K[x] * cert.Delta[y];
      if (sound[y] <= rhs * (1 + tol) + tol) {
        ++rep.cond2_sound;
        continue;
      }
      run_mc(y);
      if (mc_done[y] && mc_mean[y] + 3 * mc_se[y] <= rhs) {
        ++rep.cond2_mc;
      } else {
        ++rep.cond2_undetermined;
        if (!rep.cond2_witness) rep.cond2_witness = std::make_pair(x, y);
      }
    }
  }
  return rep;
}

MatchingBoundReport empirical_matching_bound(const ThresholdedGraph& g, const EuclideanMap& f, double C, int n_samples,
                                             std::uint64_t seed) {
  if (n_samples < 2) throw Error(ErrorCode::BadParams, "need at least 2 samples");
  std::vector<int> nu(n_samples);
  parallel_for(n_samples, [&](int i) {
    Rng gen = make_rng(derive(seed, label_of("matching_bound"), i));
    auto v = gaussian_vector(gen, f.dim);
    nu[i] = max_matching(g.n, sparsify_directional(g, f, v));
  });
  double s = 0, s2 = 0;
  for (int v : nu) {
    s += v;
    s2 += static_cast<double>(v) * v;
  }
  MatchingBoundReport r;
  r.samples = n_samples;
  r.mean = s / n_samples;
  double var = std::max(0.0, s2 / n_samples - r.mean * r.mean) * n_samples / (n_samples - 1);
  r.stderr_ = std::sqrt(var / n_samples);
  r.bound = 6 * std::exp(-C * C / 4) * g.n;
  r.pass = r.mean + 2 * r.stderr_ < r.bound;
  return r;
}

}  // namespace zsk
