#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

#include "zsk/metric.hpp"

namespace zsk {

std::vector<std::vector<int>> bfs_all_pairs(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  std::vector<std::vector<int>> out(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    auto& d = out[s];
    std::queue<int> q;
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[u])
        if (d[v] < 0) {
          d[v] = d[u] + 1;
          q.push(v);
        }
    }
  }
  return out;
}

namespace {

Instance from_graph(const std::vector<std::vector<int>>& adj) {
  auto hops = bfs_all_pairs(adj);
  int n = static_cast<int>(adj.size());
  Matrix d(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (hops[i][j] < 0) throw Error(ErrorCode::DisconnectedGraph, "graph is disconnected");
      d[i][j] = hops[i][j];
    }
  Instance inst;
  inst.space = trusted_space(std::move(d));
  inst.graph_adj = adj;
  return inst;
}

double lp_dist(const std::vector<double>& a, const std::vector<double>& b, double p) {
  double s = 0;
  for (size_t k = 0; k < a.size(); ++k) s += std::pow(std::abs(a[k] - b[k]), p);
  return std::pow(s, 1 / p);
}

Instance from_coords(std::vector<std::vector<double>> pts, double p) {
  int n = static_cast<int>(pts.size());
  Matrix d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = lp_dist(pts[i], pts[j], p);
  Instance inst;
  inst.space = trusted_space(std::move(d));
  EuclideanMap f;
  f.dim = static_cast<int>(pts[0].size());
  f.coords = std::move(pts);
  inst.coords = std::move(f);
  return inst;
}

}  // namespace

Instance hamming_cube(int dim) {
  if (dim < 1 || dim > 12) throw Error(ErrorCode::BadParams, "cube dim in [1,12]");
  int n = 1 << dim;
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < dim; ++k) pts[i][k] = (i >> k) & 1;
  return from_coords(std::move(pts), 1.0);
}

Instance lp_cloud(int n, int dim, double p, std::uint64_t seed) {
  if (n < 2 || dim < 1 || p < 1) throw Error(ErrorCode::BadParams, "cloud needs n >= 2, dim >= 1, p >= 1");
  Rng g = make_rng(derive(seed, label_of("lp_cloud")));
  std::vector<std::vector<double>> pts(n);
  for (auto& x : pts) x = gaussian_vector(g, dim);
  return from_coords(std::move(pts), p);
}

Instance grid(int side, int dim, double p) {
  if (side < 1 || dim < 1 || p < 1) throw Error(ErrorCode::BadParams, "grid needs side, dim >= 1, p >= 1");
  int n = 1;
  for (int k = 0; k < dim; ++k) n *= side;
  if (n < 2) throw Error(ErrorCode::BadParams, "grid must have at least 2 points");
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (int i = 0; i < n; ++i) {
    int r = i;
    for (int k = 0; k < dim; ++k) {
      pts[i][k] = r % side;
      r /= side;
    }
  }
  return from_coords(std::move(pts), p);
}

Instance diamond(int level) {
  if (level < 0 || level > 6) throw Error(ErrorCode::BadParams, "diamond level in [0,6]");
  std::vector<std::pair<int, int>> edges{{0, 1}};
  int n = 2;
  for (int l = 0; l < level; ++l) {
    std::vector<std::pair<int, int>> next;
    for (auto [u, v] : edges) {
      int a = n++, b = n++;
      next.push_back({u, a});
      next.push_back({a, v});
      next.push_back({u, b});
      next.push_back({b, v});
    }
    edges = std::move(next);
  }
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return from_graph(adj);
}

Instance expander_path_metric(int n, int degree, std::uint64_t seed) {
  if (degree < 3 || n < degree + 1 || n % 2 != 0)
    throw Error(ErrorCode::BadParams, "expander needs degree >= 3, even n > degree");
  Rng g = make_rng(derive(seed, label_of("expander")));
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::set<std::pair<int, int>> edges;
    bool simple = true;
    for (int m = 0; m < degree && simple; ++m) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), g);
      for (int k = 0; k < n; k += 2) {
        auto e = std::minmax(perm[k], perm[k + 1]);
        if (!edges.insert(e).second) {
          simple = false;
          break;
        }
      }
    }
    if (!simple) continue;
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    auto hops = bfs_all_pairs(adj);
    bool connected = std::all_of(hops[0].begin(), hops[0].end(), [](int h) { return h >= 0; });
    if (connected) return from_graph(adj);
  }
  throw Error(ErrorCode::DisconnectedGraph, "no simple connected regular graph within 100 attempts");
}

Instance generate_instance(const std::string& family, const GenParams& p, std::uint64_t seed) {
  if (family == "hamming_cube") return hamming_cube(p.dim);
  if (family == "lp_cloud") return lp_cloud(p.n, p.dim, p.p, seed);
  if (family == "diamond") return diamond(p.level);
  if (family == "expander_path_metric" || family == "expander") return expander_path_metric(p.n, p.degree, seed);
  if (family == "grid") return grid(p.side, p.dim, p.p);
  throw Error(ErrorCode::BadParams, "unknown family " + family);
}

}  // namespace zsk
