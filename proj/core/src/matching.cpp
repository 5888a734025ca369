#include <algorithm>
#include <queue>

#include "zsk/graph.hpp"
#include "zsk/lp.hpp"

namespace zsk {

namespace {

// Edmonds' blossom algorithm, O(V^3).
class Blossom {
 public:
  explicit Blossom(int n, const std::vector<Edge>& edges) : n_(n), adj_(n) {
    for (auto [u, v] : edges)
      if (u != v) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
      }
  }

  int solve() {
    match_.assign(n_, -1);
    int size = 0;
    for (int i = 0; i < n_; ++i) {
      if (match_[i] != -1) continue;
      int v = find_path(i);
      if (v != -1) ++size;
      while (v != -1) {
        int pv = parent_[v], ppv = match_[pv];
        match_[v] = pv;
        match_[pv] = v;
        v = ppv;
      }
    }
    return size;
  }

 private:
  int lca(int a, int b) {
    std::vector<char> seen(n_, 0);
    while (true) {
      a = base_[a];
      seen[a] = 1;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[v] != b) {
      blossom_[base_[v]] = blossom_[base_[match_[v]]] = 1;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int find_path(int root) {
    used_.assign(n_, 0);
    parent_.assign(n_, -1);
    base_.resize(n_);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : adj_[v]) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          int cur = lca(v, to);
          blossom_.assign(n_, 0);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n_; ++i)
            if (blossom_[base_[i]]) {
              base_[i] = cur;
              if (!used_[i]) {
                used_[i] = 1;
                q.push(i);
              }
            }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) return to;
          used_[match_[to]] = 1;
          q.push(match_[to]);
        }
      }
    }
    return -1;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_, parent_, base_;
  std::vector<char> used_, blossom_;
};

}  // namespace

int max_matching(int n, const std::vector<Edge>& edges) { return Blossom(n, edges).solve(); }

FractionalMatching fractional_matching(int n, const std::vector<Edge>& edges, const std::vector<double>& Q) {
  if (static_cast<int>(Q.size()) != n) throw Error(ErrorCode::DimensionMismatch, "weights size");
  for (double q : Q)
    if (q < 0) throw Error(ErrorCode::BadParams, "vertex weights must be nonnegative");
  FractionalMatching out;
  for (auto e : edges) {
    if (e.first == e.second) continue;
    if (e.first > e.second) std::swap(e.first, e.second);
    out.edges.push_back(e);
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()), out.edges.end());
  int m = static_cast<int>(out.edges.size());
  out.phi.assign(m, 0.0);
  if (m == 0) return out;
  std::vector<std::vector<double>> A(n, std::vector<double>(m, 0.0));
  for (int e = 0; e < m; ++e) {
    A[out.edges[e].first][e] = 1;
    A[out.edges[e].second][e] = 1;
  }
  auto lp = solve_lp(A, Q, std::vector<double>(m, 1.0));
  out.value = lp.value;
  out.phi = lp.x;
  return out;
}

UnsaturatedPair extract_unsaturated_pair(const PointSet& L, const PointSet& R, const std::vector<Edge>& bipartite_edges,
                                         const PairWeighting& omega) {
  int n = omega.n;
  std::vector<char> inL(n, 0), inR(n, 0);
  for (int x : L) inL[x] = 1;
  for (int x : R) {
    if (inL[x]) throw Error(ErrorCode::BadParams, "L and R must be disjoint");
    inR[x] = 1;
  }
  for (auto [a, b] : bipartite_edges)
    if (!((inL[a] && inR[b]) || (inL[b] && inR[a]))) throw Error(ErrorCode::BadParams, "edge does not cross L-R");
  auto marg = omega.marginals();
  std::vector<double> Q(n, 0.0);
  for (int x = 0; x < n; ++x)
    if (inL[x] || inR[x]) Q[x] = marg[x];
  auto fm = fractional_matching(n, bipartite_edges, Q);
  std::vector<double> load(n, 0.0);
  for (size_t e = 0; e < fm.edges.size(); ++e) {
    load[fm.edges[e].first] += fm.phi[e];
    load[fm.edges[e].second] += fm.phi[e];
  }
  UnsaturatedPair out;
  out.nu_star = fm.value;
  for (int x : L)
    if (load[x] < Q[x] - 1e-9) out.L0.push_back(x);
  for (int x : R)
    if (load[x] < Q[x] - 1e-9) out.R0.push_back(x);
  out.mass_before = omega.mass(L, R);
  out.mass_after = omega.mass(out.L0, out.R0);
  return out;
}

}  // namespace zsk
