#include "zsk/compression.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace zsk {

int SublevelNets::level_index(double xi) const {
  auto it = std::lower_bound(levels.begin(), levels.end(), xi);
  if (it == levels.end() || *it != xi) throw Error(ErrorCode::BadParams, "value is not a level of the nets");
  return static_cast<int>(it - levels.begin());
}

SublevelNets nested_sublevel_nets(const FiniteMetricSpace& m, const std::vector<double>& theta, double tau,
                                  PointSet domain) {
  if (!(tau > 0)) throw Error(ErrorCode::BadParams, "tau must be positive");
  if (static_cast<int>(theta.size()) != m.size()) throw Error(ErrorCode::DimensionMismatch, "theta size");
  if (domain.empty()) {
    domain.resize(m.size());
    std::iota(domain.begin(), domain.end(), 0);
  }
  std::sort(domain.begin(), domain.end());
  SublevelNets out;
  out.theta = theta;
  out.domain = domain;
  for (int x : domain) out.levels.push_back(theta[x]);
  std::sort(out.levels.begin(), out.levels.end());
  out.levels.erase(std::unique(out.levels.begin(), out.levels.end()), out.levels.end());
  PointSet net;
  for (double xi : out.levels) {
    for (int x : domain) {
      if (theta[x] > xi) continue;
      bool far = std::all_of(net.begin(), net.end(), [&](int y) { return !within(m.d(x, y), 2 * tau); });
      if (far) net.push_back(x);
    }
    PointSet sorted = net;
    std::sort(sorted.begin(), sorted.end());
    out.nets.push_back(sorted);
  }
  return out;
}

void rounding_map(const FiniteMetricSpace& m, const SublevelNets& nets, double tau, std::vector<int>& q) {
  if (static_cast<int>(q.size()) != m.size()) q.assign(m.size(), -1);
  const auto& th = nets.theta;
  for (int w : nets.domain) {
    int wmin = -1;
    for (int z : nets.domain)
      if (within(m.d(w, z), 5 * tau) && (wmin < 0 || th[z] < th[wmin])) wmin = z;
    const PointSet& net = nets.nets[nets.level_index(th[wmin])];
    int rep = -1;
    for (int z : net)
      if (within(m.d(wmin, z), 2 * tau)) {
        rep = z;
        break;
      }
    if (rep < 0) throw Error(ErrorCode::ConclusionViolated, "net is not 2 tau dense");
    q[w] = rep;
  }
}

std::vector<int> rounding_map(const FiniteMetricSpace& m, const SublevelNets& nets, double tau) {
  std::vector<int> q(m.size(), -1);
  rounding_map(m, nets, tau, q);
  return q;
}

std::vector<double> growth_ratio(const FiniteMetricSpace& m, const PointMeasure& mu, double tau) {
  std::vector<double> r(m.size());
  for (int x = 0; x < m.size(); ++x) r[x] = mu.ball(m, x, 19 * tau) / mu.ball(m, x, tau);
  return r;
}

std::vector<double> growth_ratio_rho(const FiniteMetricSpace& m, const PointMeasure& mu, double tau, double C,
                                     double zeta) {
  if (!(C > 0) || !(zeta > 0) || !(tau > 0)) throw Error(ErrorCode::BadParams, "tau, C, zeta must be positive");
  mu.validate(m.size());
  auto ratio = growth_ratio(m, mu, tau);
  std::vector<double> rho(m.size());
  for (int x = 0; x < m.size(); ++x) rho[x] = 1 + (zeta / C) * std::sqrt(std::max(0.0, std::log(ratio[x])));
  return rho;
}

CompressionOutput universal_compression(const FiniteMetricSpace& m, const PointMeasure& mu, double tau, double C,
                                        const EuclideanMap& phi, double zeta) {
  if (phi.size() != m.size()) throw Error(ErrorCode::DimensionMismatch, "map size");
  int n = m.size();
  CompressionOutput out;
  out.zeta = zeta;
  out.tau = tau;
  out.rho = growth_ratio_rho(m, mu, tau, C, zeta);
  out.theta = growth_ratio(m, mu, tau);
  out.graph = build_proximity_graph(m, out.rho, tau);
  out.component = components(out.graph);

  std::map<int, PointSet> members;
  for (int x = 0; x < n; ++x) members[out.component[x]].push_back(x);
  out.q.assign(n, -1);
  for (auto& [label, pts] : members) {
    out.nets.push_back(nested_sublevel_nets(m, out.theta, tau, pts));
    rounding_map(m, out.nets.back(), tau, out.q);
  }

  out.f.dim = phi.dim;
  out.f.coords.resize(n);
  for (int x = 0; x < n; ++x) out.f.coords[x] = phi.coords[out.q[x]];

  // B(x, 2 tau) within the component of x.
  std::vector<PointSet> local(n);
  for (int x = 0; x < n; ++x)
    for (int z : members[out.component[x]])
      if (within(m.d(x, z), 2 * tau)) local[x].push_back(z);

  // reach[a] = max over b in local[a] of |f(a) - f(b)|
  std::vector<double> reach(n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b : local[a]) reach[a] = std::max(reach[a], out.f.dist(a, b));

  auto& g = out.graph;
  g.sigma.assign(g.edges.size(), 0.0);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto [x, y] = g.edges[e];
    double best = 0;
    for (int a : local[x])
      if (within(m.d(a, y), 2 * tau)) best = std::max(best, reach[a]);
    g.sigma[e] = C * best;
  }

  out.rho_tilde.assign(n, kInf);
  out.cert.C = C;
  out.cert.Delta.assign(n, 0.0);
  out.cert.K.assign(n, 1);
  for (int x = 0; x < n; ++x) {
    for (int z : local[x]) out.rho_tilde[x] = std::min(out.rho_tilde[x], out.rho[z]);
    out.cert.K[x] = static_cast<int>(std::ceil(out.rho_tilde[x] - 1e-12));
    out.cert.Delta[x] = C * reach[x];
  }
  return out;
}

}  // namespace zsk
