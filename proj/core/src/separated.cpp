#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "zsk/zeroset.hpp"

namespace zsk {

SlabMembership slab_membership(double a, double theta) {
  double u = a - theta;
  double fr = u - std::floor(u);
  return {fr < 0.25, fr >= 0.5 && fr < 0.75};
}

double tent(double s) {
  double fr = s - std::floor(s);
  return std::max(0.25 - std::abs(0.5 - fr), 0.0);
}

LayeredDraw layered_pair_sets(const PointSet& pts, const EuclideanMap& f, const std::vector<double>& Lambda,
                              double alpha, double C, const std::vector<double>& v, Rng& g) {
  if (!(alpha > 0) || !(C > 0)) throw Error(ErrorCode::BadParams, "alpha and C must be positive");
  if (static_cast<int>(v.size()) != f.dim) throw Error(ErrorCode::DimensionMismatch, "direction dimension");
  LayeredDraw out;
  out.r = uniform01(g);
  double u = uniform01(g);
  out.k = u < 2.0 / 3 ? 1 : (u < 5.0 / 6 ? 2 : 3);
  std::map<long, double> shift;
  for (int x : pts) {
    if (std::isinf(Lambda[x])) {
      if (out.k == 2) out.E.push_back(x);
      if (out.k == 3) out.F.push_back(x);
      continue;
    }
    // x in Y_i(r) iff i - 2/3 <= log(Lambda)/(3 alpha) - r < i
    double h = std::log(Lambda[x]) / (3 * alpha) - out.r;
    long i = static_cast<long>(std::floor(h)) + 1;
    if (h < i - 2.0 / 3) continue;
    auto it = shift.find(i);
    if (it == shift.end()) it = shift.emplace(i, uniform01(g)).first;
    double Ci = std::exp(3 * alpha * (i + out.r)) * C;
    auto s = slab_membership(f.dot(x, v) / (4 * Ci), it->second);
    if (s.in_L) out.E.push_back(x);
    if (s.in_R) out.F.push_back(x);
  }
  std::sort(out.E.begin(), out.E.end());
  std::sort(out.F.begin(), out.F.end());
  return out;
}

ComponentSampler::ComponentSampler(const ThresholdedGraph& g, EuclideanMap f, std::vector<double> Lambda,
                                   const PairWeighting& omega, double C)
    : f_(std::move(f)), Lambda_(std::move(Lambda)), C_(C), alpha_(std::log(2.0)) {
  int n = g.n;
  if (f_.size() != n || static_cast<int>(Lambda_.size()) != n || omega.n != n)
    throw Error(ErrorCode::DimensionMismatch, "component sampler inputs");
  comp_ = components(g);
  for (auto [x, y] : g.edges) {
    double a = Lambda_[x], b = Lambda_[y];
    bool ok = (std::isinf(a) && std::isinf(b)) || (b <= 2 * a * (1 + 1e-12) && a <= 2 * b * (1 + 1e-12));
    if (!ok) {
      std::ostringstream os;
      os << "edge {" << x << "," << y << "}";
      throw Error(ErrorCode::ModerationViolated, os.str());
    }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y || omega.omega[x][y] <= 0 || comp_[x] != comp_[y]) continue;
      double lam = std::min(Lambda_[x], Lambda_[y]);
      if (f_.dist(x, y) < lam * (1 - 1e-12)) {
        std::ostringstream os;
        os << "pair (" << x << "," << y << ")";
        throw Error(ErrorCode::MinDistanceViolated, os.str());
      }
    }
  std::map<int, PointSet> by;
  for (int x = 0; x < n; ++x) by[comp_[x]].push_back(x);
  for (auto& [label, pts] : by) groups_.push_back(pts);
}

std::pair<PointSet, PointSet> ComponentSampler::draw(const std::vector<double>& v, Rng& g) const {
  std::pair<PointSet, PointSet> out;
  for (const auto& pts : groups_) {
    Rng sub = make_rng(g());
    auto lay = layered_pair_sets(pts, f_, Lambda_, alpha_, C_, v, sub);
    out.first.insert(out.first.end(), lay.E.begin(), lay.E.end());
    out.second.insert(out.second.end(), lay.F.begin(), lay.F.end());
  }
  std::sort(out.first.begin(), out.first.end());
  std::sort(out.second.begin(), out.second.end());
  return out;
}

std::vector<double> level_function(const FiniteMetricSpace& m, const std::vector<int>& component, const EuclideanMap& f,
                                   double tau, double C) {
  int n = m.size();
  std::map<int, PointSet> by;
  for (int x = 0; x < n; ++x) by[component[x]].push_back(x);
  std::vector<double> lam(n, kInf);
  for (auto& [label, pts] : by) {
    std::vector<std::pair<int, int>> far;
    for (size_t a = 0; a < pts.size(); ++a)
      for (size_t b = a + 1; b < pts.size(); ++b)
        if (m.d(pts[a], pts[b]) >= tau) far.push_back({pts[a], pts[b]});
    if (far.empty()) continue;  // diameter below tau
    for (int x : pts) {
      double best = kInf;
      for (auto [w, z] : far) best = std::min(best, std::max(f.dist(x, w), f.dist(x, z)));
      lam[x] = C * best;
    }
  }
  return lam;
}

GoodGraph good_graph_builder(const FiniteMetricSpace& m, const PointMeasure& mu, const EuclideanMap& phi,
                             const QuasiParams& params, double tau, double C, double r, double beta, bool check_quasi,
                             double zeta) {
  params.validate();
  if (params.s > 0.5 || params.eps > 0.5) throw Error(ErrorCode::BadParams, "need s, eps <= 1/2");
  if (!(r >= 1) || !(tau > 0) || !(C > 0) || !(beta > 0)) throw Error(ErrorCode::BadParams, "builder parameters");
  double cap = std::pow(params.s, 3 * std::log(8 * r) / params.eps);
  if (beta > cap * (1 + 1e-12)) {
    std::ostringstream os;
    os << "beta = " << beta << " exceeds " << cap;
    throw Error(ErrorCode::BetaTooLarge, os.str());
  }
  if (check_quasi) {
    auto qs = quasisym_check(m, phi, params);
    if (!qs.ok) {
      std::ostringstream os;
      os << "triple (" << qs.violation->i << "," << qs.violation->j << "," << qs.violation->k << ")";
      throw Error(ErrorCode::QuasisymmetryViolated, os.str());
    }
  }
  GoodGraph gg;
  gg.comp = universal_compression(m, mu, beta * tau, r * C, phi, zeta);
  gg.f = gg.comp.f;
  gg.Lambda = level_function(m, gg.comp.component, gg.f, tau, C);

  const auto& g = gg.comp.graph;
  const auto& lam = gg.Lambda;
  auto fail = [](const std::string& what) { throw Error(ErrorCode::ConclusionViolated, what); };
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto [x, y] = g.edges[e];
    if (std::isinf(lam[x]) != std::isinf(lam[y])) fail("mixed infinite level on an edge");
    if (!std::isinf(lam[x]) && (lam[y] > 2 * lam[x] * (1 + 1e-12) || lam[x] > 2 * lam[y] * (1 + 1e-12)))
      fail("level function varies by more than 2 along an edge");
    if (4 * g.sigma[e] > std::min(lam[x], lam[y]) * (1 + 1e-12)) fail("4 sigma exceeds the level function");
  }
  for (int x = 0; x < m.size(); ++x)
    for (int y = x + 1; y < m.size(); ++y)
      if (gg.comp.component[x] == gg.comp.component[y] && m.d(x, y) >= tau &&
          C * gg.f.dist(x, y) < std::max(lam[x], lam[y]) * (1 - 1e-12))
        fail("same-component far pair below the level function");
  return gg;
}

SeparatedPairSampler::SeparatedPairSampler(const FiniteMetricSpace& m, const PointMeasure& mu, const EuclideanMap& phi,
                                           const PipelineParams& params, const PairWeighting& omega) {
  if (params.C < 1) throw Error(ErrorCode::BadParams, "C >= 1");
  if (params.tau > m.diameter() * (1 + 1e-12)) throw Error(ErrorCode::TauExceedsDiameter, "tau exceeds the diameter");
  auto core = std::make_shared<Core>();
  core->m = m;
  core->params = params;
  double r = params.zeta * params.alpha;
  double raw = std::pow(params.quasi.s, params.alpha / params.quasi.eps);
  double cap = std::pow(params.quasi.s, 3 * std::log(8 * r) / params.quasi.eps);
  core->beta = std::min(raw, cap);
  core->beta_clamped = raw > cap;
  core->gg = good_graph_builder(m, mu, phi, params.quasi, params.tau, params.C, r, core->beta, params.check_quasi,
                                params.zeta);
  core->Cf = core->gg.f.scaled(params.C);
  for (int x = 0; x < m.size() && core->x0 < 0; ++x)
    for (int y = x + 1; y < m.size(); ++y)
      if (m.d(x, y) >= params.tau * (1 - 1e-12)) {
        core->x0 = x;
        core->y0 = y;
        break;
      }
  omega.validate(m);
  core_ = core;
  omega_ = omega;
  sampler_ = std::make_shared<ComponentSampler>(core_->gg.comp.graph, core_->Cf, core_->gg.Lambda, omega_, params.C);
}

SeparatedPairSampler::SeparatedPairSampler(std::shared_ptr<const Core> core, const PairWeighting& omega)
    : core_(std::move(core)), omega_(omega) {
  sampler_ = std::make_shared<ComponentSampler>(core_->gg.comp.graph, core_->Cf, core_->gg.Lambda, omega_,
                                                core_->params.C);
}

SeparatedPairSampler SeparatedPairSampler::with_omega(const PairWeighting& omega) const {
  return SeparatedPairSampler(core_, omega);
}

double SeparatedPairSampler::separation(int x, int y) const {
  const auto& rho = core_->gg.comp.rho;
  return core_->beta * core_->params.tau / std::min(rho[x], rho[y]);
}

double SeparatedPairSampler::psi(int y) const { return core_->beta * core_->params.tau / core_->gg.comp.rho[y]; }

PipelineDraw SeparatedPairSampler::draw_full(std::uint64_t stream) const {
  Rng g = make_rng(stream);
  PipelineDraw out;
  out.v = gaussian_vector(g, core_->Cf.dim);
  std::tie(out.A, out.B) = sampler_->draw(out.v, g);
  std::vector<char> inA(core_->m.size(), 0), inB(core_->m.size(), 0);
  for (int x : out.A) inA[x] = 1;
  for (int x : out.B) inB[x] = 1;
  std::vector<Edge> cross;
  for (auto [x, y] : core_->gg.comp.graph.edges)
    if ((inA[x] && inB[y]) || (inA[y] && inB[x])) cross.push_back({x, y});
  auto un = extract_unsaturated_pair(out.A, out.B, cross, omega_);
  out.A_star = un.L0;
  out.B_star = un.R0;
  if (out.A_star.empty() || out.B_star.empty()) {
    out.fallback = true;
    out.A_star = {core_->x0};
    out.B_star = {core_->y0};
  }
  for (int x : out.A_star)
    for (int y : out.B_star)
      if (!(core_->m.d(x, y) > separation(x, y))) {
        std::ostringstream os;
        os << "separation fails for (" << x << "," << y << ")";
        throw Error(ErrorCode::ConclusionViolated, os.str());
      }
  return out;
}

std::pair<PointSet, PointSet> SeparatedPairSampler::draw(std::uint64_t stream) const {
  auto d = draw_full(stream);
  return {d.A_star, d.B_star};
}

}  // namespace zsk
