#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>

#include "zsk/applications.hpp"
#include "zsk/descent.hpp"
#include "zsk/graph.hpp"
#include "zsk/zeroset.hpp"

namespace zsk::verify {

using nlohmann::json;

namespace {

int samples(const SuiteConfig& cfg, int n) { return cfg.level == Level::Fast ? std::min(n, 10000) : n; }

CheckResult start(int id, std::string name) {
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

Instance from_space(FiniteMetricSpace m) {
  Instance inst;
  inst.space = std::move(m);
  return inst;
}

std::uint64_t stream(const SuiteConfig& cfg, int check, std::uint64_t i = 0) {
  return derive(cfg.seed, label_of("verify"), check, i);
}

// Exhaustive maximum matching over vertex subsets.
int brute_matching(int n, const std::vector<Edge>& edges) {
  std::vector<std::uint32_t> nb(n, 0);
  for (auto [a, b] : edges)
    if (a != b) {
      nb[a] |= 1u << b;
      nb[b] |= 1u << a;
    }
  std::vector<int> memo(1u << n, -1);
  auto rec = [&](auto&& self, std::uint32_t free) -> int {
    if (free == 0) return 0;
    int& m = memo[free];
    if (m >= 0) return m;
    int v = __builtin_ctz(free);
    std::uint32_t rest = free & ~(1u << v);
    int best = self(self, rest);
    for (std::uint32_t cand = nb[v] & rest; cand; cand &= cand - 1) {
      int u = __builtin_ctz(cand);
      best = std::max(best, 1 + self(self, rest & ~(1u << u)));
    }
    return m = best;
  };
  return rec(rec, (1u << n) - 1);
}

// ---- 1 ----
CheckResult slab_marginal(const SuiteConfig& cfg) {
  CheckResult r = start(1, "slab marginal");
  Rng g = make_rng(stream(cfg, 1));
  int N = samples(cfg, 100000);
  double worst = 0;
  json ps = json::array();
  for (int k = 0; k < 10; ++k) {
    double a = 10 * uniform01(g) - 5;
    long hits = 0;
    for (int i = 0; i < N; ++i) hits += slab_membership(a, uniform01(g)).in_L;
    double p = static_cast<double>(hits) / N;
    ps.push_back(p);
    worst = std::max(worst, std::abs(p - 0.25));
  }
  r.pass = worst <= 0.01;
  r.measured = {{"draws", N}, {"p", ps}, {"max_abs_dev", worst}};
  r.detail = "max |p - 1/4| = " + std::to_string(worst);
  return r;
}

// ---- 2 ----
CheckResult tent_closed_form(const SuiteConfig&) {
  CheckResult r = start(2, "tent closed form");
  // tent is piecewise linear with kinks at 1/4, 1/2, 3/4, so the trapezoid rule on them is exact.
  const double knots[] = {0, 0.25, 0.5, 0.75, 1};
  double integral = 0;
  for (int i = 0; i < 4; ++i) integral += 0.5 * (knots[i + 1] - knots[i]) * (tent(knots[i]) + tent(knots[i + 1]));
  double peak = tent(0.5);
  // Independent midpoint sum as a sanity value.
  const int M = 1 << 16;
  double mid = 0;
  for (int i = 0; i < M; ++i) mid += tent((i + 0.5) / M);
  mid /= M;
  r.pass = peak == 0.25 && integral == 1.0 / 16 && std::abs(mid - 1.0 / 16) < 1e-9;
  r.measured = {{"tent_half", peak}, {"integral", integral}, {"midpoint_integral", mid}};
  r.detail = "tent(1/2) = " + std::to_string(peak) + ", integral = " + std::to_string(integral);
  return r;
}

// ---- 3 ----
CheckResult deterministic_separation(const SuiteConfig& cfg) {
  CheckResult r = start(3, "deterministic separation");
  std::vector<std::pair<std::string, Instance>> insts = {
      {"cube4", hamming_cube(4)}, {"grid4x4_l1", grid(4, 2, 1)}, {"diamond2", diamond(2)}};
  const int N = samples(cfg, 10000);
  long slab_viol = 0, sep_viol = 0, empty = 0, slab_pairs = 0, sep_pairs = 0;
  json per = json::object();
  for (size_t idx = 0; idx < insts.size(); ++idx) {
    const auto& m = insts[idx].second.space;
    auto mu = PointMeasure::counting(m.size());
    auto sf = quasisymmetric_snowflake(m, QuasiParams{});
    PipelineParams pp;
    pp.quasi = sf.quasi;
    pp.tau = m.diameter() / 2;
    SeparatedPairSampler sampler(m, mu, sf.map, pp, PairWeighting::uniform(m, pp.tau));
    const double median = m.diameter() / 2;
    const int n = m.size();
    std::vector<long> sv(N, 0), pv(N, 0), em(N, 0), sc(N, 0), pc(N, 0);
    long fallbacks = 0;
    std::vector<char> fb(N, 0);
    parallel_for(N, [&](int i) {
      PipelineDraw d;
      try {
        d = sampler.draw_full(stream(cfg, 3, idx * 1000003 + i));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ConclusionViolated) throw;
        ++pv[i];
        return;
      }
      fb[i] = d.fallback;
      if (d.A_star.empty() || d.B_star.empty()) ++em[i];
      for (int x : d.A_star)
        for (int y : d.B_star) {
          ++pc[i];
          if (!(m.d(x, y) > sampler.separation(x, y))) ++pv[i];
        }
      // Slab separation on the map images for this draw's direction.
      Rng g = make_rng(stream(cfg, 30, idx * 1000003 + i));
      double theta = uniform01(g);
      double C = median * std::exp(4 * uniform01(g) - 2);
      std::vector<double> proj(n);
      std::vector<SlabMembership> mem(n);
      for (int x = 0; x < n; ++x) {
        proj[x] = sf.map.dot(x, d.v);
        mem[x] = slab_membership(proj[x] / (4 * C), theta);
      }
      for (int x = 0; x < n; ++x)
        if (mem[x].in_L)
          for (int y = 0; y < n; ++y)
            if (mem[y].in_R) {
              ++sc[i];
              if (!(std::abs(proj[x] - proj[y]) > C)) ++sv[i];
            }
    });
    long s1 = 0, s2 = 0, s4 = 0, s5 = 0, s6 = 0;
    for (int i = 0; i < N; ++i) {
      s1 += sv[i];
      s2 += pv[i];
      s4 += em[i];
      s5 += sc[i];
      s6 += pc[i];
      fallbacks += fb[i];
    }
    slab_viol += s1;
    sep_viol += s2;
    empty += s4;
    slab_pairs += s5;
    sep_pairs += s6;
    per[insts[idx].first] = {{"slab_violations", s1},    {"separation_violations", s2},
                             {"empty_draws", s4},       {"slab_pairs_checked", s5},    {"separated_pairs_checked", s6},
                             {"fallback_draws", fallbacks}, {"beta", sampler.beta()},  {"theta", sf.theta}};
  }
  r.pass = slab_viol == 0 && sep_viol == 0 && empty == 0;
  r.measured = {{"draws_per_instance", N}, {"instances", per}};
  r.detail = std::to_string(slab_pairs) + " slab pairs, " + std::to_string(sep_pairs) + " separated pairs; violations " +
             std::to_string(slab_viol + sep_viol) + ", empty draws " + std::to_string(empty);
  return r;
}

// ---- 4 ----
CheckResult layered_membership(const SuiteConfig& cfg) {
  CheckResult r = start(4, "layered membership");
  // Components {0,1,2} (a path with finite, moderate Lambda), {3} finite, {4} at infinity.
  ThresholdedGraph g;
  g.n = 5;
  g.edges = {{0, 1}, {1, 2}};
  EuclideanMap f;
  f.dim = 2;
  f.coords = {{0, 0}, {1, 0}, {2, 1}, {5, 5}, {-3, 2}};
  std::vector<double> Lambda{1.0, 1.5, 2.5, 4.0, kInf};
  PairWeighting omega;
  omega.n = 5;
  omega.omega.assign(5, std::vector<double>(5, 0.0));
  ComponentSampler sampler(g, f, Lambda, omega, 1.0);
  const std::vector<double> v{0.7, -1.3};
  const int N = samples(cfg, 100000);
  std::vector<long> inA(5, 0), inB(5, 0);
  const std::vector<std::pair<int, int>> cross{{0, 3}, {0, 4}, {2, 4}, {3, 4}, {4, 1}};
  std::vector<long> joint(cross.size(), 0);
  for (int i = 0; i < N; ++i) {
    Rng rg = make_rng(stream(cfg, 4, i));
    auto [A, B] = sampler.draw(v, rg);
    std::vector<char> a(5, 0), b(5, 0);
    for (int x : A) a[x] = 1;
    for (int x : B) b[x] = 1;
    for (int x = 0; x < 5; ++x) {
      inA[x] += a[x];
      inB[x] += b[x];
    }
    for (size_t k = 0; k < cross.size(); ++k) joint[k] += a[cross[k].first] && b[cross[k].second];
  }
  double worst = 0, worst_joint = 0;
  json pa = json::array(), pb = json::array(), pj = json::array();
  for (int x = 0; x < 5; ++x) {
    double p = static_cast<double>(inA[x]) / N, q = static_cast<double>(inB[x]) / N;
    pa.push_back(p);
    pb.push_back(q);
    worst = std::max({worst, std::abs(p - 1.0 / 6), std::abs(q - 1.0 / 6)});
  }
  for (size_t k = 0; k < cross.size(); ++k) {
    double p = static_cast<double>(joint[k]) / N;
    pj.push_back(p);
    worst_joint = std::max(worst_joint, std::abs(p - 1.0 / 36));
  }
  r.pass = worst <= 0.01 && worst_joint <= 0.005;
  r.measured = {{"draws", N}, {"P_in_A", pa}, {"P_in_B", pb}, {"P_joint_cross", pj},
                {"max_dev_marginal", worst}, {"max_dev_joint", worst_joint}};
  r.detail = "max |P - 1/6| = " + std::to_string(worst) + ", max |P - 1/36| = " + std::to_string(worst_joint);
  return r;
}

// ---- 5 ----
CheckResult matching_bound(const SuiteConfig& cfg) {
  CheckResult r = start(5, "matching bound");
  auto inst = hamming_cube(4);
  const auto& m = inst.space;
  auto phi = snowflake_embed(m, 0.5);
  const double C = 4;
  auto comp = universal_compression(m, PointMeasure::counting(m.size()), 2.0, C, phi);
  auto cert = check_compatibility(comp.graph, comp.f, comp.cert, 2000, stream(cfg, 5, 1));
  const int N = samples(cfg, 10000);
  auto mb = empirical_matching_bound(comp.graph, comp.f, C, N, stream(cfg, 5, 2));
  int nonloop = 0;
  for (auto [a, b] : comp.graph.edges) nonloop += a != b;
  r.pass = cert.all_pass() && mb.pass;
  r.measured = {{"draws", N},          {"mean", mb.mean},        {"stderr", mb.stderr_}, {"bound", mb.bound},
                {"edges", nonloop},    {"certified", cert.all_pass()}, {"cond2_sound", cert.cond2_sound},
                {"cond2_mc", cert.cond2_mc}};
  char buf[160];
  std::snprintf(buf, sizeof buf, "mean nu %.4f + 2 se %.4f < %.4f; certificate %s", mb.mean, 2 * mb.stderr_, mb.bound,
                cert.all_pass() ? "ok" : "FAILED");
  r.detail = buf;
  return r;
}

// ---- 6 ----
CheckResult fractional_matching_check(const SuiteConfig& cfg) {
  CheckResult r = start(6, "fractional matching");
  auto tri = fractional_matching(3, {{0, 1}, {1, 2}, {0, 2}}, {1, 1, 1});
  bool tri_ok = std::abs(tri.value - 1.5) <= 1e-9;
  Rng g = make_rng(stream(cfg, 6));
  int bad = 0;
  json worst;
  double max_ratio = 0;
  for (int t = 0; t < 100; ++t) {
    int n = 2 + static_cast<int>(g() % 11);
    double p = 0.15 + 0.7 * uniform01(g);
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (uniform01(g) < p) edges.push_back({a, b});
    int nu = brute_matching(n, edges);
    int blossom = max_matching(n, edges);
    double star = fractional_matching(n, edges, std::vector<double>(n, 1.0)).value;
    bool ok = blossom == nu && nu <= star + 1e-9 && star <= 1.5 * nu + 1e-9;
    if (nu > 0) max_ratio = std::max(max_ratio, star / nu);
    if (!ok) {
      ++bad;
      worst = {{"n", n}, {"nu", nu}, {"blossom", blossom}, {"nu_star", star}};
    }
  }
  r.pass = tri_ok && bad == 0;
  r.measured = {{"triangle_nu_star", tri.value}, {"graphs", 100}, {"failures", bad}, {"max_nu_star_over_nu", max_ratio}};
  if (bad) r.measured["failure_example"] = worst;
  r.detail = "triangle nu* = " + std::to_string(tri.value) + ", max nu*/nu = " + std::to_string(max_ratio);
  return r;
}

// ---- 7 ----
CheckResult general_zeroset(const SuiteConfig& cfg) {
  CheckResult r = start(7, "general zero set");
  const int N = samples(cfg, 10000);
  auto two = FiniteMetricSpace(validate_metric({{0, 1}, {1, 0}}));
  auto d2 = general_zeroset_sampler(two, PointMeasure::counting(2), 1.0);
  long hits = 0;
  for (int i = 0; i < N; ++i) {
    auto Z = d2.draw_raw(stream(cfg, 7, i));
    bool x_in = std::binary_search(Z.begin(), Z.end(), 0);
    if (x_in && two.dist_to_set(1, Z) >= 1.0 / 8) ++hits;
  }
  double p2 = static_cast<double>(hits) / N;
  bool point_ok = std::abs(p2 - 0.25) <= 0.02;

  auto gr = grid(4, 2, 1);
  const auto& m = gr.space;
  auto mu = PointMeasure::counting(m.size());
  const double tau = 4;
  auto dist = general_zeroset_sampler(m, mu, tau);
  std::vector<PointSet> draws(N);
  parallel_for(N, [&](int i) { draws[i] = dist.draw(stream(cfg, 70, i)); });
  int n = m.size();
  long checked = 0, failed = 0;
  double min_slack = kInf;
  for (double lambda : {1.0 / 16, 1.0 / 8}) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (x == y || m.d(x, y) < tau) continue;
        long c = 0;
        for (const auto& Z : draws)
          if (std::binary_search(Z.begin(), Z.end(), x) && m.dist_to_set(y, Z) >= lambda * tau) ++c;
        double p = static_cast<double>(c) / N;
        double se = std::sqrt(p * (1 - p) / N);
        double bound = 0.25 * std::pow(mu.ball(m, y, 5 * tau / 8) / mu.ball(m, y, tau / 8), -8 * lambda);
        ++checked;
        min_slack = std::min(min_slack, p - (bound - 2 * se));
        if (p < bound - 2 * se) ++failed;
      }
  }
  r.pass = point_ok && failed == 0;
  r.measured = {{"draws", N}, {"two_point_p", p2}, {"envelope_pairs", checked}, {"envelope_failures", failed},
                {"min_slack", min_slack}};
  r.detail = "2-point p = " + std::to_string(p2) + ", envelope " + std::to_string(checked - failed) + "/" +
             std::to_string(checked) + " pairs";
  return r;
}

// ---- 8 ----
CheckResult mixer_constants(const SuiteConfig& cfg) {
  CheckResult r = start(8, "mixer constants");
  const int N = samples(cfg, 100000);
  long cyl = 0, sig = 0;
  long eta[3] = {0, 0, 0};
  for (int i = 0; i < N; ++i) {
    Rng g = make_rng(stream(cfg, 8, i));
    LazySelectors sel(g);
    const long n0 = 0;
    bool hit = sel.sigma(n0 - 2) == 0 && sel.sigma(n0 - 1) == 0 && sel.sigma(n0) == 0 && sel.eta(n0 - 2) == 2 &&
               sel.eta(n0 - 1) == 1 && sel.eta(n0) == 0;
    cyl += hit;
    sig += sel.sigma(n0);
    ++eta[sel.eta(n0)];
  }
  double pc = static_cast<double>(cyl) / N, ps = static_cast<double>(sig) / N;
  double pe[3];
  double worst_eta = 0;
  for (int j = 0; j < 3; ++j) {
    pe[j] = static_cast<double>(eta[j]) / N;
    worst_eta = std::max(worst_eta, std::abs(pe[j] - 1.0 / 3));
  }
  r.pass = std::abs(pc - 1.0 / 216) <= 0.003 && std::abs(ps - 0.5) <= 0.01 && worst_eta <= 0.01;
  r.measured = {{"draws", N}, {"cylinder", pc}, {"sigma_one", ps}, {"eta", {pe[0], pe[1], pe[2]}}};
  r.detail = "cylinder " + std::to_string(pc) + " (1/216 = " + std::to_string(1.0 / 216) + "), sigma " +
             std::to_string(ps);
  return r;
}

// ---- 9, 10: shared embedding runs ----
struct EmbedRun {
  std::string name;
  int n = 0;
  double distortion = 0, ratio = 0, theta = 0;
  int violations = 0;
};

struct FrechetRun {
  std::string name;
  int violations = 0;
};

struct EmbedCache {
  std::vector<EmbedRun> pipeline;
  std::vector<FrechetRun> frechet;
};

std::vector<std::pair<std::string, Instance>> embedding_instances() {
  return {{"cube2", hamming_cube(2)},      {"cube3", hamming_cube(3)},     {"cube4", hamming_cube(4)},
          {"cube5", hamming_cube(5)},      {"cube6", hamming_cube(6)},     {"grid4x4_l1", grid(4, 2, 1)},
          {"grid8x8_l1", grid(8, 2, 1)},   {"diamond1", diamond(1)},       {"diamond2", diamond(2)},
          {"diamond3", diamond(3)}};
}

const EmbedCache& embed_cache(const SuiteConfig& cfg) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, int>, EmbedCache> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(cfg.seed, static_cast<int>(cfg.level));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  EmbedCache c;
  auto insts = embedding_instances();
  for (size_t i = 0; i < insts.size(); ++i) {
    const auto& m = insts[i].second.space;
    EmbedConfig ec;
    ec.N = 512;
    auto res = euclidean_embed_pipeline(m, PointMeasure::counting(m.size()), EuclideanMap{}, ec, stream(cfg, 10, i));
    EmbedRun run{insts[i].first, m.size(), res.report.distortion,
                 res.report.distortion / std::sqrt(std::log(static_cast<double>(m.size()))), res.theta,
                 res.lipschitz_violations};
    c.pipeline.push_back(run);
    // Plain Frechet maps over general zero sets at every dyadic scale.
    auto [lo, hi] = scale_window(m);
    std::vector<PointSet> sets;
    for (int s = lo; s <= hi; ++s) {
      auto d = general_zeroset_sampler(m, PointMeasure::counting(m.size()), std::ldexp(1.0, s));
      for (int j = 0; j < 32; ++j) sets.push_back(d.draw(stream(cfg, 9, i * 4096 + (s - lo) * 64 + j)));
    }
    c.frechet.push_back({insts[i].first, lipschitz_violations(m, frechet_embed(m, sets))});
  }
  return cache.emplace(key, std::move(c)).first->second;
}

CheckResult frechet_lipschitz(const SuiteConfig& cfg) {
  CheckResult r = start(9, "Frechet 1-Lipschitz");
  const auto& c = embed_cache(cfg);
  long total = 0;
  json per = json::object();
  for (const auto& e : c.pipeline) {
    total += e.violations;
    per["pipeline_" + e.name] = e.violations;
  }
  for (const auto& e : c.frechet) {
    total += e.violations;
    per["general_" + e.name] = e.violations;
  }
  r.pass = total == 0;
  r.measured = {{"embeddings", c.pipeline.size() + c.frechet.size()}, {"violations", per}};
  r.detail = std::to_string(c.pipeline.size() + c.frechet.size()) + " embeddings, " + std::to_string(total) +
             " violating pairs";
  return r;
}

CheckResult end_to_end_embedding(const SuiteConfig& cfg) {
  CheckResult r = start(10, "end-to-end embedding");
  const auto& c = embed_cache(cfg);
  bool ok = true;
  double worst = 0;
  json per = json::object();
  for (const auto& e : c.pipeline) {
    per[e.name] = {{"n", e.n}, {"distortion", e.distortion}, {"ratio", e.ratio}, {"snowflake_theta", e.theta}};
    worst = std::max(worst, e.ratio);
    if (e.name == "cube2" && e.distortion < std::sqrt(2.0) - 1e-6) ok = false;
    if (e.name == "cube3" && e.distortion < std::sqrt(3.0) - 1e-6) ok = false;
  }
  r.pass = ok && worst <= kGoldenDistortionRatio;
  r.measured = {{"instances", per}, {"max_ratio", worst}, {"golden", kGoldenDistortionRatio}};
  r.detail = "max distortion/sqrt(ln n) = " + std::to_string(worst) + " (golden " +
             std::to_string(kGoldenDistortionRatio) + ")";
  return r;
}

// ---- 11 ----
CheckResult sparsest_cut(const SuiteConfig& cfg) {
  CheckResult r = start(11, "sparsest cut");
  const int T = 50;
  std::vector<double> sdp(T), opt(T), sweep(T);
  std::vector<char> conv(T);
  parallel_for(T, [&](int t) {
    auto inst = random_cut_instance(2 + t % 7, stream(cfg, 11, t));
    auto s = sdp_gl_solve(inst);
    sdp[t] = s.value;
    conv[t] = s.converged && negative_type_test_matrix(s.neg_type_metric).negative_type;
    opt[t] = brute_sparsest_cut(inst).value;
    sweep[t] = sweep_round_cut(inst, s.vectors).value;
  });
  int relax_fail = 0, round_fail = 0, unconverged = 0;
  double worst_gap = 1, worst_excess = -kInf;
  for (int t = 0; t < T; ++t) {
    worst_excess = std::max(worst_excess, sdp[t] - opt[t]);
    if (sdp[t] > opt[t] + 1e-4) ++relax_fail;
    if (sweep[t] < opt[t]) ++round_fail;
    if (!conv[t]) ++unconverged;
    double gap = opt[t] <= 1e-9 ? 1.0 : (sdp[t] > 0 ? opt[t] / sdp[t] : kInf);
    worst_gap = std::max(worst_gap, gap);
  }
  r.pass = relax_fail == 0 && round_fail == 0 && unconverged == 0 && worst_gap <= kGoldenCutGap;
  r.measured = {{"instances", T},          {"relaxation_failures", relax_fail}, {"rounding_failures", round_fail},
                {"unconverged", unconverged}, {"max_sdp_minus_opt", worst_excess},  {"max_gap", worst_gap},
                {"golden_gap", kGoldenCutGap}};
  r.detail = "max SDP - OPT = " + std::to_string(worst_excess) + ", max OPT/SDP = " + std::to_string(worst_gap);
  return r;
}

// ---- 12 ----
CheckResult duality_check(const SuiteConfig& cfg) {
  CheckResult r = start(12, "duality");
  const int T = 20;
  std::vector<double> mw(T), lp(T);
  std::vector<int> sizes(T);
  parallel_for(T, [&](int s) {
    Instance inst = s < 4 ? hamming_cube(2 + s % 2) : lp_cloud(4 + s % 5, 2 + s % 3, 2.0, stream(cfg, 12, s));
    const auto& m = inst.space;
    auto mu = PointMeasure::counting(m.size());
    auto sf = quasisymmetric_snowflake(m, QuasiParams{});
    PipelineParams pp;
    pp.quasi = sf.quasi;
    pp.tau = m.diameter() * (0.4 + 0.1 * (s % 4));
    SeparatedPairSampler base(m, mu, sf.map, pp, PairWeighting::uniform(m, pp.tau));
    DualityConfig dc;
    dc.mode = DualityConfig::ExactLP;
    dc.rounds = 2000;
    auto res = duality_solve(m, pp.tau, pipeline_factory(base), dc, stream(cfg, 120, s));
    mw[s] = res.mw_value;
    lp[s] = res.lp_value;
    sizes[s] = m.size();
  });
  double worst = 0;
  for (int s = 0; s < T; ++s) worst = std::max(worst, std::abs(mw[s] - lp[s]));
  r.pass = worst <= 0.05;
  r.measured = {{"instances", T}, {"sizes", sizes}, {"mw", mw}, {"lp", lp}, {"max_abs_gap", worst}};
  r.detail = "max |MW - LP| = " + std::to_string(worst);
  return r;
}

// ---- 13 ----
CheckResult line_functional(const SuiteConfig& cfg) {
  CheckResult r = start(13, "line functional");
  const double lo = std::sqrt(8.0) / 4, hi = 4 * std::sqrt(8.0);
  json ds = json::array();
  bool ok = true;
  for (int c = 0; c < 3; ++c) {
    Rng g = make_rng(stream(cfg, 13, c));
    std::vector<std::vector<double>> pts(64);
    for (auto& x : pts) x = gaussian_vector(g, 16);
    auto res = line_functional_embed(pts, {}, 2, 2, 50, stream(cfg, 130, c));
    ds.push_back(res.distortion);
    ok &= res.distortion >= lo && res.distortion <= hi;
  }
  r.pass = ok;
  r.measured = {{"distortions", ds}, {"window", {lo, hi}}};
  r.detail = "best-of-50 distortions " + ds.dump() + " in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
  return r;
}

// ---- 14 ----
CheckResult iso_soundness(const SuiteConfig& cfg) {
  CheckResult r = start(14, "isoperimetric soundness");
  std::vector<std::pair<std::string, Instance>> insts = {
      {"two_point", from_space(validate_metric({{0, 1}, {1, 0}}))},
      {"diamond1", diamond(1)},
      {"cube3", hamming_cube(3)},
      {"grid3x3_l1", grid(3, 2, 1)},
      {"diamond2", diamond(2)},
      {"expander12", expander_path_metric(12, 3, stream(cfg, 14, 1))},
      {"cloud10", lp_cloud(10, 3, 2.0, stream(cfg, 14, 2))},
      {"cloud14", lp_cloud(14, 2, 1.0, stream(cfg, 14, 3))}};
  int checked = 0, unsound = 0;
  json per = json::object();
  long k = 0;
  for (const auto& [name, inst] : insts) {
    const auto& m = inst.space;
    for (int weighted = 0; weighted < 2; ++weighted) {
      PointMeasure mu = PointMeasure::counting(m.size());
      if (weighted) {
        Rng g = make_rng(stream(cfg, 140, k));
        for (auto& w : mu.w) w = 0.2 + uniform01(g);
      }
      double dmin = m.min_distance(), diam = m.diameter();
      for (double t : {dmin / 2, dmin, 2 * dmin, diam / 4, diam / 2}) {
        auto dist = general_zeroset_sampler(m, mu, 4 * t);
        auto cert = iso_certificate(m, mu, dist, t, samples(cfg, 200), stream(cfg, 141, k++));
        double brute = brute_isoperimetric(m, mu, t);
        ++checked;
        if (cert.bound > brute) ++unsound;
      }
    }
  }
  // 2-point equality: Z = {x} always.
  auto two = validate_metric({{0, 1}, {1, 0}});
  ZeroSetDistribution fixed;
  fixed.construction = "fixed";
  fixed.draw = [](std::uint64_t) { return PointSet{0}; };
  double cert2 = iso_certificate(two, PointMeasure::counting(2), fixed, 0.5, 1, cfg.seed).bound;
  double brute2 = brute_isoperimetric(two, PointMeasure::counting(2), 0.5);
  r.pass = unsound == 0 && cert2 == 0.5 && brute2 == 0.5;
  r.measured = {{"cases", checked}, {"unsound", unsound}, {"two_point_certificate", cert2},
                {"two_point_brute", brute2}};
  r.detail = std::to_string(checked) + " cases, " + std::to_string(unsound) + " unsound; 2-point " +
             std::to_string(cert2) + " = " + std::to_string(brute2);
  return r;
}

}  // namespace

CheckResult run_check(int id, const SuiteConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    switch (id) {
      case 1: r = slab_marginal(cfg); break;
      case 2: r = tent_closed_form(cfg); break;
      case 3: r = deterministic_separation(cfg); break;
      case 4: r = layered_membership(cfg); break;
      case 5: r = matching_bound(cfg); break;
      case 6: r = fractional_matching_check(cfg); break;
      case 7: r = general_zeroset(cfg); break;
      case 8: r = mixer_constants(cfg); break;
      case 9: r = frechet_lipschitz(cfg); break;
      case 10: r = end_to_end_embedding(cfg); break;
      case 11: r = sparsest_cut(cfg); break;
      case 12: r = duality_check(cfg); break;
      case 13: r = line_functional(cfg); break;
      case 14: r = iso_soundness(cfg); break;
      default: throw Error(ErrorCode::BadParams, "no check " + std::to_string(id));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadParams && id > kCheckCount) throw;
    r.id = id;
    r.name = "check " + std::to_string(id);
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CheckResult> run_suite(const SuiteConfig& cfg) {
  std::vector<CheckResult> out;
  for (int id = 1; id <= kCheckCount; ++id) out.push_back(run_check(id, cfg));
  return out;
}

json to_json(const CheckResult& r) {
  return {{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"detail", r.detail},
          {"measured", r.measured}};
}

json suite_report(const std::vector<CheckResult>& results, const SuiteConfig& cfg) {
  json checks = json::array();
  int passed = 0;
  for (const auto& r : results) {
    checks.push_back(to_json(r));
    passed += r.pass;
  }
  return {{"schema_version", 1},
          {"kind", "verify_suite"},
          {"level", cfg.level == Level::Fast ? "fast" : "full"},
          {"seed", cfg.seed},
          {"passed", passed},
          {"total", results.size()},
          {"checks", checks}};
}

std::string summary_line(const CheckResult& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "[%s] %02d %-26s (%6.2f s)  ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds);
  return buf + r.detail;
}

}  // namespace zsk::verify
