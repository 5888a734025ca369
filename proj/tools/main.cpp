#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "verify.hpp"
#include "zsk/applications.hpp"
#include "zsk/descent.hpp"
#include "zsk/io.hpp"

using namespace zsk;
using io::json;

namespace {

struct Options {
  std::uint64_t seed = 1;
  std::string in, out;

  // gen
  std::string family;
  GenParams gen;

  // embed
  bool neg_type = false;
  std::string map_path;
  int N = 512;
  double s = 0.25, eps = 0.5;

  // zeroset / iso
  double tau = 0, t = 0;
  int draws = 100, samples = 200;
  bool brute = false;

  // sparsest-cut
  int random_n = 0;

  // line-embed
  double p = 2, q = 2;
  int candidates = 50;

  std::string level = "fast";
  std::uint64_t suite_seed = verify::SuiteConfig{}.seed;
};

void emit(const Options& o, const json& j) {
  if (o.out.empty())
    std::cout << j.dump(2) << "\n";
  else
    io::write_file(o.out, j);
}

Instance load_instance(const Options& o) {
  if (o.in.empty()) throw Error(ErrorCode::UsageError, "--in is required");
  return io::instance_from_json(io::read_file(o.in));
}

PointMeasure measure_of(const Instance& inst) {
  return inst.measure ? *inst.measure : PointMeasure::counting(inst.space.size());
}

int cmd_gen(const Options& o) {
  Instance inst = generate_instance(o.family, o.gen, o.seed);
  json j = io::to_json(inst);
  j["kind"] = "instance";
  j["family"] = o.family;
  j["seed"] = o.seed;
  emit(o, j);
  return 0;
}

int cmd_validate(const Options& o) {
  Instance inst = load_instance(o);
  auto nt = negative_type_test(inst.space);
  emit(o, io::report("validation", {{"valid", true},
                                    {"n", inst.space.size()},
                                    {"diameter", inst.space.diameter()},
                                    {"min_distance", inst.space.min_distance()},
                                    {"negative_type", nt.negative_type},
                                    {"schoenberg_min_eigenvalue", nt.min_eigenvalue}}));
  return 0;
}

int cmd_embed(const Options& o) {
  Instance inst = load_instance(o);
  const auto& m = inst.space;
  EuclideanMap phi;
  std::string source = "largest_snowflake";
  if (o.neg_type) {
    phi = snowflake_embed(m, 0.5);
    source = "half_snowflake";
  } else if (!o.map_path.empty()) {
    phi = io::map_from_json(io::read_file(o.map_path));
    if (phi.size() != m.size()) throw Error(ErrorCode::DimensionMismatch, "map has wrong number of points");
    source = "map_file";
  }
  EmbedConfig cfg;
  cfg.N = o.N;
  cfg.pipeline.quasi = QuasiParams{o.s, o.eps};
  auto res = euclidean_embed_pipeline(m, measure_of(inst), phi, cfg, o.seed);
  json prov{{"seed", o.seed},
            {"N", o.N},
            {"phi", source},
            {"scales", {res.n_lo, res.n_hi}},
            {"a", res.a},
            {"b", res.b},
            {"beta", res.beta},
            {"beta_clamped", res.beta_clamped},
            {"quasi", {{"s", res.quasi.s}, {"eps", res.quasi.eps}}},
            {"lipschitz_violations", res.lipschitz_violations}};
  if (res.theta > 0) prov["snowflake_theta"] = res.theta;
  json j = io::embedding_json(res.map, res.report, prov);
  j["distortion_over_sqrt_log_n"] =
      m.size() > 1 ? res.report.distortion / std::sqrt(std::log(static_cast<double>(m.size()))) : 0.0;
  emit(o, j);
  return 0;
}

int cmd_zeroset(const Options& o) {
  Instance inst = load_instance(o);
  double tau = o.tau > 0 ? o.tau : inst.space.diameter() / 2;
  auto dist = general_zeroset_sampler(inst.space, measure_of(inst), tau);
  std::vector<PointSet> draws(o.draws);
  for (int i = 0; i < o.draws; ++i) draws[i] = dist.draw(derive(o.seed, label_of("cli-zeroset"), i));
  emit(o, io::zeroset_json(dist, o.seed, draws));
  return 0;
}

int cmd_sparsest_cut(const Options& o) {
  SparsestCutInstance inst;
  if (o.random_n > 0)
    inst = random_cut_instance(o.random_n, o.seed);
  else if (!o.in.empty())
    inst = io::cut_instance_from_json(io::read_file(o.in));
  else
    throw Error(ErrorCode::UsageError, "give --in or --random");
  auto sdp = sdp_gl_solve(inst);
  require_converged(sdp);
  auto sweep = sweep_round_cut(inst, sdp.vectors);
  json j = io::report("sparsest_cut", {{"n", inst.n},
                                       {"sdp_value", sdp.value},
                                       {"iterations", sdp.iterations},
                                       {"max_violation", sdp.max_violation},
                                       {"rounded_ratio", sweep.value},
                                       {"rounded_cut", sweep.S}});
  if (inst.n <= 20) {
    auto opt = brute_sparsest_cut(inst);
    j["opt"] = opt.value;
    j["opt_cut"] = opt.S;
    j["gap"] = sdp.value > 0 ? opt.value / sdp.value : 1.0;
  }
  if (o.random_n > 0) j["instance"] = io::to_json(inst);
  emit(o, j);
  return 0;
}

int cmd_iso(const Options& o) {
  Instance inst = load_instance(o);
  if (!(o.t > 0)) throw Error(ErrorCode::BadParams, "--t must be positive");
  auto mu = measure_of(inst);
  double tau = o.tau > 0 ? o.tau : 4 * o.t;
  auto dist = general_zeroset_sampler(inst.space, mu, tau);
  auto cert = iso_certificate(inst.space, mu, dist, o.t, o.samples, o.seed);
  json j = io::report("iso", {{"t", o.t}, {"tau", tau}, {"samples", o.samples}, {"bound", cert.bound},
                              {"witness", cert.witness}});
  if (o.brute) j["brute"] = brute_isoperimetric(inst.space, mu, o.t);
  emit(o, j);
  return 0;
}

int cmd_line_embed(const Options& o) {
  if (o.in.empty()) throw Error(ErrorCode::UsageError, "--in is required");
  json in = io::read_file(o.in);
  std::vector<std::vector<double>> pts;
  std::vector<double> mu;
  if (in.contains("points"))
    pts = in["points"].get<std::vector<std::vector<double>>>();
  else
    pts = io::instance_from_json(in).coords.value_or(EuclideanMap{}).coords;
  if (pts.empty()) throw Error(ErrorCode::TooSmall, "no points (give \"points\" or an instance with coords)");
  if (in.contains("measure") && !in["measure"].is_null()) mu = in["measure"].get<std::vector<double>>();
  auto res = line_functional_embed(pts, mu, o.p, o.q, o.candidates, o.seed);
  emit(o, io::report("line_embed", {{"p", o.p},
                                    {"q", o.q},
                                    {"candidates", o.candidates},
                                    {"distortion", res.distortion},
                                    {"candidate_distortions", res.candidate_distortions},
                                    {"functional", {{"u", res.best.u}, {"scale", res.best.scale}}}}));
  return 0;
}

int cmd_verify(const Options& o) {
  verify::SuiteConfig cfg;
  cfg.level = o.level == "full" ? verify::Level::Full : verify::Level::Fast;
  cfg.seed = o.suite_seed;
  std::vector<verify::CheckResult> results;
  for (int id = 1; id <= verify::kCheckCount; ++id) {
    results.push_back(verify::run_check(id, cfg));
    std::cerr << verify::summary_line(results.back()) << "\n";
  }
  emit(o, verify::suite_report(results, cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zsk: random zero sets, compression and Euclidean embeddings of finite metric spaces"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c, bool needs_in) {
    c->add_option("--seed", o.seed, "master seed");
    c->add_option("--out", o.out, "output JSON path (stdout when omitted)");
    if (needs_in) c->add_option("--in", o.in, "input instance JSON")->check(CLI::ExistingFile);
  };

  auto* gen = app.add_subcommand("gen", "generate an instance");
  common(gen, false);
  gen->add_option("--family", o.family, "hamming_cube | lp_cloud | diamond | expander_path_metric | grid")
      ->required()
      ->check(CLI::IsMember({"hamming_cube", "lp_cloud", "diamond", "expander_path_metric", "expander", "grid"}));
  gen->add_option("--dim", o.gen.dim);
  gen->add_option("--n", o.gen.n);
  gen->add_option("--p", o.gen.p);
  gen->add_option("--level", o.gen.level);
  gen->add_option("--degree", o.gen.degree);
  gen->add_option("--side", o.gen.side);

  auto* val = app.add_subcommand("validate", "check the metric axioms of an instance");
  common(val, true);

  auto* emb = app.add_subcommand("embed", "measured-descent Euclidean embedding");
  common(emb, true);
  auto* nt = emb->add_flag("--neg-type", o.neg_type, "the space has negative type; use the 1/2-snowflake");
  emb->add_option("--map", o.map_path, "JSON with coords of a quasisymmetric map")
      ->check(CLI::ExistingFile)
      ->excludes(nt);
  emb->add_option("--N", o.N, "number of zero-set coordinates")->check(CLI::PositiveNumber);
  emb->add_option("--s", o.s)->check(CLI::Range(0.0, 1.0));
  emb->add_option("--eps", o.eps)->check(CLI::Range(0.0, 1.0));

  auto* zs = app.add_subcommand("zeroset", "draw general random zero sets");
  common(zs, true);
  zs->add_option("--tau", o.tau, "scale (default diameter / 2)")->check(CLI::PositiveNumber);
  zs->add_option("--draws", o.draws)->check(CLI::PositiveNumber);

  auto* sc = app.add_subcommand("sparsest-cut", "Goemans-Linial SDP with sweep rounding");
  common(sc, true);
  sc->add_option("--random", o.random_n, "solve a random instance on n points instead")->check(CLI::Range(2, 40));

  auto* iso = app.add_subcommand("iso", "isoperimetric lower bound from zero sets");
  common(iso, true);
  iso->add_option("--t", o.t)->required()->check(CLI::PositiveNumber);
  iso->add_option("--tau", o.tau, "zero-set scale (default 4t)")->check(CLI::PositiveNumber);
  iso->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  iso->add_flag("--brute", o.brute, "also compute the exact value (|M| <= 20)");

  auto* le = app.add_subcommand("line-embed", "best random line functional from l_q^n");
  common(le, true);
  le->add_option("--p", o.p)->check(CLI::Range(1.0, 1e9));
  le->add_option("--q", o.q)->check(CLI::Range(1.0, 1e9));
  le->add_option("--candidates", o.candidates)->check(CLI::PositiveNumber);

  auto* vs = app.add_subcommand("verify-suite", "run the acceptance checks");
  vs->add_option("--seed", o.suite_seed, "master seed");
  vs->add_option("--out", o.out, "output JSON path (stdout when omitted)");
  vs->add_option("--level", o.level)->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*gen) return cmd_gen(o);
    if (*val) return cmd_validate(o);
    if (*emb) return cmd_embed(o);
    if (*zs) return cmd_zeroset(o);
    if (*sc) return cmd_sparsest_cut(o);
    if (*iso) return cmd_iso(o);
    if (*le) return cmd_line_embed(o);
    if (*vs) return cmd_verify(o);
  } catch (const Error& e) {
    std::cerr << "zsk: " << e.what() << "\n";
    if (e.code() == ErrorCode::UsageError) return 1;
    return is_validation_error(e.code()) ? 2 : 3;
  } catch (const json::exception& e) {
    std::cerr << "zsk: malformed JSON: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
