#include "zsk/io.hpp"

#include <cmath>
#include <fstream>

namespace zsk::io {

namespace {

// JSON has no infinity; encode it as null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Matrix matrix_from(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::NotSquare, std::string(what) + " must be an array of rows");
  Matrix m;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(ErrorCode::NotSquare, std::string(what) + " rows must be arrays");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) throw Error(ErrorCode::NegativeEntry, std::string(what) + " entries must be numbers");
      r.push_back(v.get<double>());
    }
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::UsageError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::UsageError, path + ": " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::UsageError, "cannot write " + path);
  out << j.dump(2) << "\n";
}

json to_json(const Instance& inst) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["ids"] = inst.space.ids();
  j["dist"] = inst.space.dist();
  if (inst.coords) j["coords"] = inst.coords->coords;
  if (inst.measure) j["measure"] = inst.measure->w;
  return j;
}

Instance instance_from_json(const json& j) {
  if (!j.contains("dist")) throw Error(ErrorCode::NotSquare, "instance has no dist matrix");
  std::vector<std::string> ids;
  if (j.contains("ids"))
    for (const auto& v : j["ids"]) ids.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  Instance inst;
  inst.space = validate_metric(matrix_from(j["dist"], "dist"), ids);
  if (j.contains("coords") && !j["coords"].is_null()) {
    EuclideanMap f;
    f.coords = matrix_from(j["coords"], "coords");
    if (f.size() != inst.space.size()) throw Error(ErrorCode::DimensionMismatch, "coords rows");
    f.dim = f.coords.empty() ? 0 : static_cast<int>(f.coords[0].size());
    inst.coords = f;
  }
  if (j.contains("measure") && !j["measure"].is_null()) {
    PointMeasure mu{j["measure"].get<std::vector<double>>()};
    mu.validate(inst.space.size());
    inst.measure = mu;
  }
  return inst;
}

json to_json(const ThresholdedGraph& g, const CompatibilityCertificate* cert) {
  json j;
  j["n"] = g.n;
  json edges = json::array();
  for (auto [a, b] : g.edges) edges.push_back({a, b});
  j["edges"] = edges;
  j["sigma"] = g.sigma;
  if (cert) {
    json d = json::array();
    for (double v : cert->Delta) d.push_back(num(v));
    j["cert"] = {{"C", cert->C}, {"Delta", d}, {"K", cert->K}};
  }
  return j;
}

ThresholdedGraph graph_from_json(const json& j) {
  ThresholdedGraph g;
  g.n = j.at("n").get<int>();
  for (const auto& e : j.at("edges")) {
    int a = e.at(0).get<int>(), b = e.at(1).get<int>();
    if (a < 0 || b < 0 || a >= g.n || b >= g.n) throw Error(ErrorCode::DimensionMismatch, "edge endpoint");
    g.edges.push_back({std::min(a, b), std::max(a, b)});
  }
  if (j.contains("sigma")) g.sigma = j["sigma"].get<std::vector<double>>();
  return g;
}

json to_json(const CompressionOutput& c) {
  json j;
  j["tau"] = c.tau;
  j["zeta"] = c.zeta;
  j["q"] = c.q;
  j["rho"] = c.rho;
  j["rho_tilde"] = c.rho_tilde;
  j["theta"] = c.theta;
  j["component"] = c.component;
  j["graph"] = to_json(c.graph, &c.cert);
  json nets = json::array();
  for (const auto& s : c.nets) nets.push_back({{"levels", s.levels}, {"nets", s.nets}, {"domain", s.domain}});
  j["nets"] = nets;
  return j;
}

json to_json(const EuclideanMap& f) { return {{"dim", f.dim}, {"coords", f.coords}}; }

EuclideanMap map_from_json(const json& j) {
  EuclideanMap f;
  f.coords = matrix_from(j.at("coords"), "coords");
  f.dim = j.contains("dim") ? j["dim"].get<int>() : (f.coords.empty() ? 0 : static_cast<int>(f.coords[0].size()));
  for (const auto& row : f.coords)
    if (static_cast<int>(row.size()) != f.dim) throw Error(ErrorCode::DimensionMismatch, "coordinate row length");
  return f;
}

json to_json(const EmbeddingReport& r) {
  json j{{"lipschitz", num(r.lipschitz)},
         {"inverse_lipschitz", num(r.inverse_lipschitz)},
         {"distortion", num(r.distortion)},
         {"contraction_witness", {r.contraction_witness_i, r.contraction_witness_j}}};
  if (r.p_average) j["p_average"] = num(*r.p_average);
  if (r.p) j["p"] = *r.p;
  return j;
}

json embedding_json(const EuclideanMap& f, const EmbeddingReport& r, const json& provenance) {
  json j = report("embedding", {{"dim", f.dim}, {"coords", f.coords}});
  j["report"] = to_json(r);
  j["provenance"] = provenance;
  return j;
}

json zeroset_json(const ZeroSetDistribution& d, std::uint64_t seed, const std::vector<PointSet>& draws) {
  json params = json::object();
  for (const auto& [k, v] : d.params) params[k] = num(v);
  return report("zeroset", {{"construction", d.construction}, {"params", params}, {"seed", seed}, {"draws", draws}});
}

json to_json(const SparsestCutInstance& inst) {
  return {{"schema_version", kSchemaVersion}, {"capacities", inst.capacities}, {"demands", inst.demands}};
}

SparsestCutInstance cut_instance_from_json(const json& j) {
  if (!j.contains("capacities") || !j.contains("demands"))
    throw Error(ErrorCode::NotSquare, "cut instance needs capacities and demands");
  SparsestCutInstance inst;
  inst.capacities = matrix_from(j["capacities"], "capacities");
  inst.demands = matrix_from(j["demands"], "demands");
  inst.n = static_cast<int>(inst.capacities.size());
  inst.validate();
  return inst;
}

std::uint64_t cut_mask(const std::vector<char>& S) {
  std::uint64_t m = 0;
  for (size_t i = 0; i < S.size() && i < 64; ++i)
    if (S[i]) m |= std::uint64_t{1} << i;
  return m;
}

json report(const std::string& kind, json body) {
  json j{{"schema_version", kSchemaVersion}, {"kind", kind}};
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

}  // namespace zsk::io
