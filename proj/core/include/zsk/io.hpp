#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "zsk/applications.hpp"
#include "zsk/compression.hpp"
#include "zsk/descent.hpp"
#include "zsk/graph.hpp"
#include "zsk/metric.hpp"
#include "zsk/zeroset.hpp"

namespace zsk::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

json to_json(const Instance& inst);
// Validates the metric axioms; coords and measure are optional.
Instance instance_from_json(const json& j);

json to_json(const ThresholdedGraph& g, const CompatibilityCertificate* cert = nullptr);
ThresholdedGraph graph_from_json(const json& j);
json to_json(const CompressionOutput& c);

json to_json(const EuclideanMap& f);
EuclideanMap map_from_json(const json& j);
json to_json(const EmbeddingReport& r);
json embedding_json(const EuclideanMap& f, const EmbeddingReport& r, const json& provenance);

json zeroset_json(const ZeroSetDistribution& d, std::uint64_t seed, const std::vector<PointSet>& draws);

json to_json(const SparsestCutInstance& inst);
SparsestCutInstance cut_instance_from_json(const json& j);
// Bit i set iff point i lies in S.
std::uint64_t cut_mask(const std::vector<char>& S);

// {"schema_version": 1, "kind": kind, ...body}
json report(const std::string& kind, json body);

}  // namespace zsk::io
