// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include "perfo/export.hpp"

#include <cmath>
#include <cstdio>
#include <map>

namespace perfo {

const char* tool_version() noexcept { return PERFO_VERSION_STRING; }

Json make_manifest(std::string_view kind, const Json& params) {
  Json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = tool_version();
  manifest["kind"] = std::string(kind);
  for (const auto& [key, value] : params.items()) manifest[key] = value;
  return manifest;
}

Json topology_params(const TopologyConfig& config) {
  Json params;
  params["metric"] = std::string(to_string(config.metric));
  params["max_dim"] = config.max_dim;
  if (config.max_epsilon) {
    params["max_epsilon"] = *config.max_epsilon;
  } else {
    params["max_epsilon"] = "diameter";
  }
  params["threshold"] = config.threshold;
  params["budget"] = config.budget;
  return params;
}

const std::vector<std::string>& required_manifest_keys(std::string_view kind) {
  static const std::map<std::string, std::vector<std::string>, std::less<>> table = {
      {"curve",
       {"tool", "version", "kind", "input", "layer", "metric", "max_dim", "max_epsilon", "threshold",
        "budget", "sample_size", "seed", "min_tokens", "skipped_short"}},
      {"barcode", {"tool", "version", "kind", "metric", "max_dim", "max_epsilon", "threshold", "budget"}},
      {"mapper",
       {"tool", "version", "kind", "lens", "resolution", "overlap", "linkage_epsilon", "output_dim",
        "pca_pre", "collapse_radius"}},
  };
  static const std::vector<std::string> none;
  const auto it = table.find(kind);
  return it == table.end() ? none : it->second;
}

std::vector<std::string> missing_manifest_keys(const Json& doc) {
  if (!doc.is_object() || !doc.contains("manifest") || !doc["manifest"].is_object()) {
    return {"manifest"};
  }
  const Json& manifest = doc["manifest"];
  if (!manifest.contains("kind") || !manifest["kind"].is_string()) return {"kind"};
  const auto& required = required_manifest_keys(manifest["kind"].get<std::string>());
  if (required.empty()) return {"kind"};
  std::vector<std::string> missing;
  for (const auto& key : required) {
    if (!manifest.contains(key) || manifest[key].is_null()) missing.push_back(key);
  }
  return missing;
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string barcode_json(const PersistenceDiagram& diagram, const Json& manifest) {
  Json doc;
  doc["manifest"] = manifest;
  Json bars = Json::array();
  for (const Bar& bar : diagram.bars) {
    Json entry;
    entry["dim"] = bar.dim;
    entry["birth"] = bar.birth;
    if (bar.infinite()) {
      entry["death"] = "inf";
    } else {
      entry["death"] = bar.death;
    }
    bars.push_back(std::move(entry));
  }
  doc["bars"] = std::move(bars);
  return doc.dump(2) + "\n";
}

std::string mapper_json(const MapperGraph& graph, const Json& manifest) {
  Json doc;
  doc["manifest"] = manifest;
  Json nodes = Json::array();
  for (const MapperNode& node : graph.nodes) {
    Json entry;
    entry["id"] = node.id;
    entry["box"] = node.box;
    entry["size"] = node.members.size();
    entry["members"] = node.members;
    entry["centroid"] = node.centroid;
    nodes.push_back(std::move(entry));
  }
  doc["nodes"] = std::move(nodes);
  doc["simplices"] = graph.simplices;
  return doc.dump(2) + "\n";
}

}  // namespace perfo
