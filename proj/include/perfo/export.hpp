// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "perfo/mapper.hpp"
#include "perfo/perforation.hpp"
#include "perfo/persistence.hpp"

namespace perfo {

// Insertion-ordered so exports are byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "perfo";
const char* tool_version() noexcept;

/// {"tool", "version", "kind"} followed by `params`.
Json make_manifest(std::string_view kind, const Json& params);

/// metric, max_dim, max_epsilon ("diameter" or a number), threshold, budget.
Json topology_params(const TopologyConfig& config);

/// Keys a manifest of the given kind must carry ("curve", "barcode",
/// "mapper"); empty for unknown kinds.
const std::vector<std::string>& required_manifest_keys(std::string_view kind);

/// Names of required keys absent from doc["manifest"]; a missing manifest or
/// kind is reported as such.
std::vector<std::string> missing_manifest_keys(const Json& doc);

/// Number formatted with 17 significant digits ("nan"/"inf" spelled out).
std::string format_real(double value);

/// {"manifest": ..., "bars": [{"dim", "birth", "death"}]} with death "inf"
/// for infinite bars; bars in (dim, birth, death) order.
std::string barcode_json(const PersistenceDiagram& diagram, const Json& manifest);

/// {"manifest": ..., "nodes": [{"id", "box", "size", "members",
/// "centroid"}], "simplices": [[ids]]}
std::string mapper_json(const MapperGraph& graph, const Json& manifest);

}  // namespace perfo
