// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "perfo/geometry.hpp"
#include "perfo/perforation.hpp"

namespace perfo {

/// Values of one hidden-state coordinate as tokens are consumed.
struct ScalarSeries {
  std::vector<double> values;
  std::size_t dimension = 0;
  std::string sentence_id;
};

struct WindowParams {
  std::size_t d = 3;
  std::size_t tau = 1;
  bool z_normalize = false;  // standardise the series before embedding
};

/// Points (f(t), f(t+tau), ..., f(t+(d-1)tau)) for t = 0 .. len-(d-1)tau-1.
/// Throws SeriesTooShort when len < (d-1)tau + 1.
PointCloud sliding_window_embed(const ScalarSeries& series, const WindowParams& params);

/// Column i of a tokens x dims matrix (rows of the cloud are tokens).
ScalarSeries column_series(const PointCloud& state_matrix, std::size_t column);

/// Perforation of the delay embedding of every column. Columns too short to
/// embed yield nullopt rather than zero.
std::vector<std::optional<double>> per_dimension_perforation(const PointCloud& state_matrix,
                                                             const WindowParams& params,
                                                             const TopologyConfig& config);

}  // namespace perfo
