// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include "perfo/sliding_window.hpp"

#include <cmath>
#include <numeric>

#include "perfo/error.hpp"

namespace perfo {

PointCloud sliding_window_embed(const ScalarSeries& series, const WindowParams& params) {
  if (params.d < 1 || params.tau < 1) {
    throw Error(ErrorCode::kInvalidArgument, "window dimension and delay must be >= 1");
  }
  const std::size_t span = (params.d - 1) * params.tau;
  const std::size_t len = series.values.size();
  if (len < span + 1) {
    throw Error(ErrorCode::kSeriesTooShort,
                "series of length " + std::to_string(len) + " needs at least " +
                    std::to_string(span + 1) + " values for d=" + std::to_string(params.d) +
                    ", tau=" + std::to_string(params.tau));
  }

  std::vector<double> values = series.values;
  if (params.z_normalize && len > 1) {
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(len);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(len - 1));
    for (double& v : values) v = sd > 0.0 ? (v - mean) / sd : 0.0;
  }

  const std::size_t count = len - span;
  std::vector<double> coords;
  coords.reserve(count * params.d);
  for (std::size_t t = 0; t < count; ++t) {
    for (std::size_t k = 0; k < params.d; ++k) coords.push_back(values[t + k * params.tau]);
  }
  return PointCloud(params.d, std::move(coords));
}

ScalarSeries column_series(const PointCloud& state_matrix, std::size_t column) {
  ScalarSeries series;
  series.dimension = column;
  series.values.reserve(state_matrix.size());
  for (std::size_t t = 0; t < state_matrix.size(); ++t) {
    series.values.push_back(state_matrix.point(t)[column]);
  }
  return series;
}

std::vector<std::optional<double>> per_dimension_perforation(const PointCloud& state_matrix,
                                                             const WindowParams& params,
                                                             const TopologyConfig& config) {
  std::vector<std::optional<double>> out;
  out.reserve(state_matrix.dim());
  for (std::size_t i = 0; i < state_matrix.dim(); ++i) {
    const ScalarSeries series = column_series(state_matrix, i);
    PointCloud embedded;
    try {
      embedded = sliding_window_embed(series, params);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSeriesTooShort) throw;
      out.emplace_back(std::nullopt);
      continue;
    }
    out.emplace_back(measure_perforation(embedded, config).phi);
  }
  return out;
}

}  // namespace perfo
