// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <gtest/gtest.h>
#include <numbers>

#include "perfo/perforation.hpp"
#include "perfo/sliding_window.hpp"
#include "test_support.hpp"

namespace perfo {
namespace {

ScalarSeries series_of(std::vector<double> values) { return ScalarSeries{std::move(values), 0, "s"}; }

std::vector<double> sine(std::size_t n, double period) {
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = std::sin(2.0 * std::numbers::pi * t / period);
  return out;
}

TEST(SlidingWindow, DirectExample) {
  const PointCloud cloud = sliding_window_embed(series_of({1, 2, 3, 4, 5}), {3, 1, false});
  EXPECT_EQ(cloud, PointCloud::from_rows({{1, 2, 3}, {2, 3, 4}, {3, 4, 5}}));
}

TEST(SlidingWindow, Delay) {
  const PointCloud cloud = sliding_window_embed(series_of({1, 2, 3, 4, 5, 6}), {2, 3, false});
  EXPECT_EQ(cloud, PointCloud::from_rows({{1, 4}, {2, 5}, {3, 6}}));
}

TEST(SlidingWindow, PointCountIdentity) {
  for (std::size_t len = 1; len <= 30; ++len) {
    for (std::size_t d = 1; d <= 4; ++d) {
      for (std::size_t tau = 1; tau <= 5; ++tau) {
        const ScalarSeries s = series_of(sine(len, 7.0));
        const std::size_t span = (d - 1) * tau;
        if (len < span + 1) {
          EXPECT_PERFO_ERROR(sliding_window_embed(s, {d, tau, false}), ErrorCode::kSeriesTooShort);
        } else {
          const PointCloud cloud = sliding_window_embed(s, {d, tau, false});
          EXPECT_EQ(cloud.size(), len - span);
          EXPECT_EQ(cloud.dim(), d);
        }
      }
    }
  }
}

TEST(SlidingWindow, InvalidParameters) {
  EXPECT_PERFO_ERROR(sliding_window_embed(series_of({1, 2}), {0, 1, false}), ErrorCode::kInvalidArgument);
  EXPECT_PERFO_ERROR(sliding_window_embed(series_of({1, 2}), {1, 0, false}), ErrorCode::kInvalidArgument);
}

TEST(SlidingWindow, ConstantSeries) {
  const PointCloud cloud = sliding_window_embed(series_of(std::vector<double>(20, 2.5)), {3, 2, false});
  for (std::size_t i = 1; i < cloud.size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(cloud.point(i)[k], cloud.point(0)[k]);
  }
  TopologyConfig config;
  const PersistenceDiagram d = cloud_diagram(cloud, config);
  EXPECT_EQ(betti_at(d, 0.0).components, 1u);
  EXPECT_EQ(persistent_betti(d).counts, (std::vector<std::uint32_t>{0, 0}));
  EXPECT_EQ(measure_perforation(cloud, config).phi, 0.0);
}

TEST(SlidingWindow, ShiftEquivariance) {
  const std::vector<double> values = sine(40, 9.0);
  const WindowParams params{3, 2, false};
  const PointCloud base = sliding_window_embed(series_of(values), params);
  for (std::size_t shift = 1; shift < 10; ++shift) {
    const std::vector<double> shifted(values.begin() + shift, values.end());
    const PointCloud moved = sliding_window_embed(series_of(shifted), params);
    ASSERT_EQ(moved.size() + shift, base.size());
    for (std::size_t i = 0; i < moved.size(); ++i) {
      for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(moved.point(i)[k], base.point(i + shift)[k]);
    }
  }
}

TEST(SlidingWindow, ConstantOffsetLeavesPerforationUnchanged) {
  const std::vector<double> values = sine(50, 25.0);
  std::vector<double> raised = values;
  for (double& v : raised) v += 4.0;
  const WindowParams params{3, 4, false};
  TopologyConfig config;
  config.max_dim = 1;
  const double a = measure_perforation(sliding_window_embed(series_of(values), params), config).phi;
  const double b = measure_perforation(sliding_window_embed(series_of(raised), params), config).phi;
  EXPECT_EQ(a, b);
  // Exact offsets (powers of two on dyadic values) keep distances bit-identical too.
  std::vector<double> dyadic(30);
  for (std::size_t t = 0; t < dyadic.size(); ++t) dyadic[t] = static_cast<double>(t % 7) / 8.0;
  std::vector<double> dyadic_raised = dyadic;
  for (double& v : dyadic_raised) v += 16.0;
  const auto da = pairwise_distances(sliding_window_embed(series_of(dyadic), params));
  const auto db = pairwise_distances(sliding_window_embed(series_of(dyadic_raised), params));
  EXPECT_TRUE(std::equal(da.entries().begin(), da.entries().end(), db.entries().begin()));
}

TEST(SlidingWindow, ZNormalize) {
  const PointCloud cloud = sliding_window_embed(series_of({1, 2, 3, 4, 5}), {1, 1, true});
  double mean = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < 5; ++i) mean += cloud.point(i)[0] / 5.0;
  for (std::size_t i = 0; i < 5; ++i) sq += (cloud.point(i)[0] - mean) * (cloud.point(i)[0] - mean);
  EXPECT_NEAR(mean, 0.0, 1e-15);
  EXPECT_NEAR(sq / 4.0, 1.0, 1e-12);
  const PointCloud flat = sliding_window_embed(series_of({3, 3, 3}), {2, 1, true});
  EXPECT_EQ(flat, PointCloud::from_rows({{0, 0}, {0, 0}}));
}

TEST(SlidingWindow, TwoPeriodSineIsALoop) {
  TopologyConfig config;
  config.max_dim = 1;
  const PointCloud cloud = sliding_window_embed(series_of(sine(50, 25.0)), {3, 4, false});
  EXPECT_EQ(measure_perforation(cloud, config).source.counts, (std::vector<std::uint32_t>{1}));
}

TEST(SlidingWindow, OnePeriodSineEmbedsToAnOpenArc) {
  // Fifty samples of a single period with d = 3 and tau = 8 give 34 windows
  // whose start times cover 68% of the period, so the curve does not close.
  TopologyConfig config;
  config.max_dim = 1;
  const PointCloud cloud = sliding_window_embed(series_of(sine(50, 50.0)), {3, 8, false});
  ASSERT_EQ(cloud.size(), 34u);
  EXPECT_EQ(measure_perforation(cloud, config).source.counts, (std::vector<std::uint32_t>{0}));
}

TEST(PerDimension, ConstantMatrixIsZero) {
  const PointCloud matrix(4, std::vector<double>(50 * 4, 1.25));
  TopologyConfig config;
  config.max_dim = 1;
  const auto values = per_dimension_perforation(matrix, {3, 1, false}, config);
  ASSERT_EQ(values.size(), 4u);
  for (const auto& v : values) {
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(*v, 0.0);
  }
}

TEST(PerDimension, LoopingColumnAmongConstants) {
  const std::vector<double> wave = sine(50, 25.0);
  std::vector<double> coords;
  for (std::size_t t = 0; t < 50; ++t) {
    coords.push_back(wave[t]);
    coords.push_back(0.0);
    coords.push_back(-3.0);
  }
  TopologyConfig config;
  config.max_dim = 1;
  const auto values = per_dimension_perforation(PointCloud(3, coords), {3, 4, false}, config);
  ASSERT_EQ(values.size(), 3u);
  EXPECT_NEAR(values[0].value(), std::numbers::ln2, 1e-12);
  EXPECT_EQ(values[1].value(), 0.0);
  EXPECT_EQ(values[2].value(), 0.0);
}

TEST(PerDimension, ShortSeriesAreNull) {
  const PointCloud matrix = testing::random_cloud(4, 3, 1);
  const auto values = per_dimension_perforation(matrix, {3, 2, false}, TopologyConfig{});
  ASSERT_EQ(values.size(), 3u);
  for (const auto& v : values) EXPECT_FALSE(v.has_value());
}

TEST(PerDimension, PaperShape) {
  // A 50-token sentence with 450-dimensional states, d = 3: 450 clouds of 48 points.
  const PointCloud matrix = testing::random_cloud(50, 450, 7);
  for (std::size_t i = 0; i < matrix.dim(); ++i) {
    const ScalarSeries s = column_series(matrix, i);
    EXPECT_EQ(s.dimension, i);
    const PointCloud cloud = sliding_window_embed(s, {3, 1, false});
    EXPECT_EQ(cloud.size(), 48u);
    EXPECT_EQ(cloud.dim(), 3u);
  }
}

}  // namespace
}  // namespace perfo
