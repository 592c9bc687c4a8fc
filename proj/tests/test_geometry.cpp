// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Dense>
#include <cmath>
#include <gtest/gtest.h>

#include "perfo/geometry.hpp"
#include "perfo/perforation.hpp"
#include "test_support.hpp"

namespace perfo {
namespace {

using testing::random_cloud;

TEST(PointCloud, RejectsBadInput) {
  EXPECT_PERFO_ERROR(PointCloud(0, {}), ErrorCode::kInvalidArgument);
  EXPECT_PERFO_ERROR(PointCloud(2, {1.0, 2.0, 3.0}), ErrorCode::kInvalidArgument);
  EXPECT_PERFO_ERROR(PointCloud(1, {1.0, NAN}), ErrorCode::kNonFiniteValue);
  EXPECT_PERFO_ERROR(PointCloud(1, {1.0, INFINITY}), ErrorCode::kNonFiniteValue);
  EXPECT_PERFO_ERROR(PointCloud(1, {1.0, 2.0}, {7}), ErrorCode::kInvalidArgument);
  EXPECT_PERFO_ERROR(PointCloud::from_rows({{1.0, 2.0}, {3.0}}), ErrorCode::kInvalidArgument);
}

TEST(PointCloud, FromRows) {
  const PointCloud cloud = PointCloud::from_rows({{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}});
  EXPECT_EQ(cloud.size(), 3u);
  EXPECT_EQ(cloud.dim(), 2u);
  EXPECT_EQ(cloud.point(2)[1], 6.0);
}

TEST(PairwiseDistances, PythagoreanPair) {
  const auto dist = pairwise_distances(PointCloud::from_rows({{0.0, 0.0}, {3.0, 4.0}}));
  EXPECT_EQ(dist(0, 1), 5.0);
  EXPECT_EQ(dist(1, 0), 5.0);
}

TEST(PairwiseDistances, SinglePoint) {
  const auto dist = pairwise_distances(PointCloud::from_rows({{1.5, -2.0, 3.0}}));
  ASSERT_EQ(dist.size(), 1u);
  EXPECT_EQ(dist(0, 0), 0.0);
}

TEST(PairwiseDistances, EmptyCloudRejected) {
  EXPECT_PERFO_ERROR(pairwise_distances(PointCloud(2, {})), ErrorCode::kInvalidArgument);
}

TEST(PairwiseDistances, MatchesDoubleLoop) {
  const PointCloud cloud = random_cloud(10, 5, 11);
  const auto dist = pairwise_distances(cloud);
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = 0; j < 10; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < 5; ++k) {
        const double diff = cloud.point(i)[k] - cloud.point(j)[k];
        sum += diff * diff;
      }
      EXPECT_NEAR(dist(i, j), std::sqrt(sum), 1e-12);
    }
    EXPECT_EQ(dist(i, i), 0.0);
  }
}

TEST(PairwiseDistances, SymmetricExactly) {
  const auto dist = pairwise_distances(random_cloud(15, 4, 3));
  for (std::size_t i = 0; i < 15; ++i) {
    for (std::size_t j = 0; j < 15; ++j) EXPECT_EQ(dist(i, j), dist(j, i));
  }
}

TEST(PairwiseDistances, TriangleInequality) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto dist = pairwise_distances(random_cloud(12, 1 + seed % 4, seed));
    const std::size_t n = dist.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          EXPECT_LE(dist(i, k), dist(i, j) + dist(j, k) + 1e-9);
        }
      }
    }
  }
}

TEST(PairwiseDistances, Cosine) {
  const PointCloud cloud = PointCloud::from_rows({{1.0, 0.0}, {0.0, 2.0}, {-3.0, 0.0}, {2.0, 0.0}});
  const auto dist = pairwise_distances(cloud, Metric::kCosine);
  EXPECT_NEAR(dist(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(dist(0, 2), 2.0, 1e-15);
  EXPECT_NEAR(dist(0, 3), 0.0, 1e-15);
  for (double v : dist.entries()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 2.0);
  }
}

TEST(PairwiseDistances, CosineZeroVector) {
  const PointCloud cloud = PointCloud::from_rows({{1.0, 0.0}, {0.0, 0.0}});
  EXPECT_PERFO_ERROR(pairwise_distances(cloud, Metric::kCosine), ErrorCode::kZeroVector);
}

TEST(Metric, ParseRoundTrip) {
  EXPECT_EQ(parse_metric("euclidean"), Metric::kEuclidean);
  EXPECT_EQ(parse_metric(to_string(Metric::kCosine)), Metric::kCosine);
  EXPECT_PERFO_ERROR(parse_metric("manhattan"), ErrorCode::kInvalidArgument);
}

TEST(DistanceMatrix, FromEntriesValidates) {
  EXPECT_PERFO_ERROR(DistanceMatrix::from_entries(2, {0, 1, 2, 0}), ErrorCode::kInvalidArgument);
  EXPECT_PERFO_ERROR(DistanceMatrix::from_entries(2, {1, 1, 1, 0}), ErrorCode::kInvalidArgument);
  EXPECT_PERFO_ERROR(DistanceMatrix::from_entries(2, {0, -1, -1, 0}), ErrorCode::kInvalidArgument);
  EXPECT_PERFO_ERROR(DistanceMatrix::from_entries(2, {0, 1, 1}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(DistanceMatrix::from_entries(2, {0, 3, 3, 0}).diameter(), 3.0);
}

TEST(SampleShape, CircleOnUnitCircle) {
  const PointCloud cloud = sample_shape(ShapeKind::kCircle, 100, {}, 0.0, 5);
  ASSERT_EQ(cloud.size(), 100u);
  ASSERT_EQ(cloud.dim(), 2u);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    EXPECT_NEAR(std::hypot(cloud.point(i)[0], cloud.point(i)[1]), 1.0, 1e-12);
  }
}

TEST(SampleShape, Deterministic) {
  for (ShapeKind kind : {ShapeKind::kCircle, ShapeKind::kSphere, ShapeKind::kTorus,
                         ShapeKind::kGaussianBlob}) {
    EXPECT_EQ(sample_shape(kind, 50, {}, 0.1, 42), sample_shape(kind, 50, {}, 0.1, 42));
    EXPECT_NE(sample_shape(kind, 50, {}, 0.1, 42), sample_shape(kind, 50, {}, 0.1, 43));
  }
}

TEST(SampleShape, SphereAndTorusOnManifold) {
  ShapeParams params;
  params.radius = 2.5;
  const PointCloud sphere = sample_shape(ShapeKind::kSphere, 200, params, 0.0, 1);
  ASSERT_EQ(sphere.dim(), 3u);
  for (std::size_t i = 0; i < sphere.size(); ++i) {
    const auto p = sphere.point(i);
    EXPECT_NEAR(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]), 2.5, 1e-12);
  }
  const PointCloud torus = sample_shape(ShapeKind::kTorus, 200, {}, 0.0, 1);
  ASSERT_EQ(torus.dim(), 3u);
  for (std::size_t i = 0; i < torus.size(); ++i) {
    const auto p = torus.point(i);
    const double ring = std::hypot(p[0], p[1]) - 2.0;
    EXPECT_NEAR(ring * ring + p[2] * p[2], 0.25, 1e-12);
  }
}

TEST(SampleShape, NoiseStaysNearManifold) {
  const PointCloud cloud = sample_shape(ShapeKind::kCircle, 500, {}, 0.01, 9);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    // Two-dimensional Gaussian offset; 6 sigma per axis bounds it in practice.
    EXPECT_LT(std::abs(std::hypot(cloud.point(i)[0], cloud.point(i)[1]) - 1.0), 0.085);
  }
}

TEST(SampleShape, BlobDimension) {
  ShapeParams params;
  params.dim = 7;
  EXPECT_EQ(sample_shape(ShapeKind::kGaussianBlob, 10, params, 0.0, 0).dim(), 7u);
}

TEST(SampleShape, InvalidParams) {
  ShapeParams bad;
  bad.radius = 0.0;
  EXPECT_PERFO_ERROR(sample_shape(ShapeKind::kCircle, 10, bad, 0.0, 0), ErrorCode::kInvalidShapeParams);
  EXPECT_PERFO_ERROR(sample_shape(ShapeKind::kSphere, 10, bad, 0.0, 0), ErrorCode::kInvalidShapeParams);
  ShapeParams fat;
  fat.major_radius = 0.5;
  fat.minor_radius = 0.5;
  EXPECT_PERFO_ERROR(sample_shape(ShapeKind::kTorus, 10, fat, 0.0, 0), ErrorCode::kInvalidShapeParams);
  ShapeParams flat;
  flat.dim = 0;
  EXPECT_PERFO_ERROR(sample_shape(ShapeKind::kGaussianBlob, 10, flat, 0.0, 0),
                     ErrorCode::kInvalidShapeParams);
  EXPECT_PERFO_ERROR(sample_shape(ShapeKind::kCircle, 0, {}, 0.0, 0), ErrorCode::kInvalidArgument);
  EXPECT_PERFO_ERROR(sample_shape(ShapeKind::kCircle, 10, {}, -1.0, 0), ErrorCode::kInvalidArgument);
}

TEST(SampleShape, CircleHasOnePersistentLoop) {
  for (std::size_t n : {20u, 35u, 60u, 100u}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const PointCloud cloud = sample_shape(ShapeKind::kCircle, n, {}, 0.0, seed);
      TopologyConfig config;
      config.max_dim = 1;
      const auto value = measure_perforation(cloud, config);
      ASSERT_EQ(value.source.counts.size(), 1u);
      EXPECT_EQ(value.source.counts[0], 1u) << "n=" << n << " seed=" << seed;
    }
  }
}

// Distance matrix of a cloud as a dense Eigen matrix.
Eigen::MatrixXd distances_of(const PointCloud& cloud) {
  const auto dist = pairwise_distances(cloud);
  Eigen::MatrixXd out(dist.size(), dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    for (std::size_t j = 0; j < dist.size(); ++j) out(i, j) = dist(i, j);
  }
  return out;
}

TEST(PcaProject, ExactSubspaceIsRecoveredIsometrically) {
  // 30 points in a 2-D affine plane of 6-D space.
  Rng rng(4);
  Eigen::MatrixXd basis(2, 6);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 6; ++j) basis(i, j) = rng.normal();
  }
  Eigen::RowVectorXd offset(6);
  for (int j = 0; j < 6; ++j) offset(j) = rng.normal();
  std::vector<double> coords;
  for (int p = 0; p < 30; ++p) {
    Eigen::RowVectorXd x = offset + rng.normal() * basis.row(0) + rng.normal() * basis.row(1);
    for (int j = 0; j < 6; ++j) coords.push_back(x(j));
  }
  const PointCloud cloud(6, coords);
  const PointCloud projected = pca_project(cloud, 2);
  ASSERT_EQ(projected.dim(), 2u);
  // Zero reconstruction error in the plane is equivalent to an isometric
  // projection of the points.
  EXPECT_LT((distances_of(cloud) - distances_of(projected)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(PcaProject, FullRankIsIsometry) {
  const PointCloud cloud = random_cloud(25, 4, 8);
  const PointCloud projected = pca_project(cloud, 4);
  EXPECT_LT((distances_of(cloud) - distances_of(projected)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(PcaProject, ProjectedVarianceMatchesEigenvalues) {
  const PointCloud cloud = random_cloud(50, 10, 21);
  const PointCloud projected = pca_project(cloud, 5);
  Eigen::MatrixXd x(50, 10);
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 10; ++j) x(i, j) = cloud.point(i)[j];
  }
  const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  const Eigen::MatrixXd covariance = centered.transpose() * centered / 49.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
  const Eigen::VectorXd eig = solver.eigenvalues();  // ascending
  double expected = 0.0;
  for (int i = 0; i < 5; ++i) expected += eig(9 - i);

  double actual = 0.0;
  std::vector<double> per_component(5, 0.0);
  for (std::size_t c = 0; c < 5; ++c) {
    double mean = 0.0;
    for (std::size_t i = 0; i < 50; ++i) mean += projected.point(i)[c];
    mean /= 50.0;
    for (std::size_t i = 0; i < 50; ++i) {
      const double d = projected.point(i)[c] - mean;
      per_component[c] += d * d / 49.0;
    }
    actual += per_component[c];
  }
  EXPECT_NEAR(actual, expected, 1e-8);
  for (std::size_t c = 0; c < 5; ++c) {
    EXPECT_NEAR(per_component[c], eig(9 - static_cast<int>(c)), 1e-8);
    if (c > 0) {
      EXPECT_GE(per_component[c - 1], per_component[c]);
    }
  }
}

TEST(PcaProject, RankErrors) {
  const PointCloud cloud = random_cloud(4, 3, 0);
  EXPECT_PERFO_ERROR(pca_project(cloud, 0), ErrorCode::kRank);
  EXPECT_PERFO_ERROR(pca_project(cloud, 4), ErrorCode::kRank);
  EXPECT_PERFO_ERROR(pca_project(random_cloud(2, 5, 0), 3), ErrorCode::kRank);
}

TEST(CollapseBlobs, ZeroRadiusIsIdentity) {
  const PointCloud cloud = random_cloud(20, 3, 2);
  const PointCloud out = collapse_blobs(cloud, 0.0);
  std::vector<double> a(cloud.coords().begin(), cloud.coords().end());
  std::vector<double> b(out.coords().begin(), out.coords().end());
  EXPECT_EQ(a, b);
}

TEST(CollapseBlobs, TwoClustersBecomeCentroids) {
  Rng rng(3);
  std::vector<double> coords;
  double centroid[2][2] = {{0, 0}, {0, 0}};
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < 10; ++i) {
      // Within a 0.05 ball, so the intra-cluster diameter is at most 0.1.
      const double angle = rng.uniform(0.0, 6.283185307179586);
      const double r = rng.uniform(0.0, 0.05);
      const double x = 10.0 * c + r * std::cos(angle);
      const double y = r * std::sin(angle);
      coords.push_back(x);
      coords.push_back(y);
      centroid[c][0] += x / 10.0;
      centroid[c][1] += y / 10.0;
    }
  }
  const PointCloud out = collapse_blobs(PointCloud(2, coords), 0.5);
  ASSERT_EQ(out.size(), 2u);
  for (int c = 0; c < 2; ++c) {
    const std::size_t idx = out.point(0)[0] < 5.0 ? c : 1 - c;
    EXPECT_NEAR(out.point(idx)[0], centroid[c][0], 1e-12);
    EXPECT_NEAR(out.point(idx)[1], centroid[c][1], 1e-12);
  }
}

TEST(CollapseBlobs, FullCollapse) {
  const PointCloud cloud = random_cloud(15, 2, 6);
  const double diameter = pairwise_distances(cloud).diameter();
  const PointCloud out = collapse_blobs(cloud, diameter);
  ASSERT_EQ(out.size(), 1u);
  for (std::size_t k = 0; k < 2; ++k) {
    double mean = 0.0;
    for (std::size_t i = 0; i < 15; ++i) mean += cloud.point(i)[k];
    EXPECT_NEAR(out.point(0)[k], mean / 15.0, 1e-12);
  }
}

TEST(CollapseBlobs, Idempotent) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PointCloud cloud = random_cloud(40, 2, seed);
    for (double radius : {0.05, 0.15, 0.3}) {
      const PointCloud once = collapse_blobs(cloud, radius);
      EXPECT_EQ(collapse_blobs(once, radius), once);
      EXPECT_LE(once.size(), cloud.size());
    }
  }
}

TEST(CollapseBlobs, NegativeRadius) {
  EXPECT_PERFO_ERROR(collapse_blobs(random_cloud(3, 2, 0), -0.1), ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace perfo
