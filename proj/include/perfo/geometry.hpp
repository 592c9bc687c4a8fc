// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace perfo {

/// n points in R^d stored row-major. dim() is at least 1 even when empty.
class PointCloud {
 public:
  PointCloud() = default;

  /// Throws InvalidArgument when dim is 0, coords.size() is not a multiple
  /// of dim, a label vector of the wrong length is supplied, or NonFiniteValue
  /// for NaN/Inf coordinates.
  PointCloud(std::size_t dim, std::vector<double> coords,
             std::vector<std::int64_t> labels = {});

  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  std::span<const double> coords() const noexcept { return coords_; }
  std::span<const std::int64_t> labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t dim_ = 1;
  std::vector<double> coords_;
  std::vector<std::int64_t> labels_;
};

/// Dense symmetric n x n matrix with a zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

  /// Validates symmetry, zero diagonal, finiteness and nonnegativity.
  static DistanceMatrix from_entries(std::size_t n, std::vector<double> entries);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  /// Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value) {
    entries_[i * n_ + j] = value;
    entries_[j * n_ + i] = value;
  }

  double diameter() const noexcept;
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

enum class Metric { kEuclidean, kCosine };

Metric parse_metric(std::string_view name);
std::string_view to_string(Metric metric) noexcept;

/// Euclidean: L2 norm of the difference. Cosine: 1 - <a,b>/(|a||b|) clamped
/// to [0, 2]; throws ZeroVector if any point is the origin.
DistanceMatrix pairwise_distances(const PointCloud& cloud, Metric metric = Metric::kEuclidean);

enum class ShapeKind { kCircle, kSphere, kTorus, kGaussianBlob };

ShapeKind parse_shape(std::string_view name);
std::string_view to_string(ShapeKind kind) noexcept;

struct ShapeParams {
  double radius = 1.0;        // circle, sphere
  double major_radius = 2.0;  // torus R
  double minor_radius = 0.5;  // torus r
  std::size_t dim = 2;        // gaussian_blob ambient dimension
  double scale = 1.0;         // gaussian_blob standard deviation
};

/// Ground-truth fixtures. Circle lives in R^2, sphere and torus in R^3, the
/// blob in R^params.dim. Circle angles are drawn uniformly. Sphere and torus
/// points come from a randomly shifted rank-1 lattice (area-uniform on the
/// sphere, uniform in angle on the torus). Isotropic Gaussian noise of
/// noise_sigma is added per coordinate. Deterministic for a given seed.
PointCloud sample_shape(ShapeKind kind, std::size_t n, const ShapeParams& params,
                        double noise_sigma, std::uint64_t seed);

/// Mean-centres and projects onto the k leading principal axes, ordered by
/// descending variance. Axis signs are fixed so the largest-magnitude loading
/// is positive. Throws Rank unless 1 <= k <= min(n, d).
PointCloud pca_project(const PointCloud& cloud, std::size_t k);

/// Replaces each single-linkage cluster (linkage distance <= radius) by its
/// centroid, repeating until no two output points are within radius, so the
/// operation is idempotent. Output is ordered by each cluster's smallest
/// member index and keeps that member's label.
PointCloud collapse_blobs(const PointCloud& cloud, double radius);

}  // namespace perfo
