// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include "perfo/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "perfo/error.hpp"
#include "perfo/rng.hpp"
#include "perfo/union_find.hpp"

namespace perfo {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords,
                       std::vector<std::int64_t> labels)
    : dim_(dim), coords_(std::move(coords)), labels_(std::move(labels)) {
  if (dim_ == 0) throw Error(ErrorCode::kInvalidArgument, "point dimension must be >= 1");
  if (coords_.size() % dim_ != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "coordinate count " + std::to_string(coords_.size()) +
                    " is not a multiple of dimension " + std::to_string(dim_));
  }
  if (!labels_.empty() && labels_.size() != size()) {
    throw Error(ErrorCode::kInvalidArgument, "label count does not match point count");
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i])) {
      throw Error(ErrorCode::kNonFiniteValue,
                  "non-finite coordinate in point " + std::to_string(i / dim_));
    }
  }
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (const auto& row : rows) {
    if (row.size() != dim) throw Error(ErrorCode::kInvalidArgument, "ragged point rows");
    coords.insert(coords.end(), row.begin(), row.end());
  }
  return PointCloud(dim, std::move(coords));
}

DistanceMatrix DistanceMatrix::from_entries(std::size_t n, std::vector<double> entries) {
  if (entries.size() != n * n) {
    throw Error(ErrorCode::kInvalidArgument, "distance matrix must have n*n entries");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i * n + i] != 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "distance matrix diagonal must be zero");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = entries[i * n + j];
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorCode::kInvalidArgument, "distances must be finite and nonnegative");
      }
      if (v != entries[j * n + i]) {
        throw Error(ErrorCode::kInvalidArgument, "distance matrix must be symmetric");
      }
    }
  }
  DistanceMatrix out;
  out.n_ = n;
  out.entries_ = std::move(entries);
  return out;
}

double DistanceMatrix::diameter() const noexcept {
  double best = 0.0;
  for (double v : entries_) best = std::max(best, v);
  return best;
}

Metric parse_metric(std::string_view name) {
  if (name == "euclidean") return Metric::kEuclidean;
  if (name == "cosine" || name == "cosine_distance") return Metric::kCosine;
  throw Error(ErrorCode::kInvalidArgument, "unknown metric '" + std::string(name) + "'");
}

std::string_view to_string(Metric metric) noexcept {
  return metric == Metric::kEuclidean ? "euclidean" : "cosine_distance";
}

DistanceMatrix pairwise_distances(const PointCloud& cloud, Metric metric) {
  if (cloud.empty()) throw Error(ErrorCode::kInvalidArgument, "cloud is empty");
  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dim();
  DistanceMatrix out(n);

  if (metric == Metric::kEuclidean) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = cloud.point(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto b = cloud.point(j);
        double sum = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          const double diff = a[k] - b[k];
          sum += diff * diff;
        }
        out.set(i, j, std::sqrt(sum));
      }
    }
    return out;
  }

  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (double x : cloud.point(i)) sum += x * x;
    norms[i] = std::sqrt(sum);
    if (norms[i] == 0.0) {
      throw Error(ErrorCode::kZeroVector,
                  "cosine distance undefined for zero vector at point " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = cloud.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto b = cloud.point(j);
      double dot = 0.0;
      for (std::size_t k = 0; k < d; ++k) dot += a[k] * b[k];
      out.set(i, j, std::clamp(1.0 - dot / (norms[i] * norms[j]), 0.0, 2.0));
    }
  }
  return out;
}

ShapeKind parse_shape(std::string_view name) {
  if (name == "circle") return ShapeKind::kCircle;
  if (name == "sphere") return ShapeKind::kSphere;
  if (name == "torus") return ShapeKind::kTorus;
  if (name == "gaussian_blob" || name == "blob") return ShapeKind::kGaussianBlob;
  throw Error(ErrorCode::kInvalidArgument, "unknown shape '" + std::string(name) + "'");
}

std::string_view to_string(ShapeKind kind) noexcept {
  switch (kind) {
    case ShapeKind::kCircle: return "circle";
    case ShapeKind::kSphere: return "sphere";
    case ShapeKind::kTorus: return "torus";
    case ShapeKind::kGaussianBlob: return "gaussian_blob";
  }
  return "unknown";
}

PointCloud sample_shape(ShapeKind kind, std::size_t n, const ShapeParams& params,
                        double noise_sigma, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "sample size must be >= 1");
  if (!(noise_sigma >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "noise_sigma must be >= 0");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;

  std::size_t dim = 0;
  switch (kind) {
    case ShapeKind::kCircle:
      if (!(params.radius > 0.0)) throw Error(ErrorCode::kInvalidShapeParams, "radius must be > 0");
      dim = 2;
      break;
    case ShapeKind::kSphere:
      if (!(params.radius > 0.0)) throw Error(ErrorCode::kInvalidShapeParams, "radius must be > 0");
      dim = 3;
      break;
    case ShapeKind::kTorus:
      if (!(params.minor_radius > 0.0) || !(params.major_radius > params.minor_radius)) {
        throw Error(ErrorCode::kInvalidShapeParams, "torus requires major > minor > 0");
      }
      dim = 3;
      break;
    case ShapeKind::kGaussianBlob:
      if (params.dim == 0) throw Error(ErrorCode::kInvalidShapeParams, "blob dimension must be >= 1");
      if (!(params.scale > 0.0)) throw Error(ErrorCode::kInvalidShapeParams, "blob scale must be > 0");
      dim = params.dim;
      break;
  }

  Rng rng(seed);
  // Sphere and torus use a randomly shifted rank-1 lattice: each point is
  // still uniform on its domain, but the sample has no large empty patches.
  constexpr double kGolden = 0.61803398874989484820;
  double shift_u = 0.0, shift_v = 0.0;
  if (kind == ShapeKind::kSphere || kind == ShapeKind::kTorus) {
    shift_u = rng.uniform();
    shift_v = rng.uniform();
  }
  const double count = static_cast<double>(n);
  std::vector<double> coords;
  coords.reserve(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = std::fmod((static_cast<double>(i) + shift_u) / count, 1.0);
    const double v = std::fmod(static_cast<double>(i) * kGolden + shift_v, 1.0);
    switch (kind) {
      case ShapeKind::kCircle: {
        const double theta = kTwoPi * rng.uniform();
        coords.push_back(params.radius * std::cos(theta));
        coords.push_back(params.radius * std::sin(theta));
        break;
      }
      case ShapeKind::kSphere: {
        const double z = 1.0 - 2.0 * u;
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double theta = kTwoPi * v;
        coords.push_back(params.radius * s * std::cos(theta));
        coords.push_back(params.radius * s * std::sin(theta));
        coords.push_back(params.radius * z);
        break;
      }
      case ShapeKind::kTorus: {
        const double theta = kTwoPi * u;
        const double phi = kTwoPi * v;
        const double ring = params.major_radius + params.minor_radius * std::cos(phi);
        coords.push_back(ring * std::cos(theta));
        coords.push_back(ring * std::sin(theta));
        coords.push_back(params.minor_radius * std::sin(phi));
        break;
      }
      case ShapeKind::kGaussianBlob:
        for (std::size_t k = 0; k < dim; ++k) coords.push_back(params.scale * rng.normal());
        break;
    }
  }
  if (noise_sigma > 0.0) {
    for (double& c : coords) c += noise_sigma * rng.normal();
  }
  return PointCloud(dim, std::move(coords));
}

PointCloud pca_project(const PointCloud& cloud, std::size_t k) {
  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dim();
  if (k < 1 || k > std::min(n, d)) {
    throw Error(ErrorCode::kRank, "pca rank " + std::to_string(k) + " outside [1, min(n, d)] = [1, " +
                                      std::to_string(std::min(n, d)) + "]");
  }
  using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Matrix x = Eigen::Map<const Matrix>(cloud.coords().data(), static_cast<Eigen::Index>(n),
                                      static_cast<Eigen::Index>(d));
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  const Eigen::MatrixXd cov = (x.transpose() * x) / denom;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  // Eigenvalues ascend; take the last k columns in reverse.
  Eigen::MatrixXd axes(d, k);
  for (std::size_t c = 0; c < k; ++c) {
    Eigen::VectorXd axis = solver.eigenvectors().col(static_cast<Eigen::Index>(d - 1 - c));
    Eigen::Index arg = 0;
    axis.cwiseAbs().maxCoeff(&arg);
    if (axis(arg) < 0.0) axis = -axis;
    axes.col(static_cast<Eigen::Index>(c)) = axis;
  }
  const Matrix projected = x * axes;
  std::vector<double> coords(projected.data(), projected.data() + projected.size());
  std::vector<std::int64_t> labels(cloud.labels().begin(), cloud.labels().end());
  return PointCloud(k, std::move(coords), std::move(labels));
}

namespace {

PointCloud collapse_once(const PointCloud& cloud, double radius, bool& changed) {
  const std::size_t n = cloud.size();
  const std::size_t d = cloud.dim();
  UnionFind uf(n);
  const double r2 = radius * radius;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = cloud.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto b = cloud.point(j);
      double sum = 0.0;
      for (std::size_t k = 0; k < d; ++k) sum += (a[k] - b[k]) * (a[k] - b[k]);
      if (sum <= r2) uf.unite(i, j);
    }
  }
  const auto groups = uf.groups();
  changed = groups.size() != n;
  if (!changed) return cloud;

  std::vector<double> coords;
  coords.reserve(groups.size() * d);
  std::vector<std::int64_t> labels;
  for (const auto& group : groups) {
    for (std::size_t k = 0; k < d; ++k) {
      double sum = 0.0;
      for (std::size_t member : group) sum += cloud.point(member)[k];
      coords.push_back(sum / static_cast<double>(group.size()));
    }
    if (cloud.has_labels()) labels.push_back(cloud.labels()[group.front()]);
  }
  return PointCloud(d, std::move(coords), std::move(labels));
}

}  // namespace

PointCloud collapse_blobs(const PointCloud& cloud, double radius) {
  if (!(radius >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "collapse radius must be >= 0");
  PointCloud current = cloud;
  bool changed = true;
  while (changed && current.size() > 1) current = collapse_once(current, radius, changed);
  return current;
}

}  // namespace perfo
