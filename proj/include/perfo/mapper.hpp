// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perfo/geometry.hpp"

namespace perfo {

/// Half-open [lo, hi), or closed when it is the last interval on its axis.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool closed = false;

  bool contains(double x) const noexcept { return lo <= x && (x < hi || (closed && x == hi)); }
};

struct CoverBox {
  std::size_t id = 0;
  std::vector<Interval> ranges;  // one per lens axis

  bool contains(std::span<const double> point) const;
};

/// resolution^m axis-aligned boxes over the bounding box of the lens image.
/// Box id is row-major over the per-axis interval indices (axis 0 slowest).
struct Cover {
  std::size_t lens_dim = 0;
  std::size_t resolution = 0;
  double overlap = 0.0;
  std::vector<CoverBox> boxes;
};

/// Width w = L / (1 + (r - 1)(1 - g)) and stride w(1 - g), so r intervals
/// exactly span an axis of length L and neighbours share a fraction g of
/// their width. A degenerate axis (L = 0) is widened to unit length.
/// Throws UnsupportedLensDim for m > 2, InvalidArgument for r < 1 or g
/// outside [0, 1).
Cover build_cover(const PointCloud& lensed, std::size_t resolution, double overlap);

/// Single-linkage threshold from the first empty bin of a 10-bin histogram
/// of the preimage's pairwise distances (lower edge of that bin). Without an
/// empty bin the threshold is the largest distance.
double auto_linkage_epsilon(const PointCloud& cloud, std::span<const std::size_t> members);

/// Connected components of the graph joining members at distance <= epsilon
/// (nullopt: auto_linkage_epsilon). Clusters hold cloud indices, sorted, and
/// are ordered by their smallest member.
std::vector<std::vector<std::size_t>> cluster_preimage(const PointCloud& cloud,
                                                       std::span<const std::size_t> members,
                                                       std::optional<double> linkage_epsilon);

struct Lens {
  enum class Kind { kPca, kCoordinate };
  Kind kind = Kind::kPca;
  std::size_t param = 1;  // number of components, or coordinate index

  static Lens pca(std::size_t k) { return {Kind::kPca, k}; }
  static Lens coordinate(std::size_t i) { return {Kind::kCoordinate, i}; }
  std::string to_string() const;
  static Lens parse(const std::string& spec);  // "pca:k" or "coord:i"
};

struct MapperParams {
  Lens lens = Lens::pca(1);
  std::size_t resolution = 10;
  double overlap = 0.3;
  std::optional<double> linkage_epsilon;  // nullopt: auto
  std::size_t output_dim = 1;
};

struct MapperNode {
  std::size_t id = 0;
  std::size_t box = 0;
  std::vector<std::size_t> members;
  std::vector<double> centroid;
};

struct MapperGraph {
  std::vector<MapperNode> nodes;
  // Simplices of dimension 1..output_dim as ascending node-id tuples, ordered
  // by size then lexicographically.
  std::vector<std::vector<std::size_t>> simplices;

  std::size_t edge_count() const;
};

PointCloud apply_lens(const PointCloud& cloud, const Lens& lens);

/// Lens -> cover -> per-box clustering -> nerve. Nodes are numbered by box
/// id, then cluster order within the box.
MapperGraph mapper(const PointCloud& cloud, const MapperParams& params);

/// Nerve of a family of member sets: every tuple of 2..max_dim+1 sets with a
/// common element.
std::vector<std::vector<std::size_t>> nerve(const std::vector<MapperNode>& nodes,
                                            std::size_t max_dim);

struct GraphStats {
  std::size_t components = 0;
  std::size_t cycle_rank = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

/// cycle_rank = E - V + components, the first Betti number of the 1-skeleton.
GraphStats graph_stats(const MapperGraph& graph);

/// One "u v" line per edge.
std::string to_edge_list(const MapperGraph& graph);

}  // namespace perfo
