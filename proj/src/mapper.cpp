// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include "perfo/mapper.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "perfo/error.hpp"
#include "perfo/union_find.hpp"

namespace perfo {

namespace {

double distance(const PointCloud& cloud, std::size_t a, std::size_t b) {
  const auto p = cloud.point(a);
  const auto q = cloud.point(b);
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) sum += (p[k] - q[k]) * (p[k] - q[k]);
  return std::sqrt(sum);
}

}  // namespace

bool CoverBox::contains(std::span<const double> point) const {
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    if (!ranges[k].contains(point[k])) return false;
  }
  return true;
}

Cover build_cover(const PointCloud& lensed, std::size_t resolution, double overlap) {
  const std::size_t m = lensed.dim();
  if (m > 2) throw Error(ErrorCode::kUnsupportedLensDim, "cover supports lens dimension 1 or 2");
  if (resolution < 1) throw Error(ErrorCode::kInvalidArgument, "resolution must be >= 1");
  if (!(overlap >= 0.0 && overlap < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "overlap must lie in [0, 1)");
  }

  std::vector<std::vector<Interval>> axes(m);
  for (std::size_t k = 0; k < m; ++k) {
    double lo = 0.0, hi = 0.0;
    if (!lensed.empty()) {
      lo = std::numeric_limits<double>::infinity();
      hi = -lo;
      for (std::size_t i = 0; i < lensed.size(); ++i) {
        lo = std::min(lo, lensed.point(i)[k]);
        hi = std::max(hi, lensed.point(i)[k]);
      }
    }
    if (hi - lo <= 0.0) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double r = static_cast<double>(resolution);
    const double width = (hi - lo) / (1.0 + (r - 1.0) * (1.0 - overlap));
    const double stride = width * (1.0 - overlap);
    for (std::size_t j = 0; j < resolution; ++j) {
      const bool last = j + 1 == resolution;
      const double start = lo + static_cast<double>(j) * stride;
      axes[k].push_back(Interval{start, last ? hi : start + width, last});
    }
  }

  Cover cover{m, resolution, overlap, {}};
  std::size_t total = 1;
  for (std::size_t k = 0; k < m; ++k) total *= resolution;
  for (std::size_t id = 0; id < total; ++id) {
    CoverBox box{id, std::vector<Interval>(m)};
    std::size_t rest = id;
    for (std::size_t k = m; k-- > 0;) {
      box.ranges[k] = axes[k][rest % resolution];
      rest /= resolution;
    }
    cover.boxes.push_back(std::move(box));
  }
  return cover;
}

double auto_linkage_epsilon(const PointCloud& cloud, std::span<const std::size_t> members) {
  std::vector<double> distances;
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      distances.push_back(distance(cloud, members[a], members[b]));
    }
  }
  if (distances.empty()) return 0.0;
  const auto [min_it, max_it] = std::minmax_element(distances.begin(), distances.end());
  const double lo = *min_it;
  const double hi = *max_it;
  if (hi <= lo) return hi;

  constexpr std::size_t kBins = 10;
  const double width = (hi - lo) / kBins;
  std::array<std::size_t, kBins> counts{};
  for (double d : distances) {
    auto bin = static_cast<std::size_t>((d - lo) / width);
    counts[std::min(bin, kBins - 1)]++;
  }
  for (std::size_t b = 0; b < kBins; ++b) {
    if (counts[b] == 0) return lo + static_cast<double>(b) * width;
  }
  return hi;
}

std::vector<std::vector<std::size_t>> cluster_preimage(const PointCloud& cloud,
                                                       std::span<const std::size_t> members,
                                                       std::optional<double> linkage_epsilon) {
  if (linkage_epsilon && !(*linkage_epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "linkage epsilon must be > 0");
  }
  std::vector<std::size_t> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty()) return {};
  const double eps = linkage_epsilon ? *linkage_epsilon : auto_linkage_epsilon(cloud, sorted);

  UnionFind uf(sorted.size());
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = a + 1; b < sorted.size(); ++b) {
      if (distance(cloud, sorted[a], sorted[b]) <= eps) uf.unite(a, b);
    }
  }
  auto groups = uf.groups();
  for (auto& group : groups) {
    for (auto& index : group) index = sorted[index];
  }
  return groups;
}

std::string Lens::to_string() const {
  return (kind == Kind::kPca ? "pca:" : "coord:") + std::to_string(param);
}

Lens Lens::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::size_t param = name == "pca" ? 1 : 0;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      param = std::stoul(spec.substr(colon + 1), &used);
      if (used != spec.size() - colon - 1) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad lens parameter in '" + spec + "'");
    }
  }
  if (name == "pca") return pca(param);
  if (name == "coord" || name == "coordinate") return coordinate(param);
  throw Error(ErrorCode::kInvalidArgument, "unknown lens '" + spec + "' (use pca:k or coord:i)");
}

std::size_t MapperGraph::edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(simplices.begin(), simplices.end(), [](const auto& s) { return s.size() == 2; }));
}

PointCloud apply_lens(const PointCloud& cloud, const Lens& lens) {
  if (lens.kind == Lens::Kind::kPca) {
    if (lens.param > 2) throw Error(ErrorCode::kUnsupportedLensDim, "pca lens supports 1 or 2 components");
    return pca_project(cloud, lens.param);
  }
  if (lens.param >= cloud.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "lens coordinate " + std::to_string(lens.param) +
                                                 " out of range for dimension " +
                                                 std::to_string(cloud.dim()));
  }
  std::vector<double> coords(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) coords[i] = cloud.point(i)[lens.param];
  return PointCloud(1, std::move(coords));
}

std::vector<std::vector<std::size_t>> nerve(const std::vector<MapperNode>& nodes,
                                            std::size_t max_dim) {
  std::size_t n_points = 0;
  for (const auto& node : nodes) {
    for (std::size_t m : node.members) n_points = std::max(n_points, m + 1);
  }
  std::vector<std::vector<std::size_t>> containing(n_points);
  for (const auto& node : nodes) {
    for (std::size_t m : node.members) containing[m].push_back(node.id);
  }

  // Any tuple with a common point is a subset of that point's node list.
  std::set<std::vector<std::size_t>> found;
  std::vector<std::size_t> tuple;
  for (auto& list : containing) {
    std::sort(list.begin(), list.end());
    auto visit = [&](auto&& self, std::size_t start) -> void {
      if (tuple.size() >= 2) found.insert(tuple);
      if (tuple.size() == max_dim + 1) return;
      for (std::size_t i = start; i < list.size(); ++i) {
        tuple.push_back(list[i]);
        self(self, i + 1);
        tuple.pop_back();
      }
    };
    visit(visit, 0);
  }
  std::vector<std::vector<std::size_t>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

MapperGraph mapper(const PointCloud& cloud, const MapperParams& params) {
  if (cloud.empty()) throw Error(ErrorCode::kInvalidArgument, "mapper needs a nonempty cloud");
  if (params.output_dim < 1) throw Error(ErrorCode::kInvalidArgument, "output_dim must be >= 1");

  const PointCloud lensed = apply_lens(cloud, params.lens);
  const Cover cover = build_cover(lensed, params.resolution, params.overlap);

  MapperGraph graph;
  std::vector<std::size_t> members;
  for (const CoverBox& box : cover.boxes) {
    members.clear();
    for (std::size_t i = 0; i < lensed.size(); ++i) {
      if (box.contains(lensed.point(i))) members.push_back(i);
    }
    for (auto& cluster : cluster_preimage(cloud, members, params.linkage_epsilon)) {
      MapperNode node;
      node.id = graph.nodes.size();
      node.box = box.id;
      node.centroid.assign(cloud.dim(), 0.0);
      for (std::size_t m : cluster) {
        for (std::size_t k = 0; k < cloud.dim(); ++k) node.centroid[k] += cloud.point(m)[k];
      }
      for (double& c : node.centroid) c /= static_cast<double>(cluster.size());
      node.members = std::move(cluster);
      graph.nodes.push_back(std::move(node));
    }
  }
  graph.simplices = nerve(graph.nodes, params.output_dim);
  return graph;
}

GraphStats graph_stats(const MapperGraph& graph) {
  GraphStats stats;
  stats.nodes = graph.nodes.size();
  UnionFind uf(stats.nodes);
  for (const auto& s : graph.simplices) {
    if (s.size() != 2) continue;
    ++stats.edges;
    uf.unite(s[0], s[1]);
  }
  stats.components = stats.nodes == 0 ? 0 : uf.groups().size();
  stats.cycle_rank = stats.edges + stats.components - stats.nodes;
  return stats;
}

std::string to_edge_list(const MapperGraph& graph) {
  std::ostringstream out;
  for (const auto& s : graph.simplices) {
    if (s.size() == 2) out << s[0] << ' ' << s[1] << '\n';
  }
  return out.str();
}

}  // namespace perfo
