// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include "perfo/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "perfo/error.hpp"

namespace perfo {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

// Order used by every filtration: birth, then dimension, then lexicographic.
bool simplex_less(double birth_a, std::span<const std::uint32_t> a, double birth_b,
                  std::span<const std::uint32_t> b) {
  if (birth_a != birth_b) return birth_a < birth_b;
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

Filtration::Filtration(std::size_t n_points, std::size_t max_dim, double max_epsilon)
    : n_points_(n_points), max_dim_(max_dim), max_epsilon_(max_epsilon) {
  if (n_points > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kTooLarge, "too many points for a filtration");
  }
  binom_.assign(max_dim + 2, std::vector<std::uint64_t>(n_points + 1, 0));
  for (std::size_t v = 0; v <= n_points; ++v) binom_[0][v] = 1;
  for (std::size_t k = 1; k < binom_.size(); ++k) {
    for (std::size_t v = 1; v <= n_points; ++v) {
      binom_[k][v] = saturating_add(binom_[k][v - 1], binom_[k - 1][v - 1]);
    }
  }
  for (std::size_t k = 1; k < binom_.size() && k <= n_points; ++k) {
    if (binom_[k][n_points] == kSaturated) {
      throw Error(ErrorCode::kTooLarge, "simplex keys overflow 64 bits for n = " +
                                            std::to_string(n_points) + ", max_dim = " +
                                            std::to_string(max_dim));
    }
  }
}

Filtration::Filtration(std::size_t n_points, std::size_t max_dim, double max_epsilon,
                       std::span<const Simplex> simplices)
    : Filtration(n_points, max_dim, max_epsilon) {
  for (const Simplex& s : simplices) {
    if (s.vertices.empty()) throw Error(ErrorCode::kInvalidFiltration, "empty simplex");
    if (s.vertices.size() > max_dim + 1) {
      throw Error(ErrorCode::kInvalidFiltration, "simplex dimension exceeds max_dim");
    }
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      if (s.vertices[i] >= n_points) {
        throw Error(ErrorCode::kInvalidFiltration, "vertex index out of range");
      }
      if (i > 0 && s.vertices[i - 1] >= s.vertices[i]) {
        throw Error(ErrorCode::kInvalidFiltration, "simplex vertices must be strictly ascending");
      }
    }
    if (!std::isfinite(s.birth)) throw Error(ErrorCode::kInvalidFiltration, "non-finite birth");
    append(s.vertices, s.birth);
  }
  build_index();
  validate();
}

void Filtration::append(std::span<const std::uint32_t> vertices, double birth) {
  vertex_data_.insert(vertex_data_.end(), vertices.begin(), vertices.end());
  offsets_.push_back(vertex_data_.size());
  births_.push_back(birth);
}

std::uint64_t Filtration::key(std::span<const std::uint32_t> sorted_vertices) const {
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < sorted_vertices.size(); ++i) {
    k += binom_[i + 1][sorted_vertices[i]];
  }
  return k;
}

void Filtration::build_index() {
  index_.assign(max_dim_ + 1, {});
  for (std::size_t i = 0; i < size(); ++i) {
    index_[dim(i)].emplace_back(key(vertices(i)), static_cast<std::uint32_t>(i));
  }
  for (auto& bucket : index_) std::sort(bucket.begin(), bucket.end());
}

std::size_t Filtration::find(std::span<const std::uint32_t> sorted_vertices) const {
  if (sorted_vertices.empty() || sorted_vertices.size() > max_dim_ + 1) return npos;
  if (sorted_vertices.back() >= n_points_) return npos;
  const auto& bucket = index_[sorted_vertices.size() - 1];
  const std::uint64_t k = key(sorted_vertices);
  auto it = std::lower_bound(bucket.begin(), bucket.end(), std::make_pair(k, std::uint32_t{0}));
  if (it == bucket.end() || it->first != k) return npos;
  return it->second;
}

void Filtration::validate() const {
  std::vector<std::uint32_t> face;
  for (std::size_t i = 0; i < size(); ++i) {
    const auto vs = vertices(i);
    if (i > 0 && simplex_less(birth(i), vs, birth(i - 1), vertices(i - 1))) {
      throw Error(ErrorCode::kInvalidFiltration,
                  "simplex " + std::to_string(i) + " is out of (birth, dim, lex) order");
    }
    if (i > 0 && birth(i) == birth(i - 1) && std::ranges::equal(vs, vertices(i - 1))) {
      throw Error(ErrorCode::kInvalidFiltration, "duplicate simplex at " + std::to_string(i));
    }
    if (vs.size() < 2) continue;
    for (std::size_t drop = 0; drop < vs.size(); ++drop) {
      face.clear();
      for (std::size_t j = 0; j < vs.size(); ++j) {
        if (j != drop) face.push_back(vs[j]);
      }
      const std::size_t at = find(face);
      if (at == npos || at >= i) {
        throw Error(ErrorCode::kInvalidFiltration,
                    "face of simplex " + std::to_string(i) + " missing or placed after it");
      }
    }
  }
}

Simplex Filtration::simplex(std::size_t i) const {
  const auto vs = vertices(i);
  return Simplex{{vs.begin(), vs.end()}, birth(i)};
}

std::vector<std::size_t> Filtration::count_by_dim() const {
  std::vector<std::size_t> counts(max_dim_ + 1, 0);
  for (std::size_t i = 0; i < size(); ++i) ++counts[dim(i)];
  return counts;
}

Filtration build_vr_filtration(const DistanceMatrix& dist, std::size_t max_dim,
                               std::optional<double> max_epsilon, std::size_t budget) {
  const std::size_t n = dist.size();
  const double eps = max_epsilon.value_or(dist.diameter());
  if (max_epsilon && !(*max_epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "max_epsilon must be > 0");
  }
  Filtration staged(n, max_dim, eps);

  // Higher-indexed neighbours within eps, ascending.
  std::vector<std::vector<std::uint32_t>> up(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dist(i, j) <= eps) up[i].push_back(static_cast<std::uint32_t>(j));
    }
  }

  std::size_t count = 0;
  auto charge = [&] {
    if (++count > budget) {
      throw Error(ErrorCode::kBudgetExceeded,
                  "Vietoris-Rips filtration exceeds " + std::to_string(budget) +
                      " simplices; lower max_dim or max_epsilon, or subsample");
    }
  };

  // Depth-first clique enumeration: extend a simplex by a common upper
  // neighbour of all its vertices.
  std::vector<std::uint32_t> simplex;
  auto expand = [&](auto&& self, const std::vector<std::uint32_t>& candidates,
                    double birth) -> void {
    if (simplex.size() > max_dim) return;
    for (std::uint32_t v : candidates) {
      double b = birth;
      for (std::uint32_t w : simplex) b = std::max(b, dist(w, v));
      simplex.push_back(v);
      charge();
      staged.append(simplex, b);
      if (simplex.size() <= max_dim) {
        std::vector<std::uint32_t> next;
        std::set_intersection(candidates.begin(), candidates.end(), up[v].begin(), up[v].end(),
                              std::back_inserter(next));
        if (!next.empty()) self(self, next, b);
      }
      simplex.pop_back();
    }
  };
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), std::uint32_t{0});
  for (std::uint32_t v : all) {
    simplex.assign(1, v);
    charge();
    staged.append(simplex, 0.0);
    if (max_dim > 0 && !up[v].empty()) expand(expand, up[v], 0.0);
  }

  std::vector<std::uint32_t> order(staged.size());
  std::iota(order.begin(), order.end(), std::uint32_t{0});
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return simplex_less(staged.birth(a), staged.vertices(a), staged.birth(b), staged.vertices(b));
  });

  Filtration out(n, max_dim, eps);
  out.vertex_data_.reserve(staged.vertex_data_.size());
  out.offsets_.reserve(staged.size() + 1);
  out.births_.reserve(staged.size());
  for (std::uint32_t i : order) out.append(staged.vertices(i), staged.birth(i));
  out.build_index();
  return out;
}

}  // namespace perfo
