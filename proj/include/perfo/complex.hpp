// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "perfo/geometry.hpp"

namespace perfo {

inline constexpr std::size_t kDefaultSimplexBudget = 5'000'000;

struct Simplex {
  std::vector<std::uint32_t> vertices;  // strictly ascending
  double birth = 0.0;

  std::size_t dim() const noexcept { return vertices.size() - 1; }
  friend bool operator==(const Simplex&, const Simplex&) = default;
};

/// Simplices ordered by (birth, dim, lexicographic vertices), closed under
/// faces, every face placed before its cofaces.
///
/// Storage is flat (one vertex buffer plus offsets) so filtrations with
/// millions of simplices stay compact. A per-dimension index keyed by the
/// combinatorial number system gives O(log n) face lookup.
class Filtration {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  /// Builds and validates an arbitrary filtration (births need not be
  /// Vietoris-Rips births). Throws InvalidFiltration on any ordering,
  /// closure or vertex-range violation.
  Filtration(std::size_t n_points, std::size_t max_dim, double max_epsilon,
             std::span<const Simplex> simplices);

  std::size_t size() const noexcept { return births_.size(); }
  std::size_t n_points() const noexcept { return n_points_; }
  std::size_t max_dim() const noexcept { return max_dim_; }
  double max_epsilon() const noexcept { return max_epsilon_; }

  std::span<const std::uint32_t> vertices(std::size_t i) const {
    return {vertex_data_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::size_t dim(std::size_t i) const { return offsets_[i + 1] - offsets_[i] - 1; }
  double birth(std::size_t i) const { return births_[i]; }
  Simplex simplex(std::size_t i) const;

  /// Position of the simplex with these sorted vertices, or npos.
  std::size_t find(std::span<const std::uint32_t> sorted_vertices) const;

  /// Number of simplices of each dimension 0..max_dim.
  std::vector<std::size_t> count_by_dim() const;

 private:
  friend Filtration build_vr_filtration(const DistanceMatrix&, std::size_t,
                                        std::optional<double>, std::size_t);

  Filtration(std::size_t n_points, std::size_t max_dim, double max_epsilon);

  void append(std::span<const std::uint32_t> vertices, double birth);
  void build_index();
  std::uint64_t key(std::span<const std::uint32_t> sorted_vertices) const;
  void validate() const;

  std::size_t n_points_ = 0;
  std::size_t max_dim_ = 0;
  double max_epsilon_ = 0.0;
  std::vector<std::uint32_t> vertex_data_;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<double> births_;
  // binom_[k][v] = C(v, k) for k in [0, max_dim + 1], v in [0, n_points].
  std::vector<std::vector<std::uint64_t>> binom_;
  std::vector<std::vector<std::pair<std::uint64_t, std::uint32_t>>> index_;
};

/// Vietoris-Rips filtration: every simplex of dimension <= max_dim whose
/// pairwise distances are all <= max_epsilon, born at its longest edge.
/// max_epsilon defaults to the matrix diameter. Throws BudgetExceeded once
/// the simplex count would pass `budget`.
Filtration build_vr_filtration(const DistanceMatrix& dist, std::size_t max_dim,
                               std::optional<double> max_epsilon = std::nullopt,
                               std::size_t budget = kDefaultSimplexBudget);

}  // namespace perfo
