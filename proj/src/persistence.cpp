// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include "perfo/persistence.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <string>
#include <unordered_map>

#include "perfo/error.hpp"

namespace perfo {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

using Column = std::vector<std::uint32_t>;

// Z/2 column addition on sorted row lists.
void add_column(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

BettiSequence BettiSequence::trimmed() const {
  BettiSequence out = *this;
  while (!out.counts.empty() && out.counts.back() == 0) out.counts.pop_back();
  return out;
}

std::vector<Bar> PersistenceDiagram::bars_in_dim(std::size_t dim) const {
  std::vector<Bar> out;
  std::copy_if(bars.begin(), bars.end(), std::back_inserter(out),
               [dim](const Bar& b) { return b.dim == dim; });
  return out;
}

PersistenceDiagram compute_persistence(const Filtration& filtration) {
  const std::size_t n = filtration.size();
  if (n >= kNone) throw Error(ErrorCode::kTooLarge, "filtration too large to index");
  const std::size_t top = filtration.max_dim();
  const std::size_t n_points = filtration.n_points();

  std::vector<std::vector<std::uint32_t>> by_dim(top + 1);
  for (std::size_t i = 0; i < n; ++i) by_dim[filtration.dim(i)].push_back(static_cast<std::uint32_t>(i));

  // Creator -> destroyer pairs. Pairs are unique for a fixed order, so the
  // coboundary reduction below gives the same diagram as reducing the
  // boundary matrix, only faster on Rips filtrations.
  std::vector<std::uint32_t> killer(n, kNone);
  std::vector<char> destroyer(n, 0);

  // Dimension 0: union-find; the younger root dies.
  {
    std::vector<std::uint32_t> parent(n_points);
    std::iota(parent.begin(), parent.end(), std::uint32_t{0});
    std::vector<std::uint32_t> vertex_pos(n_points, kNone);
    for (std::uint32_t i : by_dim[0]) vertex_pos[filtration.vertices(i)[0]] = i;
    auto root = [&](std::uint32_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    if (top >= 1) {
      for (std::uint32_t e : by_dim[1]) {
        const auto vs = filtration.vertices(e);
        std::uint32_t a = root(vs[0]);
        std::uint32_t b = root(vs[1]);
        if (a == b) continue;
        if (vertex_pos[a] > vertex_pos[b]) std::swap(a, b);
        parent[b] = a;
        killer[vertex_pos[b]] = e;
        destroyer[e] = 1;
      }
    }
  }

  // Common upper-or-lower neighbours give the cofaces of a simplex.
  std::vector<std::vector<std::uint32_t>> neighbours(n_points);
  if (top >= 2) {
    for (std::uint32_t e : by_dim[1]) {
      const auto vs = filtration.vertices(e);
      neighbours[vs[0]].push_back(vs[1]);
      neighbours[vs[1]].push_back(vs[0]);
    }
    for (auto& list : neighbours) std::sort(list.begin(), list.end());
  }

  Column column, scratch, common, next;
  std::vector<std::uint32_t> coface;
  std::unordered_map<std::uint32_t, Column> reduced_by_pivot;
  for (std::size_t d = 1; d < top; ++d) {
    reduced_by_pivot.clear();
    for (auto it = by_dim[d].rbegin(); it != by_dim[d].rend(); ++it) {
      const std::uint32_t j = *it;
      if (destroyer[j]) continue;
      const auto vs = filtration.vertices(j);
      common = neighbours[vs[0]];
      for (std::size_t k = 1; k < vs.size() && !common.empty(); ++k) {
        next.clear();
        std::set_intersection(common.begin(), common.end(), neighbours[vs[k]].begin(),
                              neighbours[vs[k]].end(), std::back_inserter(next));
        common.swap(next);
      }
      column.clear();
      for (std::uint32_t v : common) {
        coface.assign(vs.begin(), vs.end());
        coface.insert(std::upper_bound(coface.begin(), coface.end(), v), v);
        const std::size_t at = filtration.find(coface);
        if (at == Filtration::npos || at <= j) {
          throw Error(ErrorCode::kInvalidFiltration,
                      "coface of simplex " + std::to_string(j) + " missing or placed before it");
        }
        column.push_back(static_cast<std::uint32_t>(at));
      }
      std::sort(column.begin(), column.end());

      while (!column.empty()) {
        const auto found = reduced_by_pivot.find(column.front());
        if (found == reduced_by_pivot.end()) break;
        add_column(column, found->second, scratch);
      }
      if (column.empty()) continue;
      const std::uint32_t pivot = column.front();
      killer[j] = pivot;
      destroyer[pivot] = 1;
      reduced_by_pivot.emplace(pivot, column);
    }
  }

  PersistenceDiagram diagram;
  diagram.max_dim = top >= 1 ? top - 1 : 0;
  diagram.max_epsilon = filtration.max_epsilon();
  diagram.n_points = n_points;
  for (std::size_t i = 0; i < n; ++i) {
    if (destroyer[i]) continue;
    const std::size_t dim = filtration.dim(i);
    if (killer[i] != kNone) {
      diagram.bars.push_back(Bar{dim, filtration.birth(i), filtration.birth(killer[i]), false});
    } else if (dim < top || top == 0) {
      if (dim == 0) {
        diagram.bars.push_back(Bar{0, filtration.birth(i), kInfinity, false});
      } else {
        diagram.bars.push_back(Bar{dim, filtration.birth(i), filtration.max_epsilon(), true});
      }
    }
  }
  std::sort(diagram.bars.begin(), diagram.bars.end(), [](const Bar& a, const Bar& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
  return diagram;
}

BettiReadout betti_at(const PersistenceDiagram& diagram, double epsilon) {
  if (!(epsilon >= 0.0) || epsilon > diagram.max_epsilon) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in [0, max_epsilon]");
  }
  BettiReadout out;
  out.betti.counts.assign(diagram.max_dim, 0);
  for (const Bar& bar : diagram.bars) {
    const bool alive = bar.birth <= epsilon &&
                       (epsilon < bar.death || (bar.truncated && epsilon <= bar.death));
    if (!alive) continue;
    if (bar.dim == 0) {
      ++out.components;
    } else if (bar.dim <= diagram.max_dim) {
      ++out.betti.counts[bar.dim - 1];
    }
  }
  return out;
}

BettiSequence persistent_betti(const PersistenceDiagram& diagram, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must lie in [0, 1]");
  }
  const double cutoff = threshold * diagram.max_epsilon;
  BettiSequence out;
  out.counts.assign(diagram.max_dim, 0);
  for (const Bar& bar : diagram.bars) {
    if (bar.dim == 0 || bar.dim > diagram.max_dim) continue;
    const double life = bar.persistence();
    if (life > 0.0 && life >= cutoff) ++out.counts[bar.dim - 1];
  }
  return out;
}

}  // namespace perfo
