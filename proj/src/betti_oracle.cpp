// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

// Reference Betti numbers by static homology at each scale, independent of
// the filtration builder and of the Z/2 reduction.

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <string>
#include <unordered_map>

#include "perfo/error.hpp"
#include "perfo/persistence.hpp"

namespace perfo {

namespace {

struct Overflow {};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw Overflow{};
  return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(a, b, &out)) throw Overflow{};
  return out;
}

// Row operations only ever scale by nonzero integers or add integer
// multiples of another row, so the rank over Q is preserved.
std::size_t integer_rank(std::vector<std::int64_t> a, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      const std::int64_t v = a[r * cols + c];
      if (v == 0) continue;
      if (pivot == rows || std::llabs(v) < std::llabs(a[pivot * cols + c])) pivot = r;
      if (std::llabs(v) == 1) break;
    }
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(a[pivot * cols + k], a[rank * cols + k]);
    }
    const std::int64_t p = a[rank * cols + c];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::int64_t x = a[r * cols + c];
      if (x == 0) continue;
      std::int64_t g = 0;
      for (std::size_t k = c; k < cols; ++k) {
        std::int64_t& cell = a[r * cols + k];
        const std::int64_t piv = a[rank * cols + k];
        if (p == 1 || p == -1) {
          cell = checked_sub(cell, checked_mul(checked_mul(x, p), piv));
        } else {
          cell = checked_sub(checked_mul(p, cell), checked_mul(x, piv));
        }
        g = std::gcd(g, cell);
      }
      if (g > 1) {
        for (std::size_t k = c; k < cols; ++k) a[r * cols + k] /= g;
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t exact_rational_rank(const std::vector<std::int64_t>& entries, std::size_t rows,
                                std::size_t cols) {
  std::vector<Rational> a(entries.begin(), entries.end());
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (a[r * cols + c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(a[pivot * cols + k], a[rank * cols + k]);
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r * cols + c] == 0) continue;
      const Rational factor = a[r * cols + c] / a[rank * cols + c];
      for (std::size_t k = c; k < cols; ++k) a[r * cols + k] -= factor * a[rank * cols + k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t rational_rank(std::vector<std::int64_t> entries, std::size_t rows, std::size_t cols) {
  if (entries.size() != rows * cols) {
    throw Error(ErrorCode::kInvalidArgument, "matrix entry count does not match its shape");
  }
  if (rows == 0 || cols == 0) return 0;
  try {
    return integer_rank(entries, rows, cols);
  } catch (const Overflow&) {
    return exact_rational_rank(entries, rows, cols);
  }
}

std::vector<BettiReadout> oracle_betti_curve(const DistanceMatrix& dist, std::size_t max_dim,
                                             std::span<const double> epsilons) {
  const std::size_t n = dist.size();
  if (n > kOracleMaxPoints) {
    throw Error(ErrorCode::kTooLarge, "oracle limited to " + std::to_string(kOracleMaxPoints) +
                                          " points, got " + std::to_string(n));
  }
  if (!std::is_sorted(epsilons.begin(), epsilons.end())) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon grid must be sorted ascending");
  }
  const std::size_t top = max_dim + 1;  // d_{max_dim+1} is needed for H_{max_dim}
  const std::uint32_t subsets = std::uint32_t{1} << n;

  std::vector<BettiReadout> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    // simplices[k] holds vertex bitmasks of the k-simplices present at eps.
    std::vector<std::vector<std::uint32_t>> simplices(top + 1);
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
      const std::size_t size = static_cast<std::size_t>(std::popcount(mask));
      if (size > top + 1) continue;
      bool present = true;
      for (std::size_t i = 0; i < n && present; ++i) {
        if (!(mask >> i & 1U)) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          if ((mask >> j & 1U) && dist(i, j) > eps) {
            present = false;
            break;
          }
        }
      }
      if (present) simplices[size - 1].push_back(mask);
    }

    // rank[k] = rank of d_k : C_k -> C_{k-1}; rank[0] = 0.
    std::vector<std::size_t> rank(top + 2, 0);
    for (std::size_t k = 1; k <= top; ++k) {
      const auto& rows = simplices[k - 1];
      const auto& cols = simplices[k];
      if (rows.empty() || cols.empty()) continue;
      std::unordered_map<std::uint32_t, std::size_t> row_of;
      for (std::size_t r = 0; r < rows.size(); ++r) row_of.emplace(rows[r], r);
      std::vector<std::int64_t> m(rows.size() * cols.size(), 0);
      for (std::size_t c = 0; c < cols.size(); ++c) {
        std::int64_t sign = 1;
        for (std::size_t v = 0; v < n; ++v) {
          if (!(cols[c] >> v & 1U)) continue;
          const std::uint32_t face = cols[c] & ~(std::uint32_t{1} << v);
          m[row_of.at(face) * cols.size() + c] = sign;
          sign = -sign;
        }
      }
      rank[k] = rational_rank(std::move(m), rows.size(), cols.size());
    }

    BettiReadout readout;
    readout.components = simplices[0].size() - rank[1];
    readout.betti.counts.resize(max_dim, 0);
    for (std::size_t k = 1; k <= max_dim; ++k) {
      readout.betti.counts[k - 1] =
          static_cast<std::uint32_t>(simplices[k].size() - rank[k] - rank[k + 1]);
    }
    out.push_back(std::move(readout));
  }
  return out;
}

}  // namespace perfo
