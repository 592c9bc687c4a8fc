// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "perfo/complex.hpp"
#include "perfo/geometry.hpp"
#include "perfo/polynomial.hpp"

namespace perfo {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultPersistenceThreshold = 0.1;
inline constexpr std::size_t kOracleMaxPoints = 12;
inline constexpr std::size_t kPolynomialMaxPoints = 64;

struct Bar {
  std::size_t dim = 0;
  double birth = 0.0;
  double death = kInfinity;
  // Class still alive at max_epsilon; death holds max_epsilon.
  bool truncated = false;

  double persistence() const noexcept { return death - birth; }
  bool infinite() const noexcept { return death == kInfinity; }
  friend bool operator==(const Bar&, const Bar&) = default;
};

/// H1..Hn. Components (H0) are reported separately.
struct BettiSequence {
  std::vector<std::uint32_t> counts;

  /// Copy without trailing zeros.
  BettiSequence trimmed() const;
  friend bool operator==(const BettiSequence&, const BettiSequence&) = default;
};

struct PersistenceDiagram {
  std::vector<Bar> bars;  // sorted by (dim, birth, death)
  std::size_t max_dim = 0;  // highest homology dimension reported
  double max_epsilon = 0.0;
  std::size_t n_points = 0;

  std::vector<Bar> bars_in_dim(std::size_t dim) const;
};

struct BettiReadout {
  std::size_t components = 0;
  BettiSequence betti;
  friend bool operator==(const BettiReadout&, const BettiReadout&) = default;
};

/// Pairs simplices by reducing the boundary matrix over Z/2, column by
/// column in filtration order, dimensions processed top-down with clearing.
/// A filtration whose top simplex dimension is k yields bars in dimensions
/// 0..k-1 (k-cycles cannot be killed inside it). Unpaired dim-0 classes get
/// an infinite death; unpaired higher classes are truncated at max_epsilon.
/// Throws InvalidFiltration if a face is missing or out of order.
PersistenceDiagram compute_persistence(const Filtration& filtration);

/// Bars alive at epsilon: birth <= epsilon < death (truncated bars are alive
/// at max_epsilon itself). Requires 0 <= epsilon <= max_epsilon.
BettiReadout betti_at(const PersistenceDiagram& diagram, double epsilon);

/// Per dimension >= 1, the number of bars with positive persistence of at
/// least threshold * max_epsilon. Requires 0 <= threshold <= 1.
BettiSequence persistent_betti(const PersistenceDiagram& diagram,
                               double threshold = kDefaultPersistenceThreshold);

/// Brute-force reference: for each epsilon, enumerate the static VR complex
/// from all vertex subsets and compute H_k = dim ker d_k - rank d_{k+1} over
/// the rationals. Exponential; throws TooLarge above kOracleMaxPoints points.
std::vector<BettiReadout> oracle_betti_curve(const DistanceMatrix& dist, std::size_t max_dim,
                                             std::span<const double> epsilons);

/// Exact rank of an integer matrix over Q (row-major, rows x cols).
std::size_t rational_rank(std::vector<std::int64_t> entries, std::size_t rows, std::size_t cols);

/// A cell of a filtered complex for the polynomial boundary computation.
/// faces[i] is the row of the face opposite the i-th vertex; its entry in the
/// boundary column is (-1)^i t^(step - face_step).
struct GradedCell {
  std::size_t step = 0;
  std::vector<std::size_t> faces;
};

struct PolyBoundaryResult {
  std::size_t rank = 0;
  PolyMatrix boundary;  // rows: faces in order; columns: cells in order
  PolyMatrix reduced;   // nonzero reduced columns first (in order), then zeros
};

/// Persistent boundary matrix over Q[t] and its rank by column reduction
/// with exact polynomial division. Cells must be listed with nondecreasing
/// steps and face steps may not exceed the cell's own step.
PolyBoundaryResult persistent_boundary_rank(std::span<const std::size_t> face_steps,
                                            std::span<const GradedCell> cells);

/// Same, for the dim-th boundary of a filtration: birth values are replaced
/// by their index among the filtration's distinct births. Requires dim >= 1
/// and at most kPolynomialMaxPoints points.
PolyBoundaryResult persistent_boundary_rank(const Filtration& filtration, std::size_t dim);

}  // namespace perfo
