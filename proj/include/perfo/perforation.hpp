// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "perfo/complex.hpp"
#include "perfo/geometry.hpp"
#include "perfo/persistence.hpp"

namespace perfo {

inline constexpr std::size_t kMaxPrimeIndex = 1000;
inline constexpr double kDefaultDecodeTolerance = 1e-6;
inline constexpr std::size_t kDefaultDecodeLength = 4;

/// p_1 = 2, p_2 = 3, ... Throws OutOfRange outside [1, kMaxPrimeIndex].
std::uint64_t nth_prime(std::size_t n);

/// The settings a perforation value depends on. Values computed under
/// different fingerprints are not comparable.
struct PerforationFingerprint {
  double threshold = kDefaultPersistenceThreshold;
  std::size_t max_dim = 2;
  friend bool operator==(const PerforationFingerprint&, const PerforationFingerprint&) = default;
};

struct PerforationValue {
  double phi = 0.0;
  BettiSequence source;
  std::optional<PerforationFingerprint> fingerprint;
};

/// phi = sum_i H_i ln p_i over i >= 1, natural logarithm, accumulated in
/// ascending dimension order.
PerforationValue perforation(const BettiSequence& betti,
                             std::optional<PerforationFingerprint> fingerprint = std::nullopt);

/// Inverse of perforation(): finds the exponents h_1..h_L (L = max_length)
/// with P = prod p_i^h_i closest to e^phi and accepts it when
/// |e^phi - P| <= tolerance * P. The search runs in log space, so it stays
/// exact for values of e^phi far beyond 64-bit integers (phi < 700).
/// Result has no trailing zeros. Throws NotEncodable when no candidate
/// passes, InvalidArgument for negative or non-finite phi.
BettiSequence decode_perforation(double phi, double tolerance = kDefaultDecodeTolerance,
                                 std::size_t max_length = kDefaultDecodeLength);

/// Everything that turns one cloud into one perforation value.
struct TopologyConfig {
  Metric metric = Metric::kEuclidean;
  std::size_t max_dim = 2;             // highest homology dimension
  std::optional<double> max_epsilon;   // nullopt: the cloud's diameter
  double threshold = kDefaultPersistenceThreshold;
  std::size_t budget = kDefaultSimplexBudget;
};

/// distances -> VR filtration (simplices up to max_dim + 1) -> persistence
/// -> persistent_betti -> perforation.
PerforationValue measure_perforation(const PointCloud& cloud, const TopologyConfig& config);

/// The diagram measure_perforation() thresholds.
PersistenceDiagram cloud_diagram(const PointCloud& cloud, const TopologyConfig& config);

}  // namespace perfo
