// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include "perfo/perforation.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "perfo/error.hpp"

namespace perfo {

namespace {

// The 1000th prime is 7919.
const std::vector<std::uint64_t>& prime_table() {
  static const std::vector<std::uint64_t> primes = [] {
    constexpr std::size_t kLimit = 7920;
    std::vector<bool> composite(kLimit, false);
    std::vector<std::uint64_t> out;
    for (std::size_t i = 2; i < kLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::size_t j = i * i; j < kLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

constexpr std::uint64_t kDecodeLeafBudget = 400'000'000;

struct DecodeSearch {
  double phi;
  double slack;
  std::vector<double> logs;        // ln p_1 .. ln p_L
  std::vector<std::uint32_t> exps;
  std::vector<std::uint32_t> best;
  double best_gap = kInfinity;
  std::uint64_t leaves = 0;

  // Assigns exponents for primes index..1 (0-based), largest first; the
  // exponent of 2 is solved directly.
  void run(std::size_t index, double partial) {
    const double remaining = phi - partial;
    if (index == 0) {
      if (++leaves > kDecodeLeafBudget) {
        throw Error(ErrorCode::kNotEncodable, "decode search budget exhausted; lower max_length");
      }
      const double h = std::max(0.0, std::round(remaining / logs[0]));
      const double gap = std::abs(remaining - h * logs[0]);
      if (gap < best_gap) {
        best_gap = gap;
        exps[0] = static_cast<std::uint32_t>(h);
        best = exps;
      }
      return;
    }
    const auto top = static_cast<std::uint32_t>(std::floor((remaining + slack) / logs[index]));
    for (std::uint32_t h = 0; h <= top; ++h) {
      exps[index] = h;
      run(index - 1, partial + h * logs[index]);
    }
    exps[index] = 0;
  }
};

}  // namespace

std::uint64_t nth_prime(std::size_t n) {
  if (n < 1 || n > kMaxPrimeIndex) {
    throw Error(ErrorCode::kOutOfRange,
                "prime index " + std::to_string(n) + " outside [1, " + std::to_string(kMaxPrimeIndex) + "]");
  }
  return prime_table()[n - 1];
}

PerforationValue perforation(const BettiSequence& betti,
                             std::optional<PerforationFingerprint> fingerprint) {
  if (betti.counts.size() > kMaxPrimeIndex) {
    throw Error(ErrorCode::kOutOfRange, "Betti sequence longer than the prime table");
  }
  PerforationValue out;
  out.source = betti;
  out.fingerprint = fingerprint;
  for (std::size_t i = 0; i < betti.counts.size(); ++i) {
    if (betti.counts[i] == 0) continue;
    out.phi += static_cast<double>(betti.counts[i]) *
               std::log(static_cast<double>(nth_prime(i + 1)));
  }
  return out;
}

BettiSequence decode_perforation(double phi, double tolerance, std::size_t max_length) {
  if (!std::isfinite(phi) || phi < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "perforation must be finite and >= 0");
  }
  if (!(tolerance >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be >= 0");
  if (phi >= 700.0) {
    throw Error(ErrorCode::kNotEncodable, "perforation >= 700 overflows exp()");
  }
  if (max_length < 1 || max_length > kMaxPrimeIndex) {
    throw Error(ErrorCode::kOutOfRange, "max_length outside [1, " + std::to_string(kMaxPrimeIndex) + "]");
  }

  DecodeSearch search{phi, std::log1p(tolerance) + 1e-9, {}, {}, {}, kInfinity, 0};
  for (std::size_t i = 1; i <= max_length; ++i) {
    search.logs.push_back(std::log(static_cast<double>(nth_prime(i))));
  }
  search.exps.assign(max_length, 0);
  search.run(max_length - 1, 0.0);

  double candidate = 0.0;
  for (std::size_t i = 0; i < search.best.size(); ++i) {
    if (search.best[i] != 0) candidate += search.best[i] * search.logs[i];
  }
  if (search.best.empty() || std::abs(std::expm1(phi - candidate)) > tolerance) {
    throw Error(ErrorCode::kNotEncodable,
                "e^phi is not a product of the first " + std::to_string(max_length) +
                    " primes within relative tolerance");
  }
  return BettiSequence{search.best}.trimmed();
}

PersistenceDiagram cloud_diagram(const PointCloud& cloud, const TopologyConfig& config) {
  const DistanceMatrix dist = pairwise_distances(cloud, config.metric);
  const Filtration filtration =
      build_vr_filtration(dist, config.max_dim + 1, config.max_epsilon, config.budget);
  return compute_persistence(filtration);
}

PerforationValue measure_perforation(const PointCloud& cloud, const TopologyConfig& config) {
  const PersistenceDiagram diagram = cloud_diagram(cloud, config);
  return perforation(persistent_betti(diagram, config.threshold),
                     PerforationFingerprint{config.threshold, config.max_dim});
}

}  // namespace perfo
