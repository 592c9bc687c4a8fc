// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "perfo/geometry.hpp"
#include "perfo/state_file.hpp"

namespace perfo {

/// A corpus whose per-sentence clouds morph from one shape into another over
/// the epoch axis: token i at epoch e sits at (1 - a) s_i + a t_i with
/// a = e / (epochs - 1), where s and t are samples of the start and end
/// shapes placed in a random orthonormal frame of the state space. When the
/// two shapes coincide the same sample is used, so the tensor is constant
/// across epochs.
struct CorpusSpec {
  std::size_t sentences = 40;
  std::size_t tokens = 32;
  std::size_t state_dim = 8;
  std::size_t epochs = 20;
  ShapeKind start = ShapeKind::kGaussianBlob;
  ShapeKind end = ShapeKind::kCircle;
  ShapeParams params{1.0, 2.0, 0.5, 1, 0.3};  // blob is a rod: 1-D Gaussian plus token noise
  double noise = 0.02;
  std::uint64_t seed = 0;
};

std::vector<StateTensor> generate_corpus(const CorpusSpec& spec);

}  // namespace perfo
