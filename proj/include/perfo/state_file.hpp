// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perfo/geometry.hpp"

namespace perfo {

/// Hidden states of one sentence: n_tokens x state_dim x n_epochs floats in
/// (token, dim, epoch) row-major order.
struct StateTensor {
  std::string sentence_id;
  std::uint32_t n_tokens = 0;
  std::uint32_t state_dim = 0;
  std::uint32_t n_epochs = 0;
  std::vector<float> data;

  float at(std::size_t token, std::size_t dim, std::size_t epoch) const {
    return data[(token * state_dim + dim) * n_epochs + epoch];
  }

  /// tokens x state_dim cloud at one epoch, labelled by token index. Throws
  /// EpochOutOfRange.
  PointCloud slice(std::size_t epoch) const;

  friend bool operator==(const StateTensor&, const StateTensor&) = default;
};

// HST1 container, little-endian, no padding:
//   "HST1" | u32 version = 1 | u32 tensor count
//   per tensor: u16 id length | id bytes (UTF-8) | u32 n_tokens | u32 state_dim
//               | u32 n_epochs | n_tokens*state_dim*n_epochs f32
inline constexpr char kStateMagic[4] = {'H', 'S', 'T', '1'};
inline constexpr std::uint32_t kStateVersion = 1;

/// Throws InvalidArgument for ids longer than 65535 bytes, shape/data length
/// disagreement, state_dim or n_epochs of zero; NonFiniteValue for NaN/Inf.
std::string serialize_state(std::span<const StateTensor> tensors);

/// Throws BadMagic (magic or version), TruncatedFile (names the sentence),
/// ShapeMismatch (zero or overflowing dimensions, trailing bytes) and
/// NonFiniteValue.
std::vector<StateTensor> parse_state(std::string_view bytes);

std::vector<StateTensor> read_state_file(const std::string& path);
void write_state_file(std::span<const StateTensor> tensors, const std::string& path);

/// Numeric rows separated by commas or whitespace; '#' starts a comment.
/// Throws InvalidArgument for ragged rows or unparsable fields.
PointCloud parse_cloud_text(std::string_view text);

/// A cloud from an HST1 file (the tensor named `sentence_id`, or the first
/// one when empty, at `epoch`) or from a text file.
PointCloud read_cloud_file(const std::string& path, const std::string& sentence_id,
                           std::size_t epoch);

/// One-epoch tensor holding a cloud (tokens = points).
StateTensor tensor_from_cloud(const PointCloud& cloud, std::string sentence_id);

}  // namespace perfo
