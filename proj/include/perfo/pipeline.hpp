// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "perfo/export.hpp"
#include "perfo/perforation.hpp"
#include "perfo/state_file.hpp"

namespace perfo {

struct PipelineConfig {
  TopologyConfig topology;
  std::size_t sample_size = 2000;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;        // worker threads; does not affect results
  std::size_t min_tokens = 3;  // shorter sentences are skipped and counted
};

/// Mean perforation over the sampled sentences of one epoch and the central
/// 98% interval (1st and 99th percentiles, linear interpolation). With no
/// usable sentence the statistics are NaN and samples is 0.
struct EpochSummary {
  std::size_t epoch = 0;
  double mean = 0.0;
  double low = 0.0;
  double high = 0.0;
  std::size_t samples = 0;
};

/// Seeded Fisher-Yates shuffle of [0, corpus); the first
/// min(sample_size, corpus) indices, in shuffled order.
std::vector<std::size_t> sample_sentences(std::size_t corpus, std::size_t sample_size,
                                          std::uint64_t seed);

/// Linear-interpolation percentile of ascending data, q in [0, 1]. NaN when
/// empty.
double percentile(std::span<const double> sorted, double q);

/// Values are sorted before reduction, so the summary does not depend on
/// evaluation order.
EpochSummary summarize(std::size_t epoch, std::vector<double> values);

/// Per-sentence perforation values at one epoch for the given sentences,
/// computed on `jobs` threads; entries for sentences shorter than
/// min_tokens are skipped and counted in *skipped.
std::vector<double> sentence_perforations(std::span<const StateTensor> tensors,
                                          std::span<const std::size_t> selection, std::size_t epoch,
                                          const PipelineConfig& config, std::size_t* skipped = nullptr);

/// Throws EpochOutOfRange if a selected tensor lacks the epoch.
EpochSummary epoch_perforation(std::span<const StateTensor> tensors, std::size_t epoch,
                               const PipelineConfig& config, std::size_t* skipped = nullptr);

struct PipelineResult {
  std::vector<EpochSummary> curve;
  Json manifest;
  std::string csv;   // "epoch,mean,p01,p99,n"
  std::string json;  // {"manifest", "curve"}
};

/// One EpochSummary per epoch over a single seeded sample of sentences.
/// Every tensor must have the same number of epochs (ShapeMismatch).
PipelineResult run_pipeline(std::span<const StateTensor> tensors, const std::string& layer,
                            const PipelineConfig& config, const std::string& input_label);

PipelineResult run_pipeline(const std::string& input_path, const std::string& layer,
                            const PipelineConfig& config);

std::string curve_csv(std::span<const EpochSummary> curve);

}  // namespace perfo
