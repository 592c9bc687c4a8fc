// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include "perfo/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "perfo/error.hpp"
#include "perfo/rng.hpp"

namespace perfo {

std::vector<std::size_t> sample_sentences(std::size_t corpus, std::size_t sample_size,
                                          std::uint64_t seed) {
  std::vector<std::size_t> order(corpus);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = corpus; i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  order.resize(std::min(sample_size, corpus));
  return order;
}

double percentile(std::span<const double> sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

EpochSummary summarize(std::size_t epoch, std::vector<double> values) {
  std::sort(values.begin(), values.end());
  EpochSummary s;
  s.epoch = epoch;
  s.samples = values.size();
  if (values.empty()) {
    s.mean = s.low = s.high = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  s.low = percentile(values, 0.01);
  s.high = percentile(values, 0.99);
  return s;
}

std::vector<double> sentence_perforations(std::span<const StateTensor> tensors,
                                          std::span<const std::size_t> selection, std::size_t epoch,
                                          const PipelineConfig& config, std::size_t* skipped) {
  std::vector<std::size_t> usable;
  std::size_t short_count = 0;
  for (std::size_t index : selection) {
    const StateTensor& t = tensors[index];
    if (epoch >= t.n_epochs) {
      throw Error(ErrorCode::kEpochOutOfRange, "epoch " + std::to_string(epoch) + " out of range for '" +
                                                   t.sentence_id + "' with " +
                                                   std::to_string(t.n_epochs) + " epochs");
    }
    if (t.n_tokens < config.min_tokens) {
      ++short_count;
    } else {
      usable.push_back(index);
    }
  }
  if (skipped) *skipped = short_count;

  std::vector<double> values(usable.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t k = next++; k < usable.size(); k = next++) {
      try {
        values[k] = measure_perforation(tensors[usable[k]].slice(epoch), config.topology).phi;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = usable.size();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(config.jobs, 1, std::max<std::size_t>(usable.size(), 1));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return values;
}

EpochSummary epoch_perforation(std::span<const StateTensor> tensors, std::size_t epoch,
                               const PipelineConfig& config, std::size_t* skipped) {
  const auto selection = sample_sentences(tensors.size(), config.sample_size, config.seed);
  return summarize(epoch, sentence_perforations(tensors, selection, epoch, config, skipped));
}

std::string curve_csv(std::span<const EpochSummary> curve) {
  std::string out = "epoch,mean,p01,p99,n\n";
  for (const EpochSummary& s : curve) {
    out += std::to_string(s.epoch) + ',' + format_real(s.mean) + ',' + format_real(s.low) + ',' +
           format_real(s.high) + ',' + std::to_string(s.samples) + '\n';
  }
  return out;
}

PipelineResult run_pipeline(std::span<const StateTensor> tensors, const std::string& layer,
                            const PipelineConfig& config, const std::string& input_label) {
  std::size_t epochs = 0;
  if (!tensors.empty()) {
    epochs = tensors.front().n_epochs;
    for (const StateTensor& t : tensors) {
      if (t.n_epochs != epochs) {
        throw Error(ErrorCode::kShapeMismatch, "sentence '" + t.sentence_id + "' has " +
                                                   std::to_string(t.n_epochs) + " epochs, expected " +
                                                   std::to_string(epochs));
      }
    }
  }
  const auto selection = sample_sentences(tensors.size(), config.sample_size, config.seed);

  PipelineResult result;
  std::size_t skipped = 0;
  for (std::size_t e = 0; e < epochs; ++e) {
    result.curve.push_back(summarize(e, sentence_perforations(tensors, selection, e, config, &skipped)));
  }

  Json params;
  params["input"] = input_label;
  params["layer"] = layer;
  const Json topology = topology_params(config.topology);
  for (const auto& [key, value] : topology.items()) params[key] = value;
  params["sample_size"] = config.sample_size;
  params["seed"] = config.seed;
  params["min_tokens"] = config.min_tokens;
  params["sampled"] = selection.size();
  params["skipped_short"] = skipped;
  result.manifest = make_manifest("curve", params);

  result.csv = curve_csv(result.curve);
  Json doc;
  doc["manifest"] = result.manifest;
  Json rows = Json::array();
  for (const EpochSummary& s : result.curve) {
    Json row;
    row["epoch"] = s.epoch;
    row["mean"] = s.mean;
    row["p01"] = s.low;
    row["p99"] = s.high;
    row["n"] = s.samples;
    rows.push_back(std::move(row));
  }
  doc["curve"] = std::move(rows);
  result.json = doc.dump(2) + "\n";
  return result;
}

PipelineResult run_pipeline(const std::string& input_path, const std::string& layer,
                            const PipelineConfig& config) {
  const auto tensors = read_state_file(input_path);
  return run_pipeline(tensors, layer, config, input_path);
}

}  // namespace perfo
