// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include "perfo/synthetic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "perfo/error.hpp"
#include "perfo/rng.hpp"

namespace perfo {

namespace {

Eigen::MatrixXd random_frame(std::size_t rows, std::size_t cols, Rng& rng) {
  Eigen::MatrixXd gaussian(rows, cols);
  for (Eigen::Index c = 0; c < gaussian.cols(); ++c) {
    for (Eigen::Index r = 0; r < gaussian.rows(); ++r) gaussian(r, c) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
  return qr.householderQ() * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(rows),
                                                        static_cast<Eigen::Index>(cols));
}

// Coordinates padded with zeros to `cols` columns.
Eigen::MatrixXd as_matrix(const PointCloud& cloud, std::size_t cols) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cloud.size()),
                                            static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t k = 0; k < cloud.dim(); ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = cloud.point(i)[k];
    }
  }
  return m;
}

// Minimum-cost perfect matching (Hungarian method with potentials).
// Returns assign[row] = column.
std::vector<std::size_t> min_cost_assignment(const Eigen::MatrixXd& cost) {
  const std::size_t n = static_cast<std::size_t>(cost.rows());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  for (std::size_t row = 1; row <= n; ++row) {
    owner[0] = row;
    std::size_t col0 = 0;
    std::vector<double> best(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col0] = 1;
      const std::size_t r = owner[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double reduced = cost(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(c - 1)) - u[r] - v[c];
        if (reduced < best[c]) {
          best[c] = reduced;
          way[c] = col0;
        }
        if (best[c] < delta) {
          delta = best[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[owner[c]] += delta;
          v[c] -= delta;
        } else {
          best[c] -= delta;
        }
      }
      col0 = col1;
    } while (owner[col0] != 0);
    do {
      const std::size_t prev = way[col0];
      owner[col0] = owner[prev];
      col0 = prev;
    } while (col0 != 0);
  }
  std::vector<std::size_t> assign(n, 0);
  for (std::size_t c = 1; c <= n; ++c) assign[owner[c] - 1] = c - 1;
  return assign;
}

}  // namespace

std::vector<StateTensor> generate_corpus(const CorpusSpec& spec) {
  if (spec.tokens < 1 || spec.epochs < 1) {
    throw Error(ErrorCode::kInvalidArgument, "corpus needs at least one token and one epoch");
  }
  ShapeParams params = spec.params;
  const auto native_dim = [&](ShapeKind kind) -> std::size_t {
    switch (kind) {
      case ShapeKind::kCircle: return 2;
      case ShapeKind::kSphere:
      case ShapeKind::kTorus: return 3;
      case ShapeKind::kGaussianBlob: return params.dim;
    }
    return 0;
  };
  const std::size_t start_dim = native_dim(spec.start);
  const std::size_t end_dim = native_dim(spec.end);
  if (spec.state_dim < std::max(start_dim, end_dim)) {
    throw Error(ErrorCode::kInvalidArgument, "state_dim " + std::to_string(spec.state_dim) +
                                                 " too small for the requested shapes");
  }

  Rng seeds(spec.seed);
  std::vector<StateTensor> corpus;
  corpus.reserve(spec.sentences);
  for (std::size_t s = 0; s < spec.sentences; ++s) {
    const std::uint64_t start_seed = seeds.below(UINT64_MAX);
    const std::uint64_t end_seed = seeds.below(UINT64_MAX);
    Rng rng(seeds.below(UINT64_MAX));

    // Both shapes live in one random plane (or 3-space) of the state space,
    // and each token moves to the end point matched to it at minimum total
    // squared distance, so intermediate epochs are a displacement
    // interpolation rather than a random shuffle.
    const std::size_t shape_dim = std::max(start_dim, end_dim);
    const PointCloud start = sample_shape(spec.start, spec.tokens, params, 0.0, start_seed);
    const Eigen::MatrixXd frame = random_frame(spec.state_dim, shape_dim, rng).transpose();
    const Eigen::MatrixXd from = as_matrix(start, shape_dim) * frame;
    Eigen::MatrixXd to = from;
    if (spec.start != spec.end) {
      const Eigen::MatrixXd target =
          as_matrix(sample_shape(spec.end, spec.tokens, params, 0.0, end_seed), shape_dim) * frame;
      Eigen::MatrixXd cost(from.rows(), target.rows());
      for (Eigen::Index i = 0; i < from.rows(); ++i) {
        for (Eigen::Index j = 0; j < target.rows(); ++j) cost(i, j) = (from.row(i) - target.row(j)).squaredNorm();
      }
      const auto assign = min_cost_assignment(cost);
      for (Eigen::Index i = 0; i < from.rows(); ++i) {
        to.row(i) = target.row(static_cast<Eigen::Index>(assign[static_cast<std::size_t>(i)]));
      }
    }
    Eigen::MatrixXd noise(spec.tokens, spec.state_dim);
    for (Eigen::Index c = 0; c < noise.cols(); ++c) {
      for (Eigen::Index r = 0; r < noise.rows(); ++r) noise(r, c) = spec.noise * rng.normal();
    }

    StateTensor t;
    t.sentence_id = "s" + std::to_string(s);
    t.n_tokens = static_cast<std::uint32_t>(spec.tokens);
    t.state_dim = static_cast<std::uint32_t>(spec.state_dim);
    t.n_epochs = static_cast<std::uint32_t>(spec.epochs);
    t.data.resize(spec.tokens * spec.state_dim * spec.epochs);
    for (std::size_t e = 0; e < spec.epochs; ++e) {
      const double a = spec.epochs == 1 ? 1.0 : static_cast<double>(e) / static_cast<double>(spec.epochs - 1);
      for (std::size_t i = 0; i < spec.tokens; ++i) {
        for (std::size_t k = 0; k < spec.state_dim; ++k) {
          const auto r = static_cast<Eigen::Index>(i);
          const auto c = static_cast<Eigen::Index>(k);
          const double v = (1.0 - a) * from(r, c) + a * to(r, c) + noise(r, c);
          t.data[(i * spec.state_dim + k) * spec.epochs + e] = static_cast<float>(v);
        }
      }
    }
    corpus.push_back(std::move(t));
  }
  return corpus;
}

}  // namespace perfo
