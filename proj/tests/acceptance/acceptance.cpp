// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "../topology_checks.hpp"
#include "perfo/complex.hpp"
#include "perfo/error.hpp"
#include "perfo/mapper.hpp"
#include "perfo/perforation.hpp"
#include "perfo/persistence.hpp"
#include "perfo/pipeline.hpp"
#include "perfo/polynomial.hpp"
#include "perfo/rng.hpp"
#include "perfo/sliding_window.hpp"
#include "perfo/state_file.hpp"
#include "perfo/synthetic.hpp"

namespace {

using namespace perfo;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string counts_str(const BettiSequence& b) {
  std::string s = "[";
  for (std::size_t i = 0; i < b.counts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(b.counts[i]);
  }
  return s + "]";
}

PointCloud random_cloud(std::size_t n, std::size_t dim, Rng& rng) {
  std::vector<double> coords(n * dim);
  for (double& c : coords) c = rng.uniform(-1.0, 1.0);
  return PointCloud(dim, std::move(coords));
}

std::vector<double> midpoints(const Filtration& f) {
  std::set<double> births;
  for (std::size_t i = 0; i < f.size(); ++i) births.insert(f.birth(i));
  const std::vector<double> values(births.begin(), births.end());
  std::vector<double> grid{0.0};
  for (std::size_t i = 1; i < values.size(); ++i) grid.push_back((values[i - 1] + values[i]) / 2.0);
  return grid;
}

Filtration cloud_filtration(const PointCloud& cloud, const TopologyConfig& config) {
  return build_vr_filtration(pairwise_distances(cloud, config.metric), config.max_dim + 1,
                             config.max_epsilon, config.budget);
}

// Fixtures shared by the topology and Euler criteria.
struct Fixture {
  std::string name;
  PointCloud cloud;
  TopologyConfig config;
  std::vector<std::uint32_t> expected;
  double expected_phi;
};

std::vector<Fixture> manifold_fixtures() {
  TopologyConfig circle;
  circle.max_dim = 1;
  TopologyConfig sphere;
  sphere.max_epsilon = 1.1;
  TopologyConfig torus;
  torus.max_epsilon = 1.2;
  ShapeParams torus_params;
  torus_params.major_radius = 2.0;
  torus_params.minor_radius = 0.5;
  return {
      {"circle", sample_shape(ShapeKind::kCircle, 100, {}, 0.05, 0), circle, {1}, std::numbers::ln2},
      {"sphere", sample_shape(ShapeKind::kSphere, 300, {}, 0.0, 0), sphere, {0, 1}, std::log(3.0)},
      {"torus", sample_shape(ShapeKind::kTorus, 500, torus_params, 0.0, 0), torus, {2, 1},
       2.0 * std::numbers::ln2 + std::log(3.0)},
  };
}

std::vector<double> sine_series(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / n);
  return out;
}

constexpr std::size_t kSineLength = 50;
constexpr std::size_t kSineWindow = 3;
// N / 6 rounded.
constexpr std::size_t kSineDelay = 8;

Outcome oracle_equivalence() {
  Rng rng(20260101);
  std::size_t points = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(7);
    const std::size_t dim = 1 + rng.below(3);
    const auto dist = pairwise_distances(random_cloud(n, dim, rng));
    const Filtration f = build_vr_filtration(dist, 3);
    const PersistenceDiagram d = compute_persistence(f);
    const auto grid = midpoints(f);
    const auto oracle = oracle_betti_curve(dist, 2, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      ++points;
      if (!(betti_at(d, grid[g]) == oracle[g])) {
        return {false, "cloud " + std::to_string(trial) + " differs at epsilon " + std::to_string(grid[g])};
      }
    }
  }
  return {true, "200 clouds, " + std::to_string(points) + " grid points"};
}

Outcome known_topology() {
  std::string detail;
  bool pass = true;
  for (const Fixture& fx : manifold_fixtures()) {
    const PerforationValue value = measure_perforation(fx.cloud, fx.config);
    const bool ok = value.source.counts == fx.expected && std::abs(value.phi - fx.expected_phi) <= 1e-12;
    pass = pass && ok;
    detail += fx.name + " " + counts_str(value.source) + " phi=" + format_real(value.phi) + "; ";
  }
  return {pass, detail};
}

Outcome polynomial_boundary() {
  auto t_pow = [](long long c, std::size_t k) { return Polynomial::monomial(Rational(c), k); };
  const std::vector<std::size_t> face_steps{0, 1, 2};
  const std::vector<GradedCell> cells{{1, {1, 0}}, {1, {1, 0}}, {2, {0, 2}}, {2, {0, 2}}};
  const PolyBoundaryResult appendix = persistent_boundary_rank(face_steps, cells);
  PolyMatrix printed(3, 4);
  printed.at(0, 0) = t_pow(-1, 1);
  printed.at(0, 1) = t_pow(-1, 1);
  printed.at(0, 2) = t_pow(1, 2);
  printed.at(0, 3) = t_pow(1, 2);
  printed.at(1, 0) = t_pow(1, 0);
  printed.at(1, 1) = t_pow(1, 0);
  printed.at(2, 2) = t_pow(-1, 0);
  printed.at(2, 3) = t_pow(-1, 0);
  const bool matrix_ok = appendix.boundary == printed && appendix.rank == 2;

  const std::vector<Simplex> simplices = {{{0}, 0.0}, {{1}, 0.0}, {{0, 1}, 1.0}};
  const Filtration f(2, 1, 1.0, simplices);
  const PolyBoundaryResult two = persistent_boundary_rank(f, 1);
  const auto bars = compute_persistence(f).bars_in_dim(0);
  const bool bars_ok = bars.size() == 2 && bars[0].birth == 0.0 && bars[0].death == 1.0 &&
                       bars[1].birth == 0.0 && bars[1].infinite();
  const bool pass = matrix_ok && two.rank == 1 && bars_ok;
  return {pass, "appendix rank " + std::to_string(appendix.rank) + ", two-vertex rank " +
                    std::to_string(two.rank) + ", dim-0 bars " + std::to_string(bars.size())};
}

Outcome codec_round_trip() {
  Rng rng(4242);
  std::size_t failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::uint32_t> counts(rng.below(5));
    for (auto& c : counts) c = static_cast<std::uint32_t>(rng.below(11));
    const BettiSequence b{counts};
    try {
      if (!(decode_perforation(perforation(b).phi, 1e-6) == b.trimmed())) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  return {failures == 0, std::to_string(failures) + " failures in 1000"};
}

Outcome euler_identity() {
  std::vector<std::pair<std::string, Filtration>> filtrations;
  for (const Fixture& fx : manifold_fixtures()) filtrations.emplace_back(fx.name, cloud_filtration(fx.cloud, fx.config));
  TopologyConfig loop;
  loop.max_dim = 1;
  filtrations.emplace_back(
      "sine window", cloud_filtration(sliding_window_embed({sine_series(kSineLength), 0, "sine"},
                                                           {kSineWindow, kSineDelay, false}),
                                      loop));
  filtrations.emplace_back("blob", cloud_filtration(sample_shape(ShapeKind::kGaussianBlob, 60, {}, 0.0, 0),
                                                    TopologyConfig{}));
  const std::vector<Simplex> simplices = {{{0}, 0.0}, {{1}, 0.0}, {{0, 1}, 1.0}};
  filtrations.emplace_back("two-vertex", Filtration(2, 1, 1.0, simplices));
  Rng rng(99);
  for (int i = 0; i < 20; ++i) {
    filtrations.emplace_back("random", build_vr_filtration(pairwise_distances(random_cloud(8, 3, rng)), 3));
  }

  std::size_t checked = 0;
  for (const auto& [name, f] : filtrations) {
    const auto report = testing::check_euler(f, compute_persistence(f));
    checked += report.checked;
    if (report.failures) {
      return {false, name + ": " + std::to_string(report.failures) + " mismatches, first at " +
                         std::to_string(report.first_failure)};
    }
  }
  return {true, std::to_string(filtrations.size()) + " filtrations, " + std::to_string(checked) +
                    " birth values"};
}

bool share_point(const std::vector<MapperNode>& nodes, const std::vector<std::size_t>& tuple) {
  std::vector<std::size_t> common = nodes[tuple[0]].members;
  for (std::size_t k = 1; k < tuple.size() && !common.empty(); ++k) {
    std::vector<std::size_t> next;
    const auto& m = nodes[tuple[k]].members;
    std::set_intersection(common.begin(), common.end(), m.begin(), m.end(), std::back_inserter(next));
    common = std::move(next);
  }
  return !common.empty();
}

Outcome mapper_checks() {
  MapperParams circle_params;
  circle_params.lens = Lens::coordinate(0);
  circle_params.resolution = 4;
  circle_params.overlap = 0.5;
  const GraphStats circle = graph_stats(mapper(sample_shape(ShapeKind::kCircle, 100, {}, 0.05, 0), circle_params));
  const GraphStats blob = graph_stats(mapper(sample_shape(ShapeKind::kGaussianBlob, 100, {}, 0.0, 0), MapperParams{}));

  std::size_t covers = 0;
  std::size_t wrong = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Rng rng(seed);
    const PointCloud cloud = random_cloud(60, 2, rng);
    MapperParams params;
    params.lens = seed % 2 ? Lens::pca(2) : Lens::pca(1);
    params.resolution = seed % 2 ? 3 : 5;
    params.overlap = 0.2 + 0.05 * static_cast<double>(seed % 5);
    params.linkage_epsilon = 0.3;
    params.output_dim = 3;
    const MapperGraph graph = mapper(cloud, params);
    const std::size_t v = graph.nodes.size();
    if (v > 20) continue;
    ++covers;
    const std::set<std::vector<std::size_t>> emitted(graph.simplices.begin(), graph.simplices.end());
    if (emitted.size() != graph.simplices.size()) ++wrong;
    for (std::uint32_t mask = 1; mask < (1u << v); ++mask) {
      const int size = std::popcount(mask);
      if (size < 2 || size > 4) continue;
      std::vector<std::size_t> tuple;
      for (std::size_t i = 0; i < v; ++i) {
        if (mask & (1u << i)) tuple.push_back(i);
      }
      if ((emitted.count(tuple) == 1) != share_point(graph.nodes, tuple)) ++wrong;
    }
  }
  const bool pass = circle.cycle_rank == 1 && blob.cycle_rank == 0 && covers > 0 && wrong == 0;
  return {pass, "circle cycle_rank " + std::to_string(circle.cycle_rank) + ", blob cycle_rank " +
                    std::to_string(blob.cycle_rank) + ", " + std::to_string(covers) +
                    " covers checked exhaustively, " + std::to_string(wrong) + " nerve errors"};
}

Outcome sliding_window() {
  TopologyConfig config;
  config.max_dim = 1;
  const PointCloud sine = sliding_window_embed({sine_series(kSineLength), 0, "sine"},
                                               {kSineWindow, kSineDelay, false});
  const BettiSequence sine_betti = persistent_betti(cloud_diagram(sine, config), 0.1);
  const PointCloud flat = sliding_window_embed({std::vector<double>(kSineLength, 1.5), 0, "flat"},
                                               {kSineWindow, kSineDelay, false});
  const double flat_phi = measure_perforation(flat, config).phi;
  const bool pass = sine_betti.counts == std::vector<std::uint32_t>{1} && flat_phi == 0.0;
  return {pass, "sine N=50 d=3 tau=8 H1 " + counts_str(sine_betti) + " (expected [1]), constant phi " +
                    format_real(flat_phi)};
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome curve_reproduction() {
  PipelineConfig config;
  CorpusSpec spec;
  const auto rising = run_pipeline(generate_corpus(spec), "synthetic", config, "blob-to-circle");
  spec.end = spec.start;
  const auto control = run_pipeline(generate_corpus(spec), "synthetic", config, "blob-to-blob");

  bool monotone = true;
  for (std::size_t e = 1; e < rising.curve.size(); ++e) {
    if (rising.curve[e].mean < rising.curve[e - 1].mean) monotone = false;
  }
  const double first = rising.curve.front().mean;
  const double last = rising.curve.back().mean;
  double control_max = 0.0;
  for (const EpochSummary& s : control.curve) control_max = std::max(control_max, s.mean);
  const bool pass = rising.curve.size() == 20 && monotone && first < 0.05 &&
                    std::abs(last - std::numbers::ln2) <= 0.05 && control_max < 0.05;
  std::ostringstream out;
  out << "rising " << format_real(first) << " -> " << format_real(last)
      << (monotone ? " monotone" : " not monotone") << ", control max " << format_real(control_max);
  return {pass, out.str()};
}

Outcome determinism() {
  CorpusSpec spec;
  spec.sentences = 24;
  spec.epochs = 6;
  spec.seed = 11;
  const auto path = std::filesystem::temp_directory_path() /
                    ("perfo_acceptance_" + std::to_string(::getpid()) + ".hst");
  write_state_file(generate_corpus(spec), path.string());
  PipelineConfig config;
  config.sample_size = 16;
  config.seed = 5;
  const auto a = run_pipeline(path.string(), "L0", config);
  const auto b = run_pipeline(path.string(), "L0", config);
  config.jobs = 4;
  const auto c = run_pipeline(path.string(), "L0", config);
  std::filesystem::remove(path);
  const bool pass = a.csv == b.csv && a.json == b.json && a.csv == c.csv && a.json == c.json;
  return {pass, "3 runs (1, 1 and 4 threads), " + std::to_string(a.csv.size() + a.json.size()) + " bytes each"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds;  // 0: no runtime limit
  };
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", oracle_equivalence, 60.0},
      {2, "known-topology fixtures", known_topology, 120.0},
      {3, "polynomial boundary rank", polynomial_boundary, 0.0},
      {4, "perforation codec", codec_round_trip, 0.0},
      {5, "Euler characteristic identity", euler_identity, 0.0},
      {6, "mapper", mapper_checks, 0.0},
      {7, "sliding window", sliding_window, 0.0},
      {8, "qualitative curve", curve_reproduction, 300.0},
      {9, "determinism", determinism, 0.0},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = elapsed(start);
    if (c.limit_seconds > 0.0 && seconds >= c.limit_seconds) {
      outcome.pass = false;
      outcome.detail += "; over the time limit";
    }
    if (!outcome.pass) ++failed;
    std::printf("%s criterion %d (%s): %s [%.2fs]\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
