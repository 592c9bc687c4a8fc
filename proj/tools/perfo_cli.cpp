// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through perfo.h.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "perfo/perfo.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct DataError {
  std::string message;
};

void check(perfo_status status) {
  if (status != PERFO_OK) {
    throw DataError{std::string(perfo_status_string(status)) + ": " + perfo_last_error()};
  }
}

struct CloudDeleter {
  void operator()(perfo_cloud* c) const { perfo_cloud_free(c); }
};
struct DiagramDeleter {
  void operator()(perfo_diagram* d) const { perfo_diagram_free(d); }
};
struct GraphDeleter {
  void operator()(perfo_graph* g) const { perfo_graph_free(g); }
};
struct CorpusDeleter {
  void operator()(perfo_corpus* c) const { perfo_corpus_free(c); }
};
struct StringDeleter {
  void operator()(char* s) const { perfo_string_free(s); }
};
using Cloud = std::unique_ptr<perfo_cloud, CloudDeleter>;
using Diagram = std::unique_ptr<perfo_diagram, DiagramDeleter>;
using Graph = std::unique_ptr<perfo_graph, GraphDeleter>;
using Corpus = std::unique_ptr<perfo_corpus, CorpusDeleter>;
using String = std::unique_ptr<char, StringDeleter>;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError{"cannot write '" + path + "'"};
  file << text;
  if (!file) throw DataError{"write to '" + path + "' failed"};
}

std::string format_real(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

// Flags shared by every subcommand that computes persistence.
struct TopologyFlags {
  std::string metric = "euclidean";
  std::size_t max_dim = 0;
  double max_eps = 0.0;
  double threshold = 0.0;
  std::size_t budget = 0;

  TopologyFlags() {
    perfo_topology_config d;
    perfo_topology_config_default(&d);
    max_dim = d.max_dim;
    threshold = d.threshold;
    budget = d.budget;
  }

  void add_to(CLI::App* app) {
    app->add_option("--metric", metric, "euclidean or cosine_distance")
        ->check(CLI::IsMember({"euclidean", "cosine_distance"}));
    app->add_option("--max-dim", max_dim, "highest homology dimension")->capture_default_str();
    app->add_option("--max-eps", max_eps, "filtration cap; 0 means the cloud diameter")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--threshold", threshold, "bar length cutoff as a fraction of max-eps")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app->add_option("--budget", budget, "simplex cap")->capture_default_str();
  }

  perfo_topology_config config() const {
    return {metric.c_str(), max_dim, max_eps, threshold, budget};
  }
};

struct SliceFlags {
  std::string input;
  std::string sentence;
  std::size_t epoch = 0;

  void add_to(CLI::App* app) {
    app->add_option("input", input, "HST1 file or text cloud")->required();
    app->add_option("--sentence", sentence, "sentence id inside an HST1 file (default: first)");
    app->add_option("--epoch", epoch, "epoch inside an HST1 file")->capture_default_str();
  }

  Cloud load() const {
    perfo_cloud* raw = nullptr;
    check(perfo_cloud_load(input.c_str(), sentence.c_str(), epoch, &raw));
    return Cloud(raw);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological summaries of point clouds and hidden-state corpora"};
  app.set_version_flag("--version", std::string(perfo_version()));
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "write synthetic fixtures as HST1");
  gen->require_subcommand(1);

  perfo_shape_params shape_params;
  perfo_shape_params_default(&shape_params);
  std::string shape_kind = "circle";
  std::size_t shape_n = 100;
  double shape_noise = 0.0;
  std::uint64_t shape_seed = 0;
  std::string shape_out;
  auto* gen_shape = gen->add_subcommand("shape", "one cloud from a known manifold");
  gen_shape->add_option("--kind", shape_kind, "circle, sphere, torus or gaussian_blob")
      ->check(CLI::IsMember({"circle", "sphere", "torus", "gaussian_blob", "blob"}));
  gen_shape->add_option("-n,--points", shape_n, "number of points")->capture_default_str();
  gen_shape->add_option("--noise", shape_noise, "Gaussian noise sigma")->capture_default_str();
  gen_shape->add_option("--seed", shape_seed)->capture_default_str();
  gen_shape->add_option("--radius", shape_params.radius)->capture_default_str();
  gen_shape->add_option("--major-radius", shape_params.major_radius)->capture_default_str();
  gen_shape->add_option("--minor-radius", shape_params.minor_radius)->capture_default_str();
  gen_shape->add_option("--blob-dim", shape_params.blob_dim)->capture_default_str();
  gen_shape->add_option("--blob-scale", shape_params.blob_scale)->capture_default_str();
  gen_shape->add_option("--out", shape_out, "output HST1 path")->required();

  perfo_corpus_spec corpus_spec;
  perfo_corpus_spec_default(&corpus_spec);
  std::string corpus_start = corpus_spec.start;
  std::string corpus_end = corpus_spec.end;
  std::string corpus_out;
  auto* gen_corpus = gen->add_subcommand("corpus", "sentences morphing between two shapes");
  gen_corpus->add_option("--sentences", corpus_spec.sentences)->capture_default_str();
  gen_corpus->add_option("--tokens", corpus_spec.tokens)->capture_default_str();
  gen_corpus->add_option("--state-dim", corpus_spec.state_dim)->capture_default_str();
  gen_corpus->add_option("--epochs", corpus_spec.epochs)->capture_default_str();
  gen_corpus->add_option("--start", corpus_start)->capture_default_str();
  gen_corpus->add_option("--end", corpus_end)->capture_default_str();
  gen_corpus->add_option("--radius", corpus_spec.params.radius)->capture_default_str();
  gen_corpus->add_option("--blob-dim", corpus_spec.params.blob_dim)->capture_default_str();
  gen_corpus->add_option("--blob-scale", corpus_spec.params.blob_scale)->capture_default_str();
  gen_corpus->add_option("--noise", corpus_spec.noise)->capture_default_str();
  gen_corpus->add_option("--seed", corpus_spec.seed)->capture_default_str();
  gen_corpus->add_option("--out", corpus_out, "output HST1 path")->required();

  // persist
  auto* persist = app.add_subcommand("persist", "barcode JSON for one cloud");
  SliceFlags persist_slice;
  TopologyFlags persist_topo;
  std::string persist_out;
  persist_slice.add_to(persist);
  persist_topo.add_to(persist);
  persist->add_option("--out", persist_out, "output path (default: stdout)");

  // perforation
  auto* perf = app.add_subcommand("perforation", "per-epoch perforation curve of an HST1 corpus");
  perfo_pipeline_config pipeline;
  perfo_pipeline_config_default(&pipeline);
  TopologyFlags perf_topo;
  std::string perf_input, perf_layer = "hidden", perf_out;
  perf->add_option("input", perf_input, "HST1 corpus")->required();
  perf->add_option("--layer", perf_layer, "layer label for the manifest")->capture_default_str();
  perf_topo.add_to(perf);
  perf->add_option("--sample", pipeline.sample_size, "sentences sampled")->capture_default_str();
  perf->add_option("--seed", pipeline.seed)->capture_default_str();
  perf->add_option("--jobs", pipeline.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  perf->add_option("--min-tokens", pipeline.min_tokens)->capture_default_str();
  perf->add_option("--out", perf_out, "output prefix; writes <out>.csv and <out>.json")->required();

  // mapper
  auto* map = app.add_subcommand("mapper", "mapper graph of one cloud");
  SliceFlags map_slice;
  perfo_mapper_config mapper;
  perfo_mapper_config_default(&mapper);
  std::string map_lens = mapper.lens, map_linkage = "auto", map_out;
  map_slice.add_to(map);
  map->add_option("--lens", map_lens, "pca:k or coord:i")->capture_default_str();
  map->add_option("--resolution", mapper.resolution)->check(CLI::PositiveNumber)->capture_default_str();
  map->add_option("--overlap", mapper.overlap)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  map->add_option("--linkage", map_linkage, "single-linkage epsilon or 'auto'")->capture_default_str();
  map->add_option("--output-dim", mapper.output_dim)->capture_default_str();
  map->add_option("--pca-pre", mapper.pca_pre, "project to k principal components first (0: off)")
      ->capture_default_str();
  map->add_option("--collapse", mapper.collapse_radius, "collapse blobs of this radius first (0: off)")
      ->capture_default_str();
  map->add_option("--out", map_out, "output prefix; writes <out>.json and <out>.edges")->required();

  // window
  auto* window = app.add_subcommand("window", "per-dimension sliding-window perforation");
  SliceFlags window_slice;
  TopologyFlags window_topo;
  std::size_t window_d = 3, window_tau = 1;
  bool window_z = false;
  std::string window_out;
  window_slice.add_to(window);
  window_topo.add_to(window);
  window->add_option("-d,--window-dim", window_d)->check(CLI::PositiveNumber)->capture_default_str();
  window->add_option("--tau", window_tau)->check(CLI::PositiveNumber)->capture_default_str();
  window->add_flag("--z-normalize", window_z, "standardise each series first");
  window->add_option("--out", window_out, "output CSV (default: stdout)");

  // decode
  auto* decode = app.add_subcommand("decode", "Betti sequence from a perforation value");
  double decode_phi = 0.0, decode_tol = 1e-6;
  std::size_t decode_len = 4;
  decode->add_option("phi", decode_phi)->required();
  decode->add_option("--tolerance", decode_tol)->capture_default_str();
  decode->add_option("--max-len", decode_len, "longest Betti sequence searched")->capture_default_str();

  // validate
  auto* validate = app.add_subcommand("validate", "check an HST1 file or a JSON manifest");
  std::string validate_path;
  validate->add_option("path", validate_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen_shape->parsed()) {
      perfo_cloud* raw = nullptr;
      check(perfo_cloud_sample(shape_kind.c_str(), shape_n, &shape_params, shape_noise, shape_seed, &raw));
      Cloud cloud(raw);
      check(perfo_cloud_write(cloud.get(), shape_kind.c_str(), shape_out.c_str()));
    } else if (gen_corpus->parsed()) {
      corpus_spec.start = corpus_start.c_str();
      corpus_spec.end = corpus_end.c_str();
      perfo_corpus* raw = nullptr;
      check(perfo_corpus_generate(&corpus_spec, &raw));
      Corpus corpus(raw);
      check(perfo_corpus_write(corpus.get(), corpus_out.c_str()));
    } else if (persist->parsed()) {
      Cloud cloud = persist_slice.load();
      const perfo_topology_config config = persist_topo.config();
      perfo_diagram* raw = nullptr;
      check(perfo_diagram_compute(cloud.get(), &config, &raw));
      Diagram diagram(raw);
      char* json = nullptr;
      check(perfo_diagram_to_json(diagram.get(), &config, &json));
      write_text(persist_out, String(json).get());
    } else if (perf->parsed()) {
      pipeline.topology = perf_topo.config();
      char* csv = nullptr;
      char* json = nullptr;
      check(perfo_pipeline_run(perf_input.c_str(), perf_layer.c_str(), &pipeline, &csv, &json));
      String csv_owner(csv), json_owner(json);
      write_text(perf_out + ".csv", csv);
      write_text(perf_out + ".json", json);
    } else if (map->parsed()) {
      if (map_linkage == "auto") {
        mapper.linkage_epsilon = 0.0;
      } else {
        try {
          mapper.linkage_epsilon = std::stod(map_linkage);
        } catch (const std::exception&) {
          std::cerr << "--linkage: expected a number or 'auto', got '" << map_linkage << "'\n";
          return kExitUsage;
        }
        if (!(mapper.linkage_epsilon > 0.0)) {
          std::cerr << "--linkage: must be positive\n";
          return kExitUsage;
        }
      }
      mapper.lens = map_lens.c_str();
      Cloud cloud = map_slice.load();
      perfo_graph* raw = nullptr;
      check(perfo_graph_build(cloud.get(), &mapper, &raw));
      Graph graph(raw);
      char* json = nullptr;
      check(perfo_graph_to_json(graph.get(), &json));
      String json_owner(json);
      char* edges = nullptr;
      check(perfo_graph_edge_list(graph.get(), &edges));
      String edges_owner(edges);
      write_text(map_out + ".json", json);
      write_text(map_out + ".edges", edges);
    } else if (window->parsed()) {
      Cloud cloud = window_slice.load();
      const perfo_topology_config config = window_topo.config();
      std::vector<double> values(perfo_cloud_dim(cloud.get()));
      check(perfo_window_perforation(cloud.get(), window_d, window_tau, window_z ? 1 : 0, &config,
                                     values.data(), values.size()));
      std::string csv = "dimension,perforation\n";
      for (std::size_t i = 0; i < values.size(); ++i) {
        csv += std::to_string(i) + ',' + (std::isnan(values[i]) ? "" : format_real(values[i])) + '\n';
      }
      write_text(window_out, csv);
    } else if (decode->parsed()) {
      std::vector<std::uint32_t> betti(decode_len);
      std::size_t len = 0;
      check(perfo_decode(decode_phi, decode_tol, decode_len, betti.data(), betti.size(), &len));
      std::string line;
      for (std::size_t i = 0; i < len; ++i) {
        if (!line.empty()) line += ' ';
        line += "H" + std::to_string(i + 1) + "=" + std::to_string(betti[i]);
      }
      std::cout << (line.empty() ? "H1=0" : line) << '\n';
    } else if (validate->parsed()) {
      check(perfo_validate_file(validate_path.c_str()));
      std::cout << validate_path << ": ok\n";
    }
  } catch (const DataError& e) {
    std::cerr << "error: " << e.message << '\n';
    return kExitData;
  }
  return 0;
}
