// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include "perfo/perfo.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <iterator>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "perfo/error.hpp"
#include "perfo/export.hpp"
#include "perfo/geometry.hpp"
#include "perfo/mapper.hpp"
#include "perfo/perforation.hpp"
#include "perfo/persistence.hpp"
#include "perfo/pipeline.hpp"
#include "perfo/sliding_window.hpp"
#include "perfo/state_file.hpp"
#include "perfo/synthetic.hpp"

struct perfo_cloud {
  perfo::PointCloud cloud;
};

struct perfo_diagram {
  perfo::PersistenceDiagram diagram;
};

struct perfo_graph {
  perfo::MapperGraph graph;
  perfo::Json manifest;
};

struct perfo_corpus {
  std::vector<perfo::StateTensor> tensors;
};

namespace {

thread_local std::string last_error;

perfo_status fail(perfo_status status, const char* what) {
  last_error = what;
  return status;
}

// Runs `body`, mapping exceptions to status codes.
template <typename Body>
perfo_status guarded(Body&& body) {
  try {
    last_error.clear();
    body();
    return PERFO_OK;
  } catch (const perfo::Error& e) {
    return fail(static_cast<perfo_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PERFO_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PERFO_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PERFO_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw perfo::Error(perfo::ErrorCode::kInvalidArgument, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

perfo::ShapeParams shape_params(const perfo_shape_params* p) {
  perfo::ShapeParams out;
  if (!p) return out;
  out.radius = p->radius;
  out.major_radius = p->major_radius;
  out.minor_radius = p->minor_radius;
  out.dim = p->blob_dim;
  out.scale = p->blob_scale;
  return out;
}

perfo::TopologyConfig topology(const perfo_topology_config* c) {
  perfo::TopologyConfig out;
  if (!c) return out;
  out.metric = perfo::parse_metric(c->metric ? c->metric : "euclidean");
  out.max_dim = c->max_dim;
  if (c->max_epsilon > 0.0) out.max_epsilon = c->max_epsilon;
  out.threshold = c->threshold;
  out.budget = c->budget;
  return out;
}

void copy_counts(const perfo::BettiSequence& seq, std::uint32_t* counts, std::size_t capacity,
                 std::size_t* len) {
  require(len != nullptr, "len must not be null");
  *len = seq.counts.size();
  if (seq.counts.size() > capacity) {
    throw perfo::Error(perfo::ErrorCode::kOutOfRange,
                       "buffer holds " + std::to_string(capacity) + " counts, need " +
                           std::to_string(seq.counts.size()));
  }
  require(counts != nullptr || seq.counts.empty(), "counts must not be null");
  std::copy(seq.counts.begin(), seq.counts.end(), counts);
}

}  // namespace

extern "C" {

const char* perfo_version(void) { return perfo::tool_version(); }

const char* perfo_status_string(perfo_status status) {
  if (status == PERFO_OK) return "ok";
  if (status == PERFO_ERR_INTERNAL) return "internal error";
  return perfo::to_string(static_cast<perfo::ErrorCode>(status));
}

const char* perfo_last_error(void) { return last_error.c_str(); }

void perfo_string_free(char* s) { std::free(s); }

void perfo_shape_params_default(perfo_shape_params* params) {
  if (!params) return;
  const perfo::ShapeParams d;
  *params = {d.radius, d.major_radius, d.minor_radius, d.dim, d.scale};
}

perfo_status perfo_cloud_create(size_t n, size_t dim, const double* coords, perfo_cloud** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    require(coords != nullptr || n * dim == 0, "coords must not be null");
    require(n > 0, "a cloud needs at least one point");
    std::vector<double> values(coords, coords + n * dim);
    *out = new perfo_cloud{perfo::PointCloud(dim, std::move(values))};
  });
}

perfo_status perfo_cloud_sample(const char* shape, size_t n, const perfo_shape_params* params,
                                double noise_sigma, uint64_t seed, perfo_cloud** out) {
  return guarded([&] {
    require(out != nullptr && shape != nullptr, "shape and out must not be null");
    *out = new perfo_cloud{
        perfo::sample_shape(perfo::parse_shape(shape), n, shape_params(params), noise_sigma, seed)};
  });
}

perfo_status perfo_cloud_load(const char* path, const char* sentence_id, size_t epoch,
                              perfo_cloud** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "path and out must not be null");
    *out = new perfo_cloud{perfo::read_cloud_file(path, sentence_id ? sentence_id : "", epoch)};
  });
}

size_t perfo_cloud_size(const perfo_cloud* cloud) { return cloud ? cloud->cloud.size() : 0; }

size_t perfo_cloud_dim(const perfo_cloud* cloud) { return cloud ? cloud->cloud.dim() : 0; }

const double* perfo_cloud_data(const perfo_cloud* cloud) {
  return cloud ? cloud->cloud.coords().data() : nullptr;
}

perfo_status perfo_cloud_pca(const perfo_cloud* cloud, size_t k, perfo_cloud** out) {
  return guarded([&] {
    require(cloud != nullptr && out != nullptr, "cloud and out must not be null");
    *out = new perfo_cloud{perfo::pca_project(cloud->cloud, k)};
  });
}

perfo_status perfo_cloud_collapse(const perfo_cloud* cloud, double radius, perfo_cloud** out) {
  return guarded([&] {
    require(cloud != nullptr && out != nullptr, "cloud and out must not be null");
    *out = new perfo_cloud{perfo::collapse_blobs(cloud->cloud, radius)};
  });
}

perfo_status perfo_cloud_write(const perfo_cloud* cloud, const char* sentence_id, const char* path) {
  return guarded([&] {
    require(cloud != nullptr && path != nullptr, "cloud and path must not be null");
    const perfo::StateTensor t = perfo::tensor_from_cloud(cloud->cloud, sentence_id ? sentence_id : "s0");
    perfo::write_state_file(std::span(&t, 1), path);
  });
}

void perfo_cloud_free(perfo_cloud* cloud) { delete cloud; }

void perfo_topology_config_default(perfo_topology_config* config) {
  if (!config) return;
  const perfo::TopologyConfig d;
  *config = {"euclidean", d.max_dim, 0.0, d.threshold, d.budget};
}

perfo_status perfo_diagram_compute(const perfo_cloud* cloud, const perfo_topology_config* config,
                                   perfo_diagram** out) {
  return guarded([&] {
    require(cloud != nullptr && out != nullptr, "cloud and out must not be null");
    *out = new perfo_diagram{perfo::cloud_diagram(cloud->cloud, topology(config))};
  });
}

size_t perfo_diagram_bar_count(const perfo_diagram* diagram) {
  return diagram ? diagram->diagram.bars.size() : 0;
}

perfo_status perfo_diagram_bar(const perfo_diagram* diagram, size_t index, perfo_bar* out) {
  return guarded([&] {
    require(diagram != nullptr && out != nullptr, "diagram and out must not be null");
    if (index >= diagram->diagram.bars.size()) {
      throw perfo::Error(perfo::ErrorCode::kOutOfRange, "bar index out of range");
    }
    const perfo::Bar& b = diagram->diagram.bars[index];
    *out = {b.dim, b.birth, b.death, b.truncated ? 1 : 0};
  });
}

double perfo_diagram_max_epsilon(const perfo_diagram* diagram) {
  return diagram ? diagram->diagram.max_epsilon : std::numeric_limits<double>::quiet_NaN();
}

perfo_status perfo_diagram_betti_at(const perfo_diagram* diagram, double epsilon,
                                    size_t* components, uint32_t* counts, size_t capacity,
                                    size_t* len) {
  return guarded([&] {
    require(diagram != nullptr, "diagram must not be null");
    const perfo::BettiReadout r = perfo::betti_at(diagram->diagram, epsilon);
    if (components) *components = r.components;
    copy_counts(r.betti, counts, capacity, len);
  });
}

perfo_status perfo_diagram_persistent_betti(const perfo_diagram* diagram, double threshold,
                                            uint32_t* counts, size_t capacity, size_t* len) {
  return guarded([&] {
    require(diagram != nullptr, "diagram must not be null");
    copy_counts(perfo::persistent_betti(diagram->diagram, threshold), counts, capacity, len);
  });
}

perfo_status perfo_diagram_to_json(const perfo_diagram* diagram,
                                   const perfo_topology_config* config, char** out) {
  return guarded([&] {
    require(diagram != nullptr && out != nullptr, "diagram and out must not be null");
    const perfo::Json manifest = perfo::make_manifest("barcode", perfo::topology_params(topology(config)));
    *out = copy_string(perfo::barcode_json(diagram->diagram, manifest));
  });
}

void perfo_diagram_free(perfo_diagram* diagram) { delete diagram; }

perfo_status perfo_nth_prime(size_t n, uint64_t* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = perfo::nth_prime(n);
  });
}

perfo_status perfo_perforation(const uint32_t* betti, size_t len, double* out) {
  return guarded([&] {
    require(out != nullptr && (betti != nullptr || len == 0), "betti and out must not be null");
    perfo::BettiSequence seq;
    seq.counts.assign(betti, betti + len);
    *out = perfo::perforation(seq).phi;
  });
}

perfo_status perfo_decode(double phi, double tolerance, size_t max_length, uint32_t* betti,
                          size_t capacity, size_t* len) {
  return guarded([&] {
    copy_counts(perfo::decode_perforation(phi, tolerance, max_length), betti, capacity, len);
  });
}

perfo_status perfo_cloud_perforation(const perfo_cloud* cloud, const perfo_topology_config* config,
                                     double* out) {
  return guarded([&] {
    require(cloud != nullptr && out != nullptr, "cloud and out must not be null");
    *out = perfo::measure_perforation(cloud->cloud, topology(config)).phi;
  });
}

void perfo_mapper_config_default(perfo_mapper_config* config) {
  if (!config) return;
  const perfo::MapperParams d;
  *config = {"pca:1", d.resolution, d.overlap, 0.0, d.output_dim, 0, 0.0};
}

perfo_status perfo_graph_build(const perfo_cloud* cloud, const perfo_mapper_config* config,
                               perfo_graph** out) {
  return guarded([&] {
    require(cloud != nullptr && out != nullptr, "cloud and out must not be null");
    perfo_mapper_config c;
    perfo_mapper_config_default(&c);
    if (config) c = *config;
    perfo::MapperParams params;
    params.lens = perfo::Lens::parse(c.lens ? c.lens : "pca:1");
    params.resolution = c.resolution;
    params.overlap = c.overlap;
    if (c.linkage_epsilon > 0.0) params.linkage_epsilon = c.linkage_epsilon;
    params.output_dim = c.output_dim;

    perfo::PointCloud input = cloud->cloud;
    if (c.pca_pre > 0) input = perfo::pca_project(input, c.pca_pre);
    if (c.collapse_radius > 0.0) input = perfo::collapse_blobs(input, c.collapse_radius);

    perfo::Json manifest_params;
    manifest_params["lens"] = params.lens.to_string();
    manifest_params["resolution"] = params.resolution;
    manifest_params["overlap"] = params.overlap;
    if (params.linkage_epsilon) {
      manifest_params["linkage_epsilon"] = *params.linkage_epsilon;
    } else {
      manifest_params["linkage_epsilon"] = "auto";
    }
    manifest_params["output_dim"] = params.output_dim;
    manifest_params["pca_pre"] = c.pca_pre;
    manifest_params["collapse_radius"] = c.collapse_radius;
    *out = new perfo_graph{perfo::mapper(input, params),
                           perfo::make_manifest("mapper", manifest_params)};
  });
}

perfo_status perfo_graph_stats_get(const perfo_graph* graph, perfo_graph_stats* out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "graph and out must not be null");
    const perfo::GraphStats s = perfo::graph_stats(graph->graph);
    *out = {s.components, s.cycle_rank, s.nodes, s.edges};
  });
}

perfo_status perfo_graph_to_json(const perfo_graph* graph, char** out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "graph and out must not be null");
    *out = copy_string(perfo::mapper_json(graph->graph, graph->manifest));
  });
}

perfo_status perfo_graph_edge_list(const perfo_graph* graph, char** out) {
  return guarded([&] {
    require(graph != nullptr && out != nullptr, "graph and out must not be null");
    *out = copy_string(perfo::to_edge_list(graph->graph));
  });
}

void perfo_graph_free(perfo_graph* graph) { delete graph; }

perfo_status perfo_window_embed(const double* series, size_t length, size_t d, size_t tau,
                                perfo_cloud** out) {
  return guarded([&] {
    require(out != nullptr && (series != nullptr || length == 0), "series and out must not be null");
    perfo::ScalarSeries s;
    s.values.assign(series, series + length);
    *out = new perfo_cloud{perfo::sliding_window_embed(s, {d, tau, false})};
  });
}

perfo_status perfo_window_perforation(const perfo_cloud* state_matrix, size_t d, size_t tau,
                                      int z_normalize, const perfo_topology_config* config,
                                      double* out, size_t capacity) {
  return guarded([&] {
    require(state_matrix != nullptr && out != nullptr, "state_matrix and out must not be null");
    const auto values = perfo::per_dimension_perforation(state_matrix->cloud,
                                                         {d, tau, z_normalize != 0}, topology(config));
    if (values.size() > capacity) {
      throw perfo::Error(perfo::ErrorCode::kOutOfRange, "output buffer too small");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      out[i] = values[i].value_or(std::numeric_limits<double>::quiet_NaN());
    }
  });
}

void perfo_corpus_spec_default(perfo_corpus_spec* spec) {
  if (!spec) return;
  const perfo::CorpusSpec d;
  spec->sentences = d.sentences;
  spec->tokens = d.tokens;
  spec->state_dim = d.state_dim;
  spec->epochs = d.epochs;
  spec->start = "gaussian_blob";
  spec->end = "circle";
  spec->params = {d.params.radius, d.params.major_radius, d.params.minor_radius, d.params.dim,
                  d.params.scale};
  spec->noise = d.noise;
  spec->seed = d.seed;
}

void perfo_pipeline_config_default(perfo_pipeline_config* config) {
  if (!config) return;
  const perfo::PipelineConfig d;
  perfo_topology_config_default(&config->topology);
  config->sample_size = d.sample_size;
  config->seed = d.seed;
  config->jobs = d.jobs;
  config->min_tokens = d.min_tokens;
}

perfo_status perfo_corpus_generate(const perfo_corpus_spec* spec, perfo_corpus** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, "spec and out must not be null");
    perfo::CorpusSpec s;
    s.sentences = spec->sentences;
    s.tokens = spec->tokens;
    s.state_dim = spec->state_dim;
    s.epochs = spec->epochs;
    s.start = perfo::parse_shape(spec->start ? spec->start : "gaussian_blob");
    s.end = perfo::parse_shape(spec->end ? spec->end : "circle");
    s.params = shape_params(&spec->params);
    s.noise = spec->noise;
    s.seed = spec->seed;
    *out = new perfo_corpus{perfo::generate_corpus(s)};
  });
}

perfo_status perfo_corpus_read(const char* path, perfo_corpus** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "path and out must not be null");
    *out = new perfo_corpus{perfo::read_state_file(path)};
  });
}

perfo_status perfo_corpus_write(const perfo_corpus* corpus, const char* path) {
  return guarded([&] {
    require(corpus != nullptr && path != nullptr, "corpus and path must not be null");
    perfo::write_state_file(corpus->tensors, path);
  });
}

size_t perfo_corpus_size(const perfo_corpus* corpus) { return corpus ? corpus->tensors.size() : 0; }

void perfo_corpus_free(perfo_corpus* corpus) { delete corpus; }

perfo_status perfo_pipeline_run(const char* input_path, const char* layer,
                                const perfo_pipeline_config* config, char** csv, char** json) {
  return guarded([&] {
    require(input_path != nullptr && config != nullptr, "input_path and config must not be null");
    perfo::PipelineConfig c;
    c.topology = topology(&config->topology);
    c.sample_size = config->sample_size;
    c.seed = config->seed;
    c.jobs = config->jobs;
    c.min_tokens = config->min_tokens;
    const perfo::PipelineResult r = perfo::run_pipeline(input_path, layer ? layer : "", c);
    char* csv_copy = csv ? copy_string(r.csv) : nullptr;
    try {
      if (json) *json = copy_string(r.json);
    } catch (...) {
      std::free(csv_copy);
      throw;
    }
    if (csv) *csv = csv_copy;
  });
}

perfo_status perfo_validate_file(const char* path) {
  return guarded([&] {
    require(path != nullptr, "path must not be null");
    std::ifstream file(path, std::ios::binary);
    if (!file) throw perfo::Error(perfo::ErrorCode::kIo, std::string("cannot open '") + path + "'");
    const std::string bytes((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    const auto first = bytes.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && bytes[first] == '{') {
      const perfo::Json doc = perfo::Json::parse(bytes, nullptr, false);
      if (doc.is_discarded()) throw perfo::Error(perfo::ErrorCode::kInvalidArgument, "not valid JSON");
      const auto missing = perfo::missing_manifest_keys(doc);
      if (!missing.empty()) {
        std::string list;
        for (const auto& key : missing) list += (list.empty() ? "" : ", ") + key;
        throw perfo::Error(perfo::ErrorCode::kInvalidArgument, "manifest is missing: " + list);
      }
      return;
    }
    perfo::parse_state(bytes);
  });
}

}  // extern "C"
