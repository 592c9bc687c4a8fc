// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

/* C interface to the perfo library.
 *
 * Every fallible call returns a perfo_status. On failure the message for the
 * calling thread is available from perfo_last_error() until the next call.
 * Objects returned through out-parameters are owned by the caller and are
 * released with the matching *_free function. Strings returned as char* are
 * released with perfo_string_free.
 */
#ifndef PERFO_PERFO_H_
#define PERFO_PERFO_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(PERFO_BUILDING_LIBRARY)
#define PERFO_API __declspec(dllexport)
#else
#define PERFO_API __declspec(dllimport)
#endif
#else
#define PERFO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum perfo_status {
  PERFO_OK = 0,
  PERFO_ERR_INVALID_ARGUMENT = 1,
  PERFO_ERR_ZERO_VECTOR = 2,
  PERFO_ERR_INVALID_SHAPE_PARAMS = 3,
  PERFO_ERR_RANK = 4,
  PERFO_ERR_BUDGET_EXCEEDED = 5,
  PERFO_ERR_INVALID_FILTRATION = 6,
  PERFO_ERR_TOO_LARGE = 7,
  PERFO_ERR_OUT_OF_RANGE = 8,
  PERFO_ERR_NOT_ENCODABLE = 9,
  PERFO_ERR_UNSUPPORTED_LENS_DIM = 10,
  PERFO_ERR_SERIES_TOO_SHORT = 11,
  PERFO_ERR_BAD_MAGIC = 12,
  PERFO_ERR_TRUNCATED_FILE = 13,
  PERFO_ERR_SHAPE_MISMATCH = 14,
  PERFO_ERR_NON_FINITE_VALUE = 15,
  PERFO_ERR_EPOCH_OUT_OF_RANGE = 16,
  PERFO_ERR_IO = 17,
  PERFO_ERR_INTERNAL = 99
} perfo_status;

typedef struct perfo_cloud perfo_cloud;
typedef struct perfo_diagram perfo_diagram;
typedef struct perfo_graph perfo_graph;
typedef struct perfo_corpus perfo_corpus;

PERFO_API const char* perfo_version(void);
PERFO_API const char* perfo_status_string(perfo_status status);
PERFO_API const char* perfo_last_error(void);
PERFO_API void perfo_string_free(char* s);

/* ---- point clouds ---- */

typedef struct perfo_shape_params {
  double radius;       /* circle, sphere */
  double major_radius; /* torus */
  double minor_radius; /* torus */
  size_t blob_dim;     /* gaussian_blob */
  double blob_scale;   /* gaussian_blob standard deviation */
} perfo_shape_params;

PERFO_API void perfo_shape_params_default(perfo_shape_params* params);

/* coords is row-major, n * dim values. */
PERFO_API perfo_status perfo_cloud_create(size_t n, size_t dim, const double* coords,
                                          perfo_cloud** out);
/* shape: "circle", "sphere", "torus", "gaussian_blob". */
PERFO_API perfo_status perfo_cloud_sample(const char* shape, size_t n,
                                          const perfo_shape_params* params, double noise_sigma,
                                          uint64_t seed, perfo_cloud** out);
/* An HST1 file (one sentence at one epoch) or a text file of numeric rows
 * separated by commas or whitespace. */
PERFO_API perfo_status perfo_cloud_load(const char* path, const char* sentence_id, size_t epoch,
                                        perfo_cloud** out);
PERFO_API size_t perfo_cloud_size(const perfo_cloud* cloud);
PERFO_API size_t perfo_cloud_dim(const perfo_cloud* cloud);
PERFO_API const double* perfo_cloud_data(const perfo_cloud* cloud);
PERFO_API perfo_status perfo_cloud_pca(const perfo_cloud* cloud, size_t k, perfo_cloud** out);
PERFO_API perfo_status perfo_cloud_collapse(const perfo_cloud* cloud, double radius,
                                            perfo_cloud** out);
/* Writes the cloud as a one-tensor, one-epoch HST1 file. */
PERFO_API perfo_status perfo_cloud_write(const perfo_cloud* cloud, const char* sentence_id,
                                         const char* path);
PERFO_API void perfo_cloud_free(perfo_cloud* cloud);

/* ---- persistence ---- */

typedef struct perfo_topology_config {
  const char* metric;  /* "euclidean" or "cosine_distance" */
  size_t max_dim;      /* highest homology dimension */
  double max_epsilon;  /* <= 0: the cloud's diameter */
  double threshold;    /* fraction of max_epsilon */
  size_t budget;       /* simplex cap */
} perfo_topology_config;

typedef struct perfo_bar {
  size_t dim;
  double birth;
  double death; /* +inf for essential dimension-0 bars */
  int truncated;
} perfo_bar;

PERFO_API void perfo_topology_config_default(perfo_topology_config* config);

PERFO_API perfo_status perfo_diagram_compute(const perfo_cloud* cloud,
                                             const perfo_topology_config* config,
                                             perfo_diagram** out);
PERFO_API size_t perfo_diagram_bar_count(const perfo_diagram* diagram);
PERFO_API perfo_status perfo_diagram_bar(const perfo_diagram* diagram, size_t index,
                                         perfo_bar* out);
PERFO_API double perfo_diagram_max_epsilon(const perfo_diagram* diagram);
/* counts receives max_dim values (dims 1..max_dim); *len is set to max_dim. */
PERFO_API perfo_status perfo_diagram_betti_at(const perfo_diagram* diagram, double epsilon,
                                              size_t* components, uint32_t* counts,
                                              size_t capacity, size_t* len);
PERFO_API perfo_status perfo_diagram_persistent_betti(const perfo_diagram* diagram,
                                                      double threshold, uint32_t* counts,
                                                      size_t capacity, size_t* len);
/* Barcode JSON with the manifest built from config. */
PERFO_API perfo_status perfo_diagram_to_json(const perfo_diagram* diagram,
                                             const perfo_topology_config* config, char** out);
PERFO_API void perfo_diagram_free(perfo_diagram* diagram);

/* ---- perforation ---- */

PERFO_API perfo_status perfo_nth_prime(size_t n, uint64_t* out);
PERFO_API perfo_status perfo_perforation(const uint32_t* betti, size_t len, double* out);
/* *len receives the trimmed sequence length. */
PERFO_API perfo_status perfo_decode(double phi, double tolerance, size_t max_length,
                                    uint32_t* betti, size_t capacity, size_t* len);
PERFO_API perfo_status perfo_cloud_perforation(const perfo_cloud* cloud,
                                               const perfo_topology_config* config,
                                               double* out);

/* ---- mapper ---- */

typedef struct perfo_mapper_config {
  const char* lens;       /* "pca:k" or "coord:i" */
  size_t resolution;
  double overlap;
  double linkage_epsilon; /* <= 0: automatic */
  size_t output_dim;
  size_t pca_pre;         /* 0: no pre-projection */
  double collapse_radius; /* <= 0: no collapse */
} perfo_mapper_config;

typedef struct perfo_graph_stats {
  size_t components;
  size_t cycle_rank;
  size_t nodes;
  size_t edges;
} perfo_graph_stats;

PERFO_API void perfo_mapper_config_default(perfo_mapper_config* config);
PERFO_API perfo_status perfo_graph_build(const perfo_cloud* cloud,
                                         const perfo_mapper_config* config, perfo_graph** out);
PERFO_API perfo_status perfo_graph_stats_get(const perfo_graph* graph, perfo_graph_stats* out);
PERFO_API perfo_status perfo_graph_to_json(const perfo_graph* graph, char** out);
PERFO_API perfo_status perfo_graph_edge_list(const perfo_graph* graph, char** out);
PERFO_API void perfo_graph_free(perfo_graph* graph);

/* ---- sliding window ---- */

PERFO_API perfo_status perfo_window_embed(const double* series, size_t length, size_t d,
                                          size_t tau, perfo_cloud** out);
/* One value per column of the state matrix; columns too short for the
 * window get NaN. */
PERFO_API perfo_status perfo_window_perforation(const perfo_cloud* state_matrix, size_t d,
                                                size_t tau, int z_normalize,
                                                const perfo_topology_config* config,
                                                double* out, size_t capacity);

/* ---- state files and the pipeline ---- */

typedef struct perfo_corpus_spec {
  size_t sentences;
  size_t tokens;
  size_t state_dim;
  size_t epochs;
  const char* start; /* shape name */
  const char* end;
  perfo_shape_params params;
  double noise;
  uint64_t seed;
} perfo_corpus_spec;

typedef struct perfo_pipeline_config {
  perfo_topology_config topology;
  size_t sample_size;
  uint64_t seed;
  size_t jobs;
  size_t min_tokens;
} perfo_pipeline_config;

PERFO_API void perfo_corpus_spec_default(perfo_corpus_spec* spec);
PERFO_API void perfo_pipeline_config_default(perfo_pipeline_config* config);

PERFO_API perfo_status perfo_corpus_generate(const perfo_corpus_spec* spec, perfo_corpus** out);
PERFO_API perfo_status perfo_corpus_read(const char* path, perfo_corpus** out);
PERFO_API perfo_status perfo_corpus_write(const perfo_corpus* corpus, const char* path);
PERFO_API size_t perfo_corpus_size(const perfo_corpus* corpus);
PERFO_API void perfo_corpus_free(perfo_corpus* corpus);

/* Per-epoch curve as CSV and JSON (manifest embedded). */
PERFO_API perfo_status perfo_pipeline_run(const char* input_path, const char* layer,
                                          const perfo_pipeline_config* config, char** csv,
                                          char** json);

/* HST1 files get a structural check; JSON documents must carry a complete
 * manifest. */
PERFO_API perfo_status perfo_validate_file(const char* path);

#ifdef __cplusplus
}
#endif

#endif  // PERFO_PERFO_H_
