#pragma once

#include "tada/expander.hpp"
#include "tada/sparsifier.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tada {

/// End-to-end knobs. Defaults: k = 128, h = 128, beta = 1, alpha = 0.5, two
/// walk steps, |C| = min(n, 4k) when centroids is 0, 128 pre-training epochs.
struct PipelineConfig {
  Index k = 128;
  Index h = 128;
  double gamma = 0.5;
  double beta = 1.0;
  double alpha = 0.5;
  Index walk_steps = 2;
  Index centroids = 0;  // 0 = auto
  double rho = 0.3;
  Index pretrain_epochs = 128;
  double lr = 0.05;
  std::uint64_t seed = 42;
  Index layers = 2;
  Index eval_epochs = 200;

  Index resolve_centroids(Index n) const;
  void validate() const;
};

struct RunReport {
  std::vector<std::pair<std::string, double>> timings_ms;
  Index nodes = 0;
  Index edges_before = 0;
  Index edges_removed = 0;
  Index isolated_nodes = 0;
  std::vector<double> loss_trace;
  double loss_monotone_fraction = 0.0;  // fraction of non-increasing epoch pairs
  std::optional<double> tada_test_accuracy;
  std::optional<double> baseline_test_accuracy;
  PipelineConfig config;

  std::string to_json() const;
};

struct PipelineResult {
  SketchedAdjacency sketch;
  ExpanderParams params;
  InitialFeatures features;
  SparsifiedGraph sparsified;
  RunReport report;
};

/// sketch -> pre-train -> reweight -> sparsify, then a downstream comparison
/// when the labels carry a test split. Pure function of (inputs, config).
PipelineResult run_pipeline(const PipelineConfig& cfg, const Graph& g, const Matrix& x,
                            const LabelVector& y);

struct EvalResult {
  double test_accuracy = 0.0;
  double train_accuracy = 0.0;
};

/// SGC-style evaluator: propagate features `layers` times through the
/// symmetric-normalized adjacency, then softmax regression on the result.
EvalResult eval_downstream(const Graph& g, const Matrix& features, const LabelVector& y,
                           Index layers, Index epochs, double lr, std::uint64_t seed);
EvalResult eval_downstream(const WeightedGraph& wg, const Matrix& features, const LabelVector& y,
                           Index layers, Index epochs, double lr, std::uint64_t seed);

struct BenchReport {
  double count_sketch_ms = 0.0;
  double rwr_sketch_ms = 0.0;
  int reps = 0;
};

/// Median wall times over `reps` runs (reps >= 3).
BenchReport bench_sketch(const Graph& g, Index k, int reps);

/// Writes every pipeline artifact under `dir` (created if missing) and the
/// report as report.json.
void persist_pipeline(const PipelineResult& result, const std::string& dir);

/// Serializes params as one matrix container per entry plus a manifest.
void save_expander_params(const ExpanderParams& p, const std::string& matrices_path,
                          const std::string& manifest_path);
ExpanderParams load_expander_params(const std::string& matrices_path,
                                    const std::string& manifest_path);

}  // namespace tada
