#include "tada/pipeline.hpp"

#include "tada/matrix_io.hpp"
#include "tada/propagation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace tada {

namespace {

double ms_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

EvalResult eval_on(const Matrix& propagated, const LabelVector& y, Index epochs, double lr,
                   std::uint64_t seed) {
  if (y.count_split(Split::test) == 0) throw DataError("eval_downstream: empty test split");
  const SoftmaxModel model = train_softmax_classifier(propagated, y, epochs, lr, seed);
  EvalResult r;
  r.test_accuracy = split_accuracy(model, propagated, y, Split::test);
  r.train_accuracy = split_accuracy(model, propagated, y, Split::train);
  return r;
}

}  // namespace

Index PipelineConfig::resolve_centroids(Index n) const {
  if (centroids > 0) return std::min(centroids, n);
  return std::min(n, 4 * k);
}

void PipelineConfig::validate() const {
  if (k < 1) throw std::invalid_argument("config: k must be >= 1");
  if (h < 1) throw std::invalid_argument("config: h must be >= 1");
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("config: gamma outside [0,1)");
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("config: rho outside [0,1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("config: alpha outside (0,1)");
  if (beta < 0.0) throw std::invalid_argument("config: beta must be >= 0");
  if (walk_steps < 0 || pretrain_epochs < 0 || layers < 0 || eval_epochs < 0)
    throw std::invalid_argument("config: negative iteration count");
  if (lr <= 0.0) throw std::invalid_argument("config: lr must be positive");
  if (centroids > 0 && centroids < k)
    throw std::invalid_argument("config: centroid candidate set smaller than k");
}

PipelineResult run_pipeline(const PipelineConfig& cfg, const Graph& g, const Matrix& x,
                            const LabelVector& y) {
  cfg.validate();
  if (x.rows() != g.num_nodes()) throw DataError("pipeline: attribute rows != node count");
  if (y.size() != g.num_nodes()) throw DataError("pipeline: label count != node count");

  PipelineResult out;
  out.report.config = cfg;
  out.report.nodes = g.num_nodes();
  const Index c_size = cfg.resolve_centroids(g.num_nodes());
  if (cfg.k > c_size)
    throw std::invalid_argument("pipeline: k exceeds candidate set size for this graph");

  auto t0 = std::chrono::steady_clock::now();
  const CountSketch cs = build_count_sketch(g.num_nodes(), cfg.k, cfg.seed);
  const RwrSketch rs = build_rwr_sketch(g, cfg.k, c_size, cfg.walk_steps, cfg.alpha, cfg.seed);
  out.sketch = hybrid_sketch(g, cs, rs, cfg.beta);
  out.report.timings_ms.emplace_back("sketch", ms_since(t0));

  t0 = std::chrono::steady_clock::now();
  PretrainConfig pc;
  pc.hidden_dim = cfg.h;
  pc.gamma = cfg.gamma;
  pc.epochs = cfg.pretrain_epochs;
  pc.lr = cfg.lr;
  pc.seed = cfg.seed;
  auto [params, feats] = pretrain(out.sketch, x, y, pc);
  out.params = std::move(params);
  out.features = std::move(feats);
  out.report.timings_ms.emplace_back("pretrain", ms_since(t0));
  out.report.loss_trace = out.features.loss_trace;
  if (out.report.loss_trace.size() > 1) {
    Index ok = 0;
    for (std::size_t i = 1; i < out.report.loss_trace.size(); ++i)
      if (out.report.loss_trace[i] <= out.report.loss_trace[i - 1]) ++ok;
    out.report.loss_monotone_fraction =
        static_cast<double>(ok) / static_cast<double>(out.report.loss_trace.size() - 1);
  } else {
    out.report.loss_monotone_fraction = 1.0;
  }

  t0 = std::chrono::steady_clock::now();
  const WeightedGraph wg = reweight_edges(g, out.features.h0);
  out.report.timings_ms.emplace_back("reweight", ms_since(t0));

  t0 = std::chrono::steady_clock::now();
  out.sparsified = sparsify(wg, cfg.rho);
  out.report.timings_ms.emplace_back("sparsify", ms_since(t0));

  out.report.edges_before = g.num_edges();
  out.report.edges_removed = static_cast<Index>(out.sparsified.removed.size());
  out.report.isolated_nodes = out.sparsified.isolated_nodes;

  if (y.count_split(Split::test) > 0) {
    t0 = std::chrono::steady_clock::now();
    out.report.tada_test_accuracy =
        eval_downstream(out.sparsified.graph, out.features.h0, y, cfg.layers, cfg.eval_epochs,
                        cfg.lr, cfg.seed)
            .test_accuracy;
    out.report.baseline_test_accuracy =
        eval_downstream(g, x, y, cfg.layers, cfg.eval_epochs, cfg.lr, cfg.seed).test_accuracy;
    out.report.timings_ms.emplace_back("eval", ms_since(t0));
  }
  return out;
}

EvalResult eval_downstream(const Graph& g, const Matrix& features, const LabelVector& y,
                           Index layers, Index epochs, double lr, std::uint64_t seed) {
  if (layers < 0) throw std::invalid_argument("eval_downstream: layers must be >= 0");
  return eval_on(norm_adj_power_multiply(g, features, layers), y, epochs, lr, seed);
}

EvalResult eval_downstream(const WeightedGraph& wg, const Matrix& features, const LabelVector& y,
                           Index layers, Index epochs, double lr, std::uint64_t seed) {
  if (layers < 0) throw std::invalid_argument("eval_downstream: layers must be >= 0");
  return eval_on(norm_adj_power_multiply(wg, features, layers), y, epochs, lr, seed);
}

BenchReport bench_sketch(const Graph& g, Index k, int reps) {
  if (reps < 3) throw std::invalid_argument("bench_sketch: needs reps >= 3");
  BenchReport rep;
  rep.reps = reps;
  const CountSketch cs = build_count_sketch(std::max<Index>(g.num_nodes(), 1), k, 1);
  const Index c_size = std::min(g.num_nodes(), 4 * k);

  std::vector<double> cs_times, rwr_times;
  volatile double sink = 0.0;  // keep the sketches from being optimized out
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    const Matrix a = apply_count_sketch(g, cs);
    cs_times.push_back(ms_since(t0));
    sink = sink + a(0, 0);

    t0 = std::chrono::steady_clock::now();
    const RwrSketch rs = build_rwr_sketch(g, std::min(k, c_size), c_size, 2, 0.5);
    rwr_times.push_back(ms_since(t0));
    sink = sink + rs.row_norm[0];
  }
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  rep.count_sketch_ms = median(cs_times);
  rep.rwr_sketch_ms = median(rwr_times);
  return rep;
}

std::string RunReport::to_json() const {
  nlohmann::json j;
  for (const auto& [name, ms] : timings_ms) j["timings_ms"][name] = ms;
  j["nodes"] = nodes;
  j["edges_before"] = edges_before;
  j["edges_removed"] = edges_removed;
  j["isolated_nodes"] = isolated_nodes;
  j["loss_trace"] = loss_trace;
  j["loss_monotone_fraction"] = loss_monotone_fraction;
  if (tada_test_accuracy) j["tada_test_accuracy"] = *tada_test_accuracy;
  if (baseline_test_accuracy) j["baseline_test_accuracy"] = *baseline_test_accuracy;
  j["config"] = {{"k", config.k},
                 {"h", config.h},
                 {"gamma", config.gamma},
                 {"beta", config.beta},
                 {"alpha", config.alpha},
                 {"walk_steps", config.walk_steps},
                 {"centroids", config.centroids},
                 {"rho", config.rho},
                 {"pretrain_epochs", config.pretrain_epochs},
                 {"lr", config.lr},
                 {"seed", config.seed},
                 {"layers", config.layers},
                 {"eval_epochs", config.eval_epochs}};
  return j.dump(2);
}

void save_expander_params(const ExpanderParams& p, const std::string& matrices_path,
                          const std::string& manifest_path) {
  std::ofstream out(matrices_path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + matrices_path);
  write_matrix_block(out, p.w_topo);
  write_matrix_block(out, p.w_attr);
  write_matrix_block(out, p.w_cls);
  write_matrix_block(out, p.b_cls.transpose());

  std::ofstream man(manifest_path);
  if (!man) throw DataError("cannot write file: " + manifest_path);
  man.precision(17);
  man << "entries=w_topo,w_attr,w_cls,b_cls\n"
      << "gamma=" << p.gamma << '\n'
      << "hidden_dim=" << p.hidden_dim << '\n';
}

ExpanderParams load_expander_params(const std::string& matrices_path,
                                    const std::string& manifest_path) {
  std::ifstream in(matrices_path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + matrices_path);
  ExpanderParams p;
  p.w_topo = read_matrix_block(in, matrices_path);
  p.w_attr = read_matrix_block(in, matrices_path);
  p.w_cls = read_matrix_block(in, matrices_path);
  p.b_cls = read_matrix_block(in, matrices_path).transpose();

  std::ifstream man(manifest_path);
  if (!man) throw DataError("cannot open file: " + manifest_path);
  std::string line;
  while (std::getline(man, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const auto key = line.substr(0, eq);
    const auto val = line.substr(eq + 1);
    if (key == "gamma") p.gamma = std::stod(val);
    if (key == "hidden_dim") p.hidden_dim = std::stoll(val);
  }
  if (p.hidden_dim != p.w_cls.rows()) throw DataError("params manifest disagrees with shapes");
  return p;
}

void persist_pipeline(const PipelineResult& result, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto path = [&](const char* name) { return (fs::path(dir) / name).string(); };
  save_sketched_adjacency(result.sketch, path("sketch.tada"), path("sketch.meta"));
  save_expander_params(result.params, path("params.tada"), path("params.manifest"));
  save_dense_matrix(result.features.h0, path("h0.tada"));
  save_sparsified(result.sparsified, path("sparsified.wel"), path("sparsified_stats.json"));
  std::ofstream rep(path("report.json"));
  if (!rep) throw DataError("cannot write report.json under " + dir);
  rep << result.report.to_json() << '\n';
}

}  // namespace tada
