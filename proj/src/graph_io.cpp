#include "tada/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace tada {

namespace {

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string_view> tokenize(const std::string& s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.emplace_back(s.data() + i, j - i);
    i = j;
  }
  return out;
}

Index parse_id(std::string_view tok, std::size_t line_no) {
  Index value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || value < 0)
    throw DataError("edge list parse error at line " + std::to_string(line_no) +
                    ": non-integer token '" + std::string(tok) + "'");
  return value;
}

double parse_real(std::string_view tok, std::size_t line_no, const char* what) {
  double value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw DataError(std::string(what) + " parse error at line " + std::to_string(line_no) +
                    ": bad token '" + std::string(tok) + "'");
  return value;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  return in;
}

}  // namespace

Graph load_edge_list(const std::string& path, LoadReport* report) {
  auto in = open_or_throw(path);
  std::vector<std::pair<Index, Index>> edges;
  Index max_id = -1;
  std::string line;
  std::size_t line_no = 0;
  LoadReport rep;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = strip_comment(line);
    const auto toks = tokenize(body);
    if (toks.empty()) continue;
    if (toks.size() != 2)
      throw DataError("edge list parse error at line " + std::to_string(line_no) +
                      ": expected two ids, got " + std::to_string(toks.size()) + " tokens");
    const Index u = parse_id(toks[0], line_no);
    const Index v = parse_id(toks[1], line_no);
    ++rep.lines_read;
    max_id = std::max({max_id, u, v});
    edges.emplace_back(u, v);
  }
  if (edges.empty()) throw DataError("empty graph: no edges in " + path);

  Graph::BuildStats stats;
  Graph g = Graph::from_edges(max_id + 1, std::move(edges), &stats);
  rep.self_loops_dropped = stats.self_loops_dropped;
  rep.duplicates_dropped = stats.duplicates_dropped;

  // Dense 0-based ids: a never-mentioned id would silently shift label rows,
  // so gaps are an error rather than being compacted away.
  for (Index v = 0; v < g.num_nodes(); ++v)
    if (g.degree(v) == 0)
      throw DataError("node id gap in " + path + ": id " + std::to_string(v) +
                      " never appears");

  if (report) *report = rep;
  return g;
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    out << u << '\t' << v << '\n';
  }
  if (!out) throw DataError("write failed: " + path);
}

WeightedGraph load_weighted_edge_list(const std::string& path, Index n_hint) {
  auto in = open_or_throw(path);
  std::vector<std::pair<Index, Index>> edges;
  std::vector<double> weights;
  Index max_id = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = strip_comment(line);
    const auto toks = tokenize(body);
    if (toks.empty()) continue;
    if (toks.size() != 3)
      throw DataError("weighted edge list parse error at line " + std::to_string(line_no) +
                      ": expected 'u v w'");
    const Index u = parse_id(toks[0], line_no);
    const Index v = parse_id(toks[1], line_no);
    const double w = parse_real(toks[2], line_no, "weighted edge list");
    if (!std::isfinite(w)) throw DataError("non-finite weight at line " + std::to_string(line_no));
    max_id = std::max({max_id, u, v});
    edges.emplace_back(u, v);
    weights.push_back(w);
  }
  if (edges.empty() && n_hint == 0) throw DataError("empty graph: no edges in " + path);

  const Index n = std::max(max_id + 1, n_hint);
  // Weights must be reattached by canonical edge id after the build reorders.
  std::vector<std::pair<std::pair<Index, Index>, double>> tagged;
  tagged.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    tagged.push_back({{std::min(u, v), std::max(u, v)}, weights[i]});
  }
  std::sort(tagged.begin(), tagged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  WeightedGraph wg;
  wg.base = Graph::from_edges(n, std::move(edges));
  if (wg.base.num_edges() != static_cast<Index>(tagged.size()))
    throw DataError("weighted edge list has duplicate or self-loop edges: " + path);
  wg.edge_weights.resize(wg.base.num_edges());
  for (Index e = 0; e < wg.base.num_edges(); ++e) wg.edge_weights[e] = tagged[static_cast<std::size_t>(e)].second;
  wg.weighted_degrees = weighted_degrees_of(wg.base, wg.edge_weights);
  return wg;
}

LabelVector load_labels(const std::string& path) {
  auto in = open_or_throw(path);
  LabelVector y;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = tokenize(strip_comment(line));
    if (toks.empty()) continue;
    if (toks.size() != 1)
      throw DataError("label parse error at line " + std::to_string(line_no) +
                      ": expected one integer");
    const Index c = parse_id(toks[0], line_no);
    y.labels.push_back(c);
    y.num_classes = std::max(y.num_classes, c + 1);
  }
  if (y.labels.empty()) throw DataError("empty label file: " + path);
  y.mask.assign(y.labels.size(), Split::none);
  return y;
}

void load_splits(const std::string& path, LabelVector& labels) {
  auto in = open_or_throw(path);
  std::vector<Split> mask;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = tokenize(strip_comment(line));
    if (toks.empty()) continue;
    if (toks.size() != 1)
      throw DataError("split parse error at line " + std::to_string(line_no));
    const auto& t = toks[0];
    if (t == "train")
      mask.push_back(Split::train);
    else if (t == "val")
      mask.push_back(Split::val);
    else if (t == "test")
      mask.push_back(Split::test);
    else if (t == "none")
      mask.push_back(Split::none);
    else
      throw DataError("split parse error at line " + std::to_string(line_no) +
                      ": unknown tag '" + std::string(t) + "'");
  }
  if (mask.size() != labels.labels.size())
    throw DataError("split file length " + std::to_string(mask.size()) +
                    " does not match label count " + std::to_string(labels.labels.size()));
  labels.mask = std::move(mask);
}

void save_labels(const LabelVector& labels, const std::string& labels_path,
                 const std::string& splits_path) {
  std::ofstream ly(labels_path);
  std::ofstream sp(splits_path);
  if (!ly || !sp) throw DataError("cannot write label/split files");
  static const char* names[] = {"train", "val", "test", "none"};
  for (std::size_t i = 0; i < labels.labels.size(); ++i) {
    ly << labels.labels[i] << '\n';
    sp << names[static_cast<int>(labels.mask[i])] << '\n';
  }
}

void LabelVector::require_contiguous_classes() const {
  std::vector<Index> counts(static_cast<std::size_t>(num_classes), 0);
  for (Index c : labels) {
    if (c < 0 || c >= num_classes) throw DataError("label out of range");
    ++counts[static_cast<std::size_t>(c)];
  }
  for (Index c = 0; c < num_classes; ++c)
    if (counts[static_cast<std::size_t>(c)] == 0)
      throw DataError("class ids not contiguous: class " + std::to_string(c) + " unused");
}

}  // namespace tada
