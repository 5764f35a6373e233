#pragma once

#include "tada/graph.hpp"
#include "tada/labels.hpp"

#include <string>

namespace tada {

struct LoadReport {
  std::size_t lines_read = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Reads a UTF-8 edge list: one "u v" pair per line (tab or spaces), '#'
/// starts a comment, ids are dense 0-based integers. Duplicates and self-loops
/// are dropped silently and counted in `report`; every edge is stored in both
/// directions. A malformed token raises a parse error with its line number;
/// a file with no edges, or with an id gap, is rejected.
Graph load_edge_list(const std::string& path, LoadReport* report = nullptr);

/// Canonical form: one "u\tv" line per undirected edge, u < v, ascending.
/// load(save(g)) reproduces offsets/neighbors bit-exactly.
void save_edge_list(const Graph& g, const std::string& path);

/// Weighted edge list, "u\tv\tw" per line. Node count is max id + 1 unless a
/// larger `n_hint` is given; ids without incident edges become isolated nodes
/// (sparsifier output is reloadable this way).
WeightedGraph load_weighted_edge_list(const std::string& path, Index n_hint = 0);

/// One integer class label per line.
LabelVector load_labels(const std::string& path);

/// Parallel split file: one of {train,val,test,none} per line.
void load_splits(const std::string& path, LabelVector& labels);

void save_labels(const LabelVector& labels, const std::string& labels_path,
                 const std::string& splits_path);

}  // namespace tada
