#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "scalemodel/core_model.hpp"

namespace scalemodel {

using VertexId = std::uint64_t;
using Edge = std::pair<VertexId, VertexId>;

// Per-vertex edge counts of an undirected graph. Vertex ids are the indices.
struct DegreeSequence {
  std::vector<std::uint64_t> degrees;
  std::uint64_t num_edges = 0;
};

// Rejects self-loops. Parallel edges count with multiplicity. The vertex
// count is the largest id plus one; ids without edges get degree 0.
DegreeSequence degrees_from_edge_list(std::span<const Edge> edges);

// Text formats. Edge list: one "u v" pair per line. Degree file: one degree
// per line. Blank lines and lines starting with '#' are skipped. Both throw
// ConfigError with the line number on malformed input.
std::vector<Edge> parse_edge_list(std::string_view text);
DegreeSequence parse_degree_file(std::string_view text);

// Expected number of edges with both endpoints on one worker that holds
// V/n vertices (real-valued), for a graph with E edges placed uniformly
// among the V(V-1)/2 vertex pairs. Equals E for n == 1. Requires V >= 2.
double expected_duplicates(double num_vertices, double num_edges,
                           WorkerCount n);

enum class AssignmentMode {
  // Shuffle the vertices and deal them round-robin, so every worker holds
  // floor(V/n) or ceil(V/n) vertices.
  kBalanced,
  // Every vertex picks a worker independently and uniformly.
  kIndependent,
};

// Worker of each vertex for one trial. The stream is std::mt19937_64 seeded
// through std::seed_seq with the 32-bit halves of (seed, trial), so a trial
// is reproducible on its own regardless of which other trials run.
std::vector<WorkerCount> assign_vertices(std::size_t num_vertices,
                                         WorkerCount n, std::uint64_t seed,
                                         std::uint64_t trial,
                                         AssignmentMode mode);

// E_i^rnd: sum of degrees of the vertices assigned to each worker.
std::vector<std::uint64_t> worker_degree_sums(
    const DegreeSequence& degs, std::span<const WorkerCount> assignment,
    WorkerCount n);

struct PartitionOptions {
  AssignmentMode mode = AssignmentMode::kBalanced;
  // 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  unsigned threads = 0;
};

struct PartitionEstimate {
  WorkerCount n = 1;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double e_dup = 0;
  double mean_max_edges = 0;
  double min_max_edges = 0;
  double max_max_edges = 0;
  // max_i(E_i^rnd) - e_dup for each trial, in trial order.
  std::vector<double> per_trial_max;
};

// Monte-Carlo estimate of the edge count on the busiest of n workers.
// Throws ModelError on an empty degree sequence, trials < 1 or n < 1.
PartitionEstimate estimate_partition(const DegreeSequence& degs, WorkerCount n,
                                     std::int64_t trials, std::uint64_t seed,
                                     const PartitionOptions& options = {});

}  // namespace scalemodel
