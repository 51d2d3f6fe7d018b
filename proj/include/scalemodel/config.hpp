#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "scalemodel/core_model.hpp"
#include "scalemodel/graph_partition.hpp"
#include "scalemodel/net_arch.hpp"
#include "scalemodel/speedup.hpp"

namespace scalemodel {

struct Architecture {
  TensorShape input;
  std::vector<LayerSpec> layers;
};

struct GradientDescentConfig {
  GradientDescentModel model;
  // Set when C and W were derived from a layer list rather than given.
  std::optional<Architecture> architecture;
  std::optional<NetworkCounts> derived_counts;
  ScalingMode scaling = ScalingMode::kStrong;
};

struct GraphInferenceConfig {
  GraphWorkload workload;
  DegreeSequence degrees;
  std::int64_t trials = 100;
  std::optional<std::uint64_t> seed;
  AssignmentMode assignment = AssignmentMode::kBalanced;
};

struct ModelConfig {
  HardwareSpec hardware;
  std::variant<GradientDescentConfig, GraphInferenceConfig> workload;
  CommTopology comm;
  WorkerRange sweep;
  std::optional<WorkerCount> reference_n;
};

// Parses and validates a JSON configuration document. Relative edge_list and
// degree_file paths resolve against base_dir. Throws ConfigError naming the
// offending field, or ModelError when a value breaks a model invariant.
ModelConfig parse_config(std::string_view document,
                         const std::filesystem::path& base_dir = {});

// Reads path and parses it with its parent directory as base_dir.
ModelConfig load_config(const std::filesystem::path& path);

// Reads a whole file; throws ConfigError if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

// Spreads 2E endpoints as evenly as possible over V vertices. Used when a
// graph is described only by its vertex and edge counts.
DegreeSequence uniform_degree_sequence(std::uint64_t num_vertices,
                                       std::uint64_t num_edges);

}  // namespace scalemodel
