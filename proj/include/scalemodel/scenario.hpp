#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scalemodel/config.hpp"
#include "scalemodel/graph_partition.hpp"
#include "scalemodel/speedup.hpp"

namespace scalemodel {

inline constexpr const char* kSeedEnvVar = "SCALEMODEL_SEED";

// Command-line values that take precedence over the configuration.
struct RunOverrides {
  std::optional<WorkerRange> sweep;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  unsigned threads = 0;
};

// Seed precedence: override, config, SCALEMODEL_SEED, then 0. Throws
// ConfigError when the environment variable is not an unsigned integer.
std::uint64_t resolve_seed(const ModelConfig& config,
                           const RunOverrides& overrides);

WorkerRange resolve_range(const ModelConfig& config,
                          const RunOverrides& overrides);

// The time model the configuration describes: one superstep for strong
// scaling, one instance for weak scaling. Graph inference runs the
// partition estimate for every n > 1 it is asked about.
TimeModel make_time_model(const ModelConfig& config,
                          const RunOverrides& overrides = {});

// Speedup curve over range, in the scaling mode the configuration asks for.
// Weak scaling uses reference_n, or the start of the range when unset.
SpeedupCurve build_curve(const ModelConfig& config, WorkerRange range,
                         const RunOverrides& overrides = {});

// Partition estimates for every n in range. Requires a graph workload.
std::vector<PartitionEstimate> partition_sweep(const ModelConfig& config,
                                               WorkerRange range,
                                               const RunOverrides& overrides = {});

}  // namespace scalemodel
