#include "scalemodel/scenario.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <string>

#include "scalemodel/core_model.hpp"
#include "scalemodel/error.hpp"

namespace scalemodel {

std::uint64_t resolve_seed(const ModelConfig& config,
                           const RunOverrides& overrides) {
  if (overrides.seed) return *overrides.seed;
  if (const auto* gi = std::get_if<GraphInferenceConfig>(&config.workload);
      gi != nullptr && gi->seed) {
    return *gi->seed;
  }
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env) {
    std::uint64_t seed = 0;
    const char* end = env + std::strlen(env);
    const auto [ptr, ec] = std::from_chars(env, end, seed);
    if (ec != std::errc() || ptr != end) {
      throw ConfigError(std::string(kSeedEnvVar) +
                        " must be an unsigned integer, got '" + env + "'");
    }
    return seed;
  }
  return 0;
}

WorkerRange resolve_range(const ModelConfig& config,
                          const RunOverrides& overrides) {
  return overrides.sweep.value_or(config.sweep);
}

TimeModel make_time_model(const ModelConfig& config,
                          const RunOverrides& overrides) {
  if (const auto* gd = std::get_if<GradientDescentConfig>(&config.workload)) {
    const GradientDescentModel model = gd->model;
    const HardwareSpec hw = config.hardware;
    const CommTopology topo = config.comm;
    if (gd->scaling == ScalingMode::kWeak) {
      return [=](WorkerCount n) {
        return per_instance_breakdown(model, hw, topo, n);
      };
    }
    return [=](WorkerCount n) { return gd_step_time(model, hw, topo, n); };
  }

  const auto& gi = std::get<GraphInferenceConfig>(config.workload);
  const std::uint64_t seed = resolve_seed(config, overrides);
  const std::int64_t trials = overrides.trials.value_or(gi.trials);
  const PartitionOptions options{gi.assignment, overrides.threads};
  const HardwareSpec hw = config.hardware;
  // The closure keeps a pointer into config; callers hold config alive
  // while the model is in use.
  return [&gi, hw, seed, trials, options](WorkerCount n) {
    const double max_edges =
        n == 1 ? gi.workload.num_edges
               : estimate_partition(gi.degrees, n, trials, seed, options)
                     .mean_max_edges;
    return gi_step_time(gi.workload, max_edges, hw, n);
  };
}

SpeedupCurve build_curve(const ModelConfig& config, WorkerRange range,
                         const RunOverrides& overrides) {
  const TimeModel model = make_time_model(config, overrides);
  const auto* gd = std::get_if<GradientDescentConfig>(&config.workload);
  if (gd != nullptr && gd->scaling == ScalingMode::kWeak) {
    return weak_scaling_curve(model, range,
                              config.reference_n.value_or(range.min));
  }
  return strong_scaling_curve(model, range);
}

std::vector<PartitionEstimate> partition_sweep(const ModelConfig& config,
                                               WorkerRange range,
                                               const RunOverrides& overrides) {
  const auto* gi = std::get_if<GraphInferenceConfig>(&config.workload);
  if (gi == nullptr) {
    throw ModelError("partition needs a graph_inference workload");
  }
  if (range.min < 1 || range.min > range.max) {
    throw ModelError("invalid worker range");
  }
  const std::uint64_t seed = resolve_seed(config, overrides);
  const std::int64_t trials = overrides.trials.value_or(gi->trials);
  const PartitionOptions options{gi->assignment, overrides.threads};
  std::vector<PartitionEstimate> out;
  for (WorkerCount n = range.min; n <= range.max; ++n) {
    out.push_back(estimate_partition(gi->degrees, n, trials, seed, options));
  }
  return out;
}

}  // namespace scalemodel
