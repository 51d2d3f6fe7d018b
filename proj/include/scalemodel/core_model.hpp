#pragma once

#include <cstdint>
#include <string_view>

namespace scalemodel {

using WorkerCount = std::int64_t;

// Compute throughput and network bandwidth of one homogeneous node.
// Throughput is stated for the arithmetic precision the workload uses;
// one multiply-add counts as one operation.
class HardwareSpec {
 public:
  // Throws ModelError unless peak > 0, 0 < efficiency <= 1, bandwidth > 0.
  HardwareSpec(double peak_ops_per_sec, double efficiency,
               double bandwidth_bits_per_sec);

  double peak_ops_per_sec() const { return peak_ops_per_sec_; }
  double efficiency() const { return efficiency_; }
  double bandwidth_bits_per_sec() const { return bandwidth_bits_per_sec_; }

 private:
  double peak_ops_per_sec_;
  double efficiency_;
  double bandwidth_bits_per_sec_;
};

enum class Topology {
  kNone,
  kLinear,
  kLogTree,
  kSparkHybrid,
};

std::string_view to_string(Topology topology);
// Accepts "none", "linear", "log_tree", "spark_hybrid".
Topology parse_topology(std::string_view name);

// Communication cost family for exchanging the model parameters once per
// superstep.
class CommTopology {
 public:
  // Throws ModelError unless stages >= 1 and bits_per_param is 32 or 64.
  CommTopology(Topology variant, int stages = 2, int bits_per_param = 32);

  Topology variant() const { return variant_; }
  int stages() const { return stages_; }
  int bits_per_param() const { return bits_per_param_; }

 private:
  Topology variant_;
  int stages_;
  int bits_per_param_;
};

struct GradientDescentModel {
  double cost_per_point_ops = 0;  // operations for one data point's gradient
  double batch_size = 0;          // examples per step
  double num_params = 0;
};

struct GraphWorkload {
  double num_vertices = 1;
  double num_edges = 0;
  double num_states = 1;
  double replication_factor = 0;
  bool shared_memory = false;
  // Divide the compute term by n a second time, on top of the already
  // partitioned max edge count.
  bool literal_divide_by_n = false;
};

// Throw ModelError when an invariant of the workload is violated.
void validate(const GradientDescentModel& model);
void validate(const GraphWorkload& workload);

struct TimeBreakdown {
  double t_cp = 0;
  double t_cm = 0;
  double t_total = 0;
};

TimeBreakdown make_breakdown(double t_cp, double t_cm);

double effective_ops_per_sec(const HardwareSpec& hw);

// Seconds spent exchanging num_params parameters among n workers. A single
// worker never communicates, so n == 1 yields 0 for every topology.
double comm_time(const CommTopology& topo, WorkerCount n, double num_params,
                 const HardwareSpec& hw);

// One superstep of data-parallel gradient descent with the batch split
// across n workers.
TimeBreakdown gd_step_time(const GradientDescentModel& model,
                           const HardwareSpec& hw, const CommTopology& topo,
                           WorkerCount n);

// Per-instance view of a weak-scaling step where each of the n workers
// processes its own batch_size examples. The returned breakdown is already
// divided by n.
TimeBreakdown per_instance_breakdown(const GradientDescentModel& model,
                                     const HardwareSpec& hw,
                                     const CommTopology& topo, WorkerCount n);
double per_instance_time(const GradientDescentModel& model,
                         const HardwareSpec& hw, const CommTopology& topo,
                         WorkerCount n);

// Operations per edge for one loopy belief propagation sweep over a pairwise
// MRF with num_states states per variable.
double bp_ops_per_edge(double num_states);

// One superstep of vertex-parallel graph inference. max_edges is the edge
// count of the busiest worker (see estimate_partition). Communication is the
// linear replication volume, 32 bits per state, and zero for one worker or
// shared memory.
TimeBreakdown gi_step_time(const GraphWorkload& workload, double max_edges,
                           const HardwareSpec& hw, WorkerCount n);

}  // namespace scalemodel
