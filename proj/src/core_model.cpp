#include "scalemodel/core_model.hpp"

#include <cmath>
#include <string>

#include "scalemodel/error.hpp"

namespace scalemodel {

namespace {

void require_workers(WorkerCount n) {
  if (n < 1) {
    throw ModelError("worker count must be >= 1, got " + std::to_string(n));
  }
}

}  // namespace

HardwareSpec::HardwareSpec(double peak_ops_per_sec, double efficiency,
                           double bandwidth_bits_per_sec)
    : peak_ops_per_sec_(peak_ops_per_sec),
      efficiency_(efficiency),
      bandwidth_bits_per_sec_(bandwidth_bits_per_sec) {
  // Written as negated comparisons so NaN is rejected too.
  if (!(peak_ops_per_sec > 0) || !std::isfinite(peak_ops_per_sec)) {
    throw ModelError("hardware: peak_ops_per_sec must be > 0");
  }
  if (!(efficiency > 0 && efficiency <= 1)) {
    throw ModelError("hardware: efficiency must be in (0, 1]");
  }
  if (!(bandwidth_bits_per_sec > 0) || !std::isfinite(bandwidth_bits_per_sec)) {
    throw ModelError("hardware: bandwidth_bits_per_sec must be > 0");
  }
}

std::string_view to_string(Topology topology) {
  switch (topology) {
    case Topology::kNone:
      return "none";
    case Topology::kLinear:
      return "linear";
    case Topology::kLogTree:
      return "log_tree";
    case Topology::kSparkHybrid:
      return "spark_hybrid";
  }
  return "unknown";
}

Topology parse_topology(std::string_view name) {
  if (name == "none") return Topology::kNone;
  if (name == "linear") return Topology::kLinear;
  if (name == "log_tree") return Topology::kLogTree;
  if (name == "spark_hybrid") return Topology::kSparkHybrid;
  throw ModelError("unknown topology '" + std::string(name) +
                   "' (expected none, linear, log_tree or spark_hybrid)");
}

CommTopology::CommTopology(Topology variant, int stages, int bits_per_param)
    : variant_(variant), stages_(stages), bits_per_param_(bits_per_param) {
  if (stages < 1) {
    throw ModelError("comm: stages must be >= 1");
  }
  if (bits_per_param != 32 && bits_per_param != 64) {
    throw ModelError("comm: bits_per_param must be 32 or 64");
  }
}

void validate(const GradientDescentModel& model) {
  if (!(model.cost_per_point_ops >= 0) || !(model.batch_size >= 0) ||
      !(model.num_params >= 0)) {
    throw ModelError("gradient descent: C, S and W must be >= 0");
  }
}

void validate(const GraphWorkload& workload) {
  if (!(workload.num_vertices >= 1)) {
    throw ModelError("graph: num_vertices must be >= 1");
  }
  if (!(workload.num_edges >= 0)) {
    throw ModelError("graph: num_edges must be >= 0");
  }
  if (!(workload.num_states >= 1)) {
    throw ModelError("graph: num_states must be >= 1");
  }
  if (!(workload.replication_factor >= 0)) {
    throw ModelError("graph: replication_factor must be >= 0");
  }
}

TimeBreakdown make_breakdown(double t_cp, double t_cm) {
  return TimeBreakdown{t_cp, t_cm, t_cp + t_cm};
}

double effective_ops_per_sec(const HardwareSpec& hw) {
  return hw.peak_ops_per_sec() * hw.efficiency();
}

double comm_time(const CommTopology& topo, WorkerCount n, double num_params,
                 const HardwareSpec& hw) {
  require_workers(n);
  if (n == 1) return 0.0;

  // Time to push every parameter once over one link.
  const double one_pass =
      topo.bits_per_param() * num_params / hw.bandwidth_bits_per_sec();
  const double workers = static_cast<double>(n);
  switch (topo.variant()) {
    case Topology::kNone:
      return 0.0;
    case Topology::kLinear:
      return one_pass * workers;
    case Topology::kLogTree:
      return topo.stages() * one_pass * std::log2(workers);
    case Topology::kSparkHybrid:
      // Torrent broadcast plus two-wave tree aggregation.
      return one_pass * std::log2(workers) +
             2.0 * one_pass * std::ceil(std::sqrt(workers));
  }
  return 0.0;
}

TimeBreakdown gd_step_time(const GradientDescentModel& model,
                           const HardwareSpec& hw, const CommTopology& topo,
                           WorkerCount n) {
  require_workers(n);
  const double t_cp = model.cost_per_point_ops * model.batch_size /
                      (effective_ops_per_sec(hw) * static_cast<double>(n));
  return make_breakdown(t_cp, comm_time(topo, n, model.num_params, hw));
}

TimeBreakdown per_instance_breakdown(const GradientDescentModel& model,
                                     const HardwareSpec& hw,
                                     const CommTopology& topo, WorkerCount n) {
  require_workers(n);
  const double workers = static_cast<double>(n);
  const double worker_compute =
      model.cost_per_point_ops * model.batch_size / effective_ops_per_sec(hw);
  const double t_cm = comm_time(topo, n, model.num_params, hw);
  // t_total is formed from the undivided sum so it matches the closed form
  // (C*S/F + comm)/n bit for bit.
  return TimeBreakdown{worker_compute / workers, t_cm / workers,
                       (worker_compute + t_cm) / workers};
}

double per_instance_time(const GradientDescentModel& model,
                         const HardwareSpec& hw, const CommTopology& topo,
                         WorkerCount n) {
  return per_instance_breakdown(model, hw, topo, n).t_total;
}

double bp_ops_per_edge(double num_states) {
  if (!(num_states >= 0)) {
    throw ModelError("num_states must be >= 0");
  }
  return num_states + 2.0 * (num_states + num_states * num_states);
}

TimeBreakdown gi_step_time(const GraphWorkload& workload, double max_edges,
                           const HardwareSpec& hw, WorkerCount n) {
  require_workers(n);
  if (!(max_edges >= 0)) {
    throw ModelError("max_edges must be >= 0");
  }
  double t_cp =
      max_edges * bp_ops_per_edge(workload.num_states) / effective_ops_per_sec(hw);
  if (workload.literal_divide_by_n) {
    t_cp /= static_cast<double>(n);
  }
  double t_cm = 0.0;
  if (!workload.shared_memory && n > 1) {
    t_cm = 32.0 / hw.bandwidth_bits_per_sec() * workload.replication_factor *
           workload.num_vertices * workload.num_states;
  }
  return make_breakdown(t_cp, t_cm);
}

}  // namespace scalemodel
