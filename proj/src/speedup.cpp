#include "scalemodel/speedup.hpp"

#include <string>

#include "scalemodel/error.hpp"

namespace scalemodel {

namespace {

void check_range(WorkerRange range) {
  if (range.min < 1 || range.max > kMaxSweepWorkers || range.min > range.max) {
    throw ModelError("worker range " + std::to_string(range.min) + ".." +
                     std::to_string(range.max) + " must lie within 1.." +
                     std::to_string(kMaxSweepWorkers) + " with min <= max");
  }
}

TimeBreakdown checked_eval(const TimeModel& model, WorkerCount n) {
  const TimeBreakdown t = model(n);
  if (!(t.t_total > 0)) {
    throw ModelError("degenerate model: t(" + std::to_string(n) +
                     ") = " + std::to_string(t.t_total) + " is not positive");
  }
  return t;
}

SpeedupCurve build_curve(const TimeModel& model, WorkerRange range,
                         ScalingMode mode, WorkerCount reference_n) {
  const double reference_time = checked_eval(model, reference_n).t_total;
  SpeedupCurve curve;
  curve.mode = mode;
  curve.reference_n = reference_n;
  curve.points.reserve(static_cast<std::size_t>(range.max - range.min + 1));
  for (WorkerCount n = range.min; n <= range.max; ++n) {
    const TimeBreakdown t = checked_eval(model, n);
    curve.points.push_back(
        CurvePoint{n, t.t_cp, t.t_cm, t.t_total, reference_time / t.t_total});
  }
  return curve;
}

}  // namespace

std::string_view to_string(ScalingMode mode) {
  return mode == ScalingMode::kStrong ? "strong" : "weak";
}

ScalingMode parse_scaling_mode(std::string_view name) {
  if (name == "strong") return ScalingMode::kStrong;
  if (name == "weak") return ScalingMode::kWeak;
  throw ModelError("unknown scaling mode '" + std::string(name) +
                   "' (expected strong or weak)");
}

SpeedupCurve strong_scaling_curve(const TimeModel& model, WorkerRange range) {
  check_range(range);
  return build_curve(model, range, ScalingMode::kStrong, 1);
}

SpeedupCurve weak_scaling_curve(const TimeModel& per_instance,
                                WorkerRange range, WorkerCount reference_n) {
  check_range(range);
  if (reference_n < range.min || reference_n > range.max) {
    throw ModelError("reference_n " + std::to_string(reference_n) +
                     " lies outside the swept range " +
                     std::to_string(range.min) + ".." +
                     std::to_string(range.max));
  }
  return build_curve(per_instance, range, ScalingMode::kWeak, reference_n);
}

WorkerCount optimal_nodes(const SpeedupCurve& curve) {
  if (curve.points.empty()) {
    throw ModelError("optimal_nodes: empty curve");
  }
  const CurvePoint* best = &curve.points.front();
  for (const auto& p : curve.points) {
    if (p.speedup > best->speedup) best = &p;
  }
  return best->n;
}

bool is_scalable(const SpeedupCurve& curve) {
  for (const auto& p : curve.points) {
    if (p.n > curve.reference_n && p.speedup > 1.0) return true;
  }
  return false;
}

}  // namespace scalemodel
