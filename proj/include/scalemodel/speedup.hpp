#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "scalemodel/core_model.hpp"

namespace scalemodel {

enum class ScalingMode { kStrong, kWeak };

std::string_view to_string(ScalingMode mode);
ScalingMode parse_scaling_mode(std::string_view name);

// Inclusive range of worker counts.
struct WorkerRange {
  WorkerCount min = 1;
  WorkerCount max = 1;
};

inline constexpr WorkerCount kMaxSweepWorkers = 1'000'000;

struct CurvePoint {
  WorkerCount n = 1;
  double t_cp = 0;
  double t_cm = 0;
  double t_total = 0;
  double speedup = 1;
};

struct SpeedupCurve {
  ScalingMode mode = ScalingMode::kStrong;
  WorkerCount reference_n = 1;
  std::vector<CurvePoint> points;  // strictly increasing n
};

// Time of one superstep (strong) or of one instance (weak) at n workers.
using TimeModel = std::function<TimeBreakdown(WorkerCount)>;

// s(n) = t(1) / t(n) at every integer n in range. t(1) is evaluated even if
// the range starts above 1. Throws ModelError if t(1) or any t(n) is not
// positive, or the range is outside [1, kMaxSweepWorkers].
SpeedupCurve strong_scaling_curve(const TimeModel& model, WorkerRange range);

// s(n) = t(reference_n) / t(n) for a per-instance time model. reference_n
// must lie inside range.
SpeedupCurve weak_scaling_curve(const TimeModel& per_instance,
                                WorkerRange range, WorkerCount reference_n);

// argmax of s over the curve; ties go to the smallest n.
WorkerCount optimal_nodes(const SpeedupCurve& curve);

// True iff some point beyond reference_n runs faster than the reference.
// Only the swept range is considered.
bool is_scalable(const SpeedupCurve& curve);

}  // namespace scalemodel
