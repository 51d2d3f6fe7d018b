#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "scalemodel/core_model.hpp"

namespace scalemodel {

enum class SeriesKind { kTime, kSpeedup };

std::string_view to_string(SeriesKind kind);
SeriesKind parse_series_kind(std::string_view name);

struct SeriesPoint {
  WorkerCount n = 1;
  double value = 0;
};

// Measured times or speedups, sorted by n with unique n and positive values.
struct EmpiricalSeries {
  SeriesKind kind = SeriesKind::kTime;
  std::vector<SeriesPoint> points;
  std::optional<WorkerCount> reference_n;
};

// CSV with the exact header "n,value". Throws ConfigError on a missing
// header, malformed rows, duplicate n or non-positive values.
EmpiricalSeries load_empirical_csv(std::string_view text, SeriesKind kind);

// Turns a time series into speedups t(reference_n) / t(n).
EmpiricalSeries normalize_to_reference(const EmpiricalSeries& series,
                                       WorkerCount reference_n);

// Mean absolute percentage error, in percent, of predicted against actual at
// every actual n. Predictions at other n are ignored. Throws ModelError
// listing any actual n without a prediction.
double mape(std::span<const SeriesPoint> predicted,
            const EmpiricalSeries& actual);

}  // namespace scalemodel
