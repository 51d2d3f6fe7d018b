#include "scalemodel/validation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <string>

#include "scalemodel/error.hpp"

namespace scalemodel {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_field(std::string_view field, T& out) {
  field = trim(field);
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end && !field.empty();
}

}  // namespace

std::string_view to_string(SeriesKind kind) {
  return kind == SeriesKind::kTime ? "time" : "speedup";
}

SeriesKind parse_series_kind(std::string_view name) {
  if (name == "time") return SeriesKind::kTime;
  if (name == "speedup") return SeriesKind::kSpeedup;
  throw ModelError("unknown series kind '" + std::string(name) +
                   "' (expected time or speedup)");
}

EmpiricalSeries load_empirical_csv(std::string_view text, SeriesKind kind) {
  EmpiricalSeries series;
  series.kind = kind;
  bool seen_header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    const std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (!seen_header) {
      if (line != "n,value") {
        throw ConfigError(where + "expected header 'n,value', got '" +
                          std::string(line) + "'");
      }
      seen_header = true;
      continue;
    }
    const auto comma = line.find(',');
    WorkerCount n = 0;
    double value = 0;
    if (comma == std::string_view::npos ||
        !parse_field(line.substr(0, comma), n) ||
        !parse_field(line.substr(comma + 1), value)) {
      throw ConfigError(where + "expected 'n,value', got '" +
                        std::string(line) + "'");
    }
    if (n < 1) {
      throw ConfigError(where + "worker count must be >= 1");
    }
    if (!(value > 0) || !std::isfinite(value)) {
      throw ConfigError(where + "value must be positive, got " +
                        std::string(trim(line.substr(comma + 1))));
    }
    series.points.push_back(SeriesPoint{n, value});
  }
  if (!seen_header) {
    throw ConfigError("empirical CSV is missing the 'n,value' header");
  }
  std::sort(series.points.begin(), series.points.end(),
            [](const SeriesPoint& a, const SeriesPoint& b) { return a.n < b.n; });
  for (std::size_t i = 1; i < series.points.size(); ++i) {
    if (series.points[i].n == series.points[i - 1].n) {
      throw ConfigError("duplicate worker count " +
                        std::to_string(series.points[i].n));
    }
  }
  return series;
}

EmpiricalSeries normalize_to_reference(const EmpiricalSeries& series,
                                       WorkerCount reference_n) {
  if (series.kind != SeriesKind::kTime) {
    throw ModelError("only time series can be normalized to a reference");
  }
  const auto ref = std::find_if(
      series.points.begin(), series.points.end(),
      [&](const SeriesPoint& p) { return p.n == reference_n; });
  if (ref == series.points.end()) {
    throw ModelError("reference worker count " + std::to_string(reference_n) +
                     " is not in the series");
  }
  EmpiricalSeries out;
  out.kind = SeriesKind::kSpeedup;
  out.reference_n = reference_n;
  out.points.reserve(series.points.size());
  for (const auto& p : series.points) {
    out.points.push_back(SeriesPoint{p.n, ref->value / p.value});
  }
  return out;
}

double mape(std::span<const SeriesPoint> predicted,
            const EmpiricalSeries& actual) {
  if (actual.points.empty()) {
    throw ModelError("mape: empty empirical series");
  }
  std::map<WorkerCount, double> by_n;
  for (const auto& p : predicted) by_n.emplace(p.n, p.value);

  std::string missing;
  double sum = 0;
  for (const auto& a : actual.points) {
    if (a.value == 0) {
      throw ModelError("mape: actual value at n=" + std::to_string(a.n) +
                       " is zero");
    }
    const auto it = by_n.find(a.n);
    if (it == by_n.end()) {
      missing += (missing.empty() ? "" : ", ") + std::to_string(a.n);
      continue;
    }
    sum += std::abs(it->second - a.value) / std::abs(a.value);
  }
  if (!missing.empty()) {
    throw ModelError("mape: no prediction for n = " + missing);
  }
  return 100.0 * sum / static_cast<double>(actual.points.size());
}

}  // namespace scalemodel
