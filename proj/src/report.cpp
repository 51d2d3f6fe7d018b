#include "scalemodel/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "scalemodel/error.hpp"

namespace scalemodel {

namespace {

std::string to_chars_string(double value, std::chars_format fmt, int precision) {
  std::array<char, 64> buf{};
  const auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, fmt, precision);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

std::string fixed2(double value) {
  // Avoid "-0.00" so equal geometry prints equal bytes.
  if (std::abs(value) < 0.005) value = 0.0;
  return to_chars_string(value, std::chars_format::fixed, 2);
}

// 1, 2 or 5 times a power of ten, no smaller than raw.
double nice_step(double raw) {
  if (!(raw > 0)) return 1.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * magnitude >= raw * (1 - 1e-12)) return m * magnitude;
  }
  return 10.0 * magnitude;
}

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 70;
constexpr double kRight = 770;
constexpr double kTop = 30;
constexpr double kBottom = 440;

}  // namespace

std::string format_number(double value) {
  return to_chars_string(value, std::chars_format::general, 12);
}

std::string emit_curve_csv(const SpeedupCurve& curve) {
  std::string out(kCurveCsvHeader);
  out += '\n';
  for (const auto& p : curve.points) {
    out += std::to_string(p.n);
    for (double v : {p.t_cp, p.t_cm, p.t_total, p.speedup}) {
      out += ',';
      out += format_number(v);
    }
    out += '\n';
  }
  return out;
}

std::vector<CurvePoint> parse_curve_csv(std::string_view text) {
  std::vector<CurvePoint> points;
  bool header = true;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kCurveCsvHeader) {
        throw ConfigError("curve CSV: unexpected header '" + std::string(line) +
                          "'");
      }
      header = false;
      continue;
    }
    CurvePoint p;
    std::array<double*, 4> fields{&p.t_cp, &p.t_cm, &p.t_total, &p.speedup};
    const char* cur = line.data();
    const char* end = line.data() + line.size();
    auto res = std::from_chars(cur, end, p.n);
    bool ok = res.ec == std::errc();
    cur = res.ptr;
    for (double* field : fields) {
      if (!ok || cur == end || *cur != ',') {
        ok = false;
        break;
      }
      auto r = std::from_chars(cur + 1, end, *field);
      ok = r.ec == std::errc();
      cur = r.ptr;
    }
    if (!ok || cur != end) {
      throw ConfigError("curve CSV line " + std::to_string(line_no) +
                        ": malformed row '" + std::string(line) + "'");
    }
    points.push_back(p);
  }
  if (header) throw ConfigError("curve CSV: missing header");
  return points;
}

std::string emit_curve_svg(const SpeedupCurve& curve) {
  if (curve.points.size() < 2) {
    throw ModelError("SVG rendering needs at least two points");
  }
  const double n_lo = static_cast<double>(curve.points.front().n);
  const double n_hi = static_cast<double>(curve.points.back().n);
  double s_max = 0;
  for (const auto& p : curve.points) s_max = std::max(s_max, p.speedup);

  const double y_step = nice_step(s_max / 5.0);
  const double y_top = std::max(y_step, std::ceil(s_max / y_step) * y_step);
  const double x_step = std::max(1.0, std::ceil(nice_step((n_hi - n_lo) / 10.0)));

  auto px = [&](double n) {
    return kLeft + (n - n_lo) / (n_hi - n_lo) * (kRight - kLeft);
  };
  auto py = [&](double s) { return kBottom - s / y_top * (kBottom - kTop); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
         "height=\"500\" viewBox=\"0 0 800 500\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fixed2(kWidth) + "\" height=\"" +
         fixed2(kHeight) + "\" fill=\"white\"/>\n";
  svg += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";

  // Axes.
  svg += "<line x1=\"" + fixed2(kLeft) + "\" y1=\"" + fixed2(kBottom) +
         "\" x2=\"" + fixed2(kRight) + "\" y2=\"" + fixed2(kBottom) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fixed2(kLeft) + "\" y1=\"" + fixed2(kTop) +
         "\" x2=\"" + fixed2(kLeft) + "\" y2=\"" + fixed2(kBottom) +
         "\" stroke=\"black\"/>\n";

  // x ticks at multiples of x_step, plus the first point.
  for (double n = n_lo; n <= n_hi + 1e-9;) {
    const double x = px(n);
    svg += "<line x1=\"" + fixed2(x) + "\" y1=\"" + fixed2(kBottom) +
           "\" x2=\"" + fixed2(x) + "\" y2=\"" + fixed2(kBottom + 5) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed2(x) + "\" y=\"" + fixed2(kBottom + 20) +
           "\" text-anchor=\"middle\">" + format_number(n) + "</text>\n";
    const double next = std::floor(n / x_step) * x_step + x_step;
    n = next;
  }
  const int y_ticks = static_cast<int>(std::lround(y_top / y_step));
  for (int i = 0; i <= y_ticks; ++i) {
    const double s = i * y_step;
    const double y = py(s);
    svg += "<line x1=\"" + fixed2(kLeft - 5) + "\" y1=\"" + fixed2(y) +
           "\" x2=\"" + fixed2(kLeft) + "\" y2=\"" + fixed2(y) +
           "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fixed2(kLeft - 8) + "\" y=\"" + fixed2(y + 4) +
           "\" text-anchor=\"end\">" +
           to_chars_string(s, std::chars_format::general, 6) + "</text>\n";
  }
  svg += "<text x=\"" + fixed2((kLeft + kRight) / 2) + "\" y=\"" +
         fixed2(kBottom + 45) +
         "\" text-anchor=\"middle\">workers (n)</text>\n";
  svg += "<text x=\"20\" y=\"" + fixed2((kTop + kBottom) / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
         fixed2((kTop + kBottom) / 2) + ")\">speedup (" +
         std::string(to_string(curve.mode)) + ", reference n=" +
         std::to_string(curve.reference_n) + ")</text>\n";
  svg += "</g>\n";

  svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    if (i != 0) svg += ' ';
    svg += fixed2(px(static_cast<double>(p.n))) + "," + fixed2(py(p.speedup));
  }
  svg += "\"/>\n</svg>\n";
  return svg;
}

std::string emit_partition_csv(std::span<const PartitionEstimate> estimates) {
  std::string out(kPartitionCsvHeader);
  out += '\n';
  for (const auto& e : estimates) {
    out += std::to_string(e.n) + ',' + std::to_string(e.trials) + ',' +
           std::to_string(e.seed) + ',' + format_number(e.e_dup) + ',' +
           format_number(e.mean_max_edges) + ',' +
           format_number(e.min_max_edges) + ',' +
           format_number(e.max_max_edges) + '\n';
  }
  return out;
}

}  // namespace scalemodel
