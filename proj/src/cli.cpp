#include "scalemodel/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "scalemodel/config.hpp"
#include "scalemodel/error.hpp"
#include "scalemodel/report.hpp"
#include "scalemodel/scenario.hpp"
#include "scalemodel/validation.hpp"

namespace scalemodel::cli {

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string svg;
  std::string empirical;
  std::string kind;
  std::string range;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  bool normalize = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "MIN..MAX" or a single "N".
WorkerRange parse_range(const std::string& text) {
  auto parse_one = [&](std::string_view s) {
    WorkerCount v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) {
      throw UsageError("--n expects MIN..MAX with positive integers, got '" +
                       text + "'");
    }
    return v;
  };
  const std::string_view view(text);
  const auto dots = view.find("..");
  WorkerRange range;
  if (dots == std::string_view::npos) {
    range.min = range.max = parse_one(view);
  } else {
    range.min = parse_one(view.substr(0, dots));
    range.max = parse_one(view.substr(dots + 2));
  }
  if (range.min > range.max || range.max > kMaxSweepWorkers) {
    throw UsageError("--n range '" + text + "' must satisfy 1 <= MIN <= MAX <= " +
                     std::to_string(kMaxSweepWorkers));
  }
  return range;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file || !(file << content) || !file.flush()) {
    throw ModelError("cannot write '" + path + "'");
  }
}

RunOverrides overrides_from(const CLI::App& sub, const Options& opts) {
  RunOverrides o;
  if (!opts.range.empty()) o.sweep = parse_range(opts.range);
  if (sub.count("--seed") > 0) o.seed = opts.seed;
  if (sub.count("--trials") > 0) o.trials = opts.trials;
  return o;
}

int cmd_arch(const Options& opts, std::ostream& out) {
  const ModelConfig config = load_config(opts.config);
  const auto* gd = std::get_if<GradientDescentConfig>(&config.workload);
  if (gd == nullptr || !gd->derived_counts) {
    throw ModelError("arch needs a gradient_descent workload with an "
                     "architecture");
  }
  out << "total_weights: " << gd->derived_counts->total_weights << '\n'
      << "forward_madds: " << gd->derived_counts->forward_madds << '\n'
      << "gradient_madds: " << gd->derived_counts->gradient_madds << '\n';
  return kExitOk;
}

int cmd_sweep(const CLI::App& sub, const Options& opts, std::ostream& out) {
  const ModelConfig config = load_config(opts.config);
  const RunOverrides overrides = overrides_from(sub, opts);
  const SpeedupCurve curve =
      build_curve(config, resolve_range(config, overrides), overrides);
  const std::string csv = emit_curve_csv(curve);
  if (opts.out.empty()) {
    out << csv;
  } else {
    write_file(opts.out, csv);
  }
  if (!opts.svg.empty()) write_file(opts.svg, emit_curve_svg(curve));
  return kExitOk;
}

int cmd_optimal(const CLI::App& sub, const Options& opts, std::ostream& out) {
  const ModelConfig config = load_config(opts.config);
  const RunOverrides overrides = overrides_from(sub, opts);
  const SpeedupCurve curve =
      build_curve(config, resolve_range(config, overrides), overrides);
  out << optimal_nodes(curve) << '\n';
  return kExitOk;
}

int cmd_validate(const CLI::App& sub, const Options& opts, std::ostream& out) {
  ModelConfig config = load_config(opts.config);
  const RunOverrides overrides = overrides_from(sub, opts);
  const SeriesKind kind = parse_series_kind(opts.kind);
  EmpiricalSeries actual =
      load_empirical_csv(read_text_file(opts.empirical), kind);
  if (actual.points.empty()) {
    throw ModelError("empirical series has no data rows");
  }

  // Extend the sweep to every measured n; pin the weak-scaling reference
  // first so the extension does not move it.
  WorkerRange range = resolve_range(config, overrides);
  if (!config.reference_n) config.reference_n = range.min;
  range.min = std::min(range.min, actual.points.front().n);
  range.max = std::max(range.max, actual.points.back().n);
  const SpeedupCurve curve = build_curve(config, range, overrides);

  bool compare_speedup = kind == SeriesKind::kSpeedup;
  if (opts.normalize) {
    if (kind != SeriesKind::kTime) {
      throw ModelError("--normalize applies to --kind time only");
    }
    actual = normalize_to_reference(actual, curve.reference_n);
    compare_speedup = true;
  }
  std::vector<SeriesPoint> predicted;
  predicted.reserve(curve.points.size());
  for (const auto& p : curve.points) {
    predicted.push_back(
        SeriesPoint{p.n, compare_speedup ? p.speedup : p.t_total});
  }
  const double error = mape(predicted, actual);

  std::ostringstream line;
  line << std::fixed << std::setprecision(2) << error;
  out << "MAPE: " << line.str() << "%\n";
  out << "basis: " << (compare_speedup ? "speedup" : "time");
  if (compare_speedup) out << " (reference n=" << curve.reference_n << ")";
  out << ", points: " << actual.points.size() << '\n';
  return kExitOk;
}

int cmd_partition(const CLI::App& sub, const Options& opts, std::ostream& out) {
  const ModelConfig config = load_config(opts.config);
  const RunOverrides overrides = overrides_from(sub, opts);
  const auto estimates =
      partition_sweep(config, resolve_range(config, overrides), overrides);
  const std::string csv = emit_partition_csv(estimates);
  if (opts.out.empty()) {
    out << csv;
  } else {
    write_file(opts.out, csv);
  }
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Analytical scalability estimator for distributed machine "
               "learning workloads",
               "scalemodel"};
  app.require_subcommand(1);
  Options opts;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config, "JSON model configuration")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto add_sweep_flags = [&](CLI::App* sub) {
    sub->add_option("--n", opts.range, "Worker range MIN..MAX (overrides sweep)");
    sub->add_option("--seed", opts.seed,
                    "Partition seed (fallback: config, then SCALEMODEL_SEED)");
    sub->add_option("--trials", opts.trials, "Monte-Carlo trials per n")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* arch = app.add_subcommand("arch", "Print network weight and "
                                              "multiply-add counts");
  add_config(arch);

  CLI::App* sweep = app.add_subcommand("sweep", "Emit the speedup curve");
  add_config(sweep);
  add_sweep_flags(sweep);
  sweep->add_option("--out", opts.out, "CSV output path (default: stdout)");
  sweep->add_option("--svg", opts.svg, "Also render the curve as SVG");

  CLI::App* optimal = app.add_subcommand("optimal", "Print the optimal worker count");
  add_config(optimal);
  add_sweep_flags(optimal);

  CLI::App* validate = app.add_subcommand(
      "validate", "Compare the model against measurements (MAPE)");
  add_config(validate);
  add_sweep_flags(validate);
  validate->add_option("--empirical", opts.empirical, "CSV with header n,value")
      ->required()
      ->check(CLI::ExistingFile);
  validate->add_option("--kind", opts.kind, "Measured quantity")
      ->required()
      ->check(CLI::IsMember({"time", "speedup"}));
  validate->add_flag("--normalize", opts.normalize,
                     "Turn measured times into speedups at the curve's "
                     "reference n before comparing");

  CLI::App* partition = app.add_subcommand(
      "partition", "Print Monte-Carlo max-edge estimates per worker count");
  add_config(partition);
  add_sweep_flags(partition);
  partition->add_option("--out", opts.out, "CSV output path (default: stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (arch->parsed()) return cmd_arch(opts, out);
    if (sweep->parsed()) return cmd_sweep(*sweep, opts, out);
    if (optimal->parsed()) return cmd_optimal(*optimal, opts, out);
    if (validate->parsed()) return cmd_validate(*validate, opts, out);
    if (partition->parsed()) return cmd_partition(*partition, opts, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitModel;
  }
  return kExitUsage;
}

}  // namespace scalemodel::cli
