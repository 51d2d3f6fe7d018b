#include "scalemodel/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"
#include "scalemodel/error.hpp"

namespace scalemodel {

namespace {

using nlohmann::json;

// Field access with the JSON path carried along for error messages.
class Node {
 public:
  Node(const json& value, std::string path)
      : value_(value), path_(std::move(path)) {}

  const json& value() const { return value_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("config: " + (path_.empty() ? "" : path_ + ": ") + what);
  }

  void expect_object() const {
    if (!value_.is_object()) fail("expected an object");
  }

  // Rejects keys outside allowed so typos do not pass silently.
  void only_keys(std::initializer_list<std::string_view> allowed) const {
    expect_object();
    for (const auto& item : value_.items()) {
      bool known = false;
      for (auto key : allowed) known = known || item.key() == key;
      if (!known) fail("unknown field '" + item.key() + "'");
    }
  }

  bool has(const std::string& key) const {
    return value_.is_object() && value_.contains(key);
  }

  Node child(const std::string& key) const {
    if (!has(key)) fail("missing required field '" + key + "'");
    return Node(value_.at(key), path_.empty() ? key : path_ + "." + key);
  }

  double number() const {
    if (!value_.is_number()) fail("expected a number");
    return value_.get<double>();
  }

  double non_negative() const {
    const double v = number();
    if (!(v >= 0) || !std::isfinite(v)) fail("expected a finite value >= 0");
    return v;
  }

  // Integers may be written in scientific notation (1e6) as long as they
  // are integral.
  std::uint64_t count() const {
    if (value_.is_number_unsigned()) return value_.get<std::uint64_t>();
    if (value_.is_number_integer()) {
      if (value_.get<std::int64_t>() < 0) fail("expected a count >= 0");
      return value_.get<std::uint64_t>();
    }
    const double v = number();
    if (!(v >= 0) || v != std::floor(v) || v > 9.0e15) {
      fail("expected a non-negative integer");
    }
    return static_cast<std::uint64_t>(v);
  }

  bool boolean() const {
    if (!value_.is_boolean()) fail("expected true or false");
    return value_.get<bool>();
  }

  std::string string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? child(key).non_negative() : fallback;
  }
  bool bool_or(const std::string& key, bool fallback) const {
    return has(key) ? child(key).boolean() : fallback;
  }

 private:
  const json& value_;
  std::string path_;
};

// Re-throws ModelError from a constructor as a ConfigError with the path.
template <typename Fn>
auto checked(const Node& node, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const ModelError& e) {
    node.fail(e.what());
  }
}

HardwareSpec parse_hardware(const Node& node) {
  node.only_keys({"peak_ops_per_sec", "efficiency", "bandwidth_bits_per_sec"});
  const double peak = node.child("peak_ops_per_sec").number();
  const double efficiency = node.child("efficiency").number();
  const double bandwidth = node.child("bandwidth_bits_per_sec").number();
  return checked(node, [&] { return HardwareSpec(peak, efficiency, bandwidth); });
}

CommTopology parse_comm(const Node& node) {
  node.only_keys({"topology", "bits_per_param", "stages"});
  const std::string name = node.child("topology").string();
  const int bits =
      node.has("bits_per_param")
          ? static_cast<int>(node.child("bits_per_param").count())
          : 32;
  const int stages =
      node.has("stages") ? static_cast<int>(node.child("stages").count()) : 2;
  return checked(node, [&] {
    return CommTopology(parse_topology(name), stages, bits);
  });
}

LayerSpec parse_layer(const Node& node) {
  node.expect_object();
  if (node.value().size() != 1) {
    node.fail("a layer must hold exactly one of 'dense' or 'conv'");
  }
  if (node.has("dense")) {
    const Node d = node.child("dense");
    d.only_keys({"in", "out", "bias"});
    return DenseLayerSpec{d.child("in").count(), d.child("out").count(),
                          d.bool_or("bias", false)};
  }
  if (node.has("conv")) {
    const Node c = node.child("conv");
    c.only_keys({"maps", "kernel", "border", "stride", "bias"});
    return ConvLayerSpec{
        c.child("maps").count(), c.child("kernel").count(),
        c.has("border") ? c.child("border").count() : 0,
        c.has("stride") ? c.child("stride").count() : 1,
        c.bool_or("bias", false)};
  }
  node.fail("unknown layer type (expected 'dense' or 'conv')");
}

Architecture parse_architecture(const Node& node) {
  node.only_keys({"input", "layers"});
  const Node layers = node.child("layers");
  if (!layers.value().is_array()) layers.fail("expected an array");

  Architecture arch;
  for (std::size_t i = 0; i < layers.value().size(); ++i) {
    arch.layers.push_back(parse_layer(
        Node(layers.value()[i], layers.path() + "[" + std::to_string(i) + "]")));
  }
  if (node.has("input")) {
    const Node in = node.child("input");
    in.only_keys({"side", "depth"});
    arch.input = TensorShape{in.has("side") ? in.child("side").count() : 1,
                             in.child("depth").count()};
    if (arch.input.side < 1 || arch.input.depth < 1) {
      in.fail("side and depth must be >= 1");
    }
  } else if (!arch.layers.empty() &&
             std::holds_alternative<DenseLayerSpec>(arch.layers.front())) {
    // A dense-only stack can omit the input shape.
    arch.input = TensorShape{1, std::get<DenseLayerSpec>(arch.layers.front()).inputs};
  } else {
    node.fail("missing required field 'input' (needed when the first layer "
              "is not dense)");
  }
  return arch;
}

GradientDescentConfig parse_gradient_descent(const Node& node) {
  node.only_keys({"cost_per_point_ops", "num_params", "architecture",
                  "batch_size", "scaling"});
  GradientDescentConfig gd;
  const bool explicit_counts =
      node.has("cost_per_point_ops") || node.has("num_params");
  if (node.has("architecture")) {
    if (explicit_counts) {
      node.fail("ambiguous workload: give either 'architecture' or "
                "'cost_per_point_ops'/'num_params', not both");
    }
    const Node arch_node = node.child("architecture");
    gd.architecture = parse_architecture(arch_node);
    gd.derived_counts = checked(arch_node, [&] {
      return network_totals(gd.architecture->layers, gd.architecture->input);
    });
    gd.model.cost_per_point_ops =
        static_cast<double>(gd.derived_counts->gradient_madds);
    gd.model.num_params = static_cast<double>(gd.derived_counts->total_weights);
  } else {
    gd.model.cost_per_point_ops = node.child("cost_per_point_ops").non_negative();
    gd.model.num_params = node.child("num_params").non_negative();
  }
  gd.model.batch_size = node.child("batch_size").non_negative();
  if (node.has("scaling")) {
    const Node s = node.child("scaling");
    gd.scaling = checked(s, [&] { return parse_scaling_mode(s.string()); });
  }
  return gd;
}

GraphInferenceConfig parse_graph_inference(const Node& node,
                                           const std::filesystem::path& base_dir) {
  node.only_keys({"num_vertices", "num_edges", "edge_list", "degree_file",
                  "states", "replication", "shared_memory",
                  "literal_divide_by_n", "trials", "seed", "assignment"});
  GraphInferenceConfig gi;
  const int sources = int(node.has("edge_list")) + int(node.has("degree_file")) +
                      int(node.has("num_vertices") || node.has("num_edges"));
  if (sources == 0) {
    node.fail("missing graph: give 'edge_list', 'degree_file' or "
              "'num_vertices' with 'num_edges'");
  }
  if (sources > 1) {
    node.fail("ambiguous graph: give only one of 'edge_list', 'degree_file' "
              "or 'num_vertices'/'num_edges'");
  }
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  if (node.has("edge_list")) {
    const Node f = node.child("edge_list");
    const std::string text = read_text_file(resolve(f.string()));
    gi.degrees = checked(f, [&] {
      const auto edges = parse_edge_list(text);
      return degrees_from_edge_list(edges);
    });
  } else if (node.has("degree_file")) {
    const Node f = node.child("degree_file");
    const std::string text = read_text_file(resolve(f.string()));
    gi.degrees = checked(f, [&] { return parse_degree_file(text); });
  } else {
    const std::uint64_t v = node.child("num_vertices").count();
    const std::uint64_t e = node.child("num_edges").count();
    if (v < 1) node.fail("num_vertices must be >= 1");
    if (v == 1 && e > 0) node.fail("a single vertex cannot carry edges");
    gi.degrees = uniform_degree_sequence(v, e);
  }
  if (gi.degrees.degrees.empty()) node.fail("graph has no vertices");

  gi.workload.num_vertices = static_cast<double>(gi.degrees.degrees.size());
  gi.workload.num_edges = static_cast<double>(gi.degrees.num_edges);
  gi.workload.num_states = static_cast<double>(node.child("states").count());
  gi.workload.replication_factor = node.number_or("replication", 0.0);
  gi.workload.shared_memory = node.bool_or("shared_memory", false);
  gi.workload.literal_divide_by_n = node.bool_or("literal_divide_by_n", false);
  checked(node, [&] {
    validate(gi.workload);
    return 0;
  });
  if (node.has("trials")) {
    gi.trials = static_cast<std::int64_t>(node.child("trials").count());
    if (gi.trials < 1) node.child("trials").fail("must be >= 1");
  }
  if (node.has("seed")) gi.seed = node.child("seed").count();
  if (node.has("assignment")) {
    const Node a = node.child("assignment");
    const std::string mode = a.string();
    if (mode == "balanced") {
      gi.assignment = AssignmentMode::kBalanced;
    } else if (mode == "independent") {
      gi.assignment = AssignmentMode::kIndependent;
    } else {
      a.fail("unknown assignment '" + mode +
             "' (expected balanced or independent)");
    }
  }
  return gi;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

DegreeSequence uniform_degree_sequence(std::uint64_t num_vertices,
                                       std::uint64_t num_edges) {
  DegreeSequence degs;
  degs.num_edges = num_edges;
  if (num_vertices == 0) return degs;
  const std::uint64_t endpoints = 2 * num_edges;
  const std::uint64_t base = endpoints / num_vertices;
  const std::uint64_t extra = endpoints % num_vertices;
  degs.degrees.assign(num_vertices, base);
  for (std::uint64_t v = 0; v < extra; ++v) ++degs.degrees[v];
  return degs;
}

ModelConfig parse_config(std::string_view document,
                         const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  const Node root(doc, "");
  root.only_keys({"hardware", "workload", "comm", "sweep", "reference_n"});

  const HardwareSpec hardware = parse_hardware(root.child("hardware"));

  const Node workload = root.child("workload");
  workload.only_keys({"gradient_descent", "graph_inference"});
  if (workload.value().size() != 1) {
    workload.fail("expected exactly one of 'gradient_descent' or "
                  "'graph_inference'");
  }

  std::variant<GradientDescentConfig, GraphInferenceConfig> variant;
  std::optional<CommTopology> comm;
  if (workload.has("gradient_descent")) {
    variant = parse_gradient_descent(workload.child("gradient_descent"));
    // Communication is part of the gradient descent model.
    comm = parse_comm(root.child("comm"));
    const auto& gd = std::get<GradientDescentConfig>(variant);
    if (comm->variant() != Topology::kNone && !(gd.model.num_params > 0)) {
      workload.fail("num_params must be > 0 with a communicating topology");
    }
  } else {
    variant = parse_graph_inference(workload.child("graph_inference"), base_dir);
    if (root.has("comm")) comm = parse_comm(root.child("comm"));
  }

  const Node sweep = root.child("sweep");
  sweep.only_keys({"n_min", "n_max"});
  WorkerRange range{static_cast<WorkerCount>(sweep.child("n_min").count()),
                    static_cast<WorkerCount>(sweep.child("n_max").count())};
  if (range.min < 1) sweep.fail("n_min must be >= 1");
  if (range.min > range.max) sweep.fail("n_min must be <= n_max");
  if (range.max > kMaxSweepWorkers) {
    sweep.fail("n_max must be <= " + std::to_string(kMaxSweepWorkers));
  }

  std::optional<WorkerCount> reference_n;
  if (root.has("reference_n")) {
    const Node ref = root.child("reference_n");
    reference_n = static_cast<WorkerCount>(ref.count());
    if (*reference_n < 1) ref.fail("must be >= 1");
  }

  return ModelConfig{hardware, std::move(variant),
                     comm.value_or(CommTopology(Topology::kNone)), range,
                     reference_n};
}

ModelConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path), path.parent_path());
}

}  // namespace scalemodel
