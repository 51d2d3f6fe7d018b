#include <cstdlib>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "scalemodel/config.hpp"
#include "scalemodel/error.hpp"
#include "scalemodel/scenario.hpp"

using namespace scalemodel;
using nlohmann::json;

namespace {

const std::filesystem::path kSourceDir = SCALEMODEL_SOURCE_DIR;

json base_gd() {
  return json::parse(R"({
    "hardware": {"peak_ops_per_sec": 105.6e9, "efficiency": 0.8,
                 "bandwidth_bits_per_sec": 1e9},
    "workload": {"gradient_descent": {"cost_per_point_ops": 72e6,
                                      "num_params": 12e6,
                                      "batch_size": 60000}},
    "comm": {"topology": "spark_hybrid", "bits_per_param": 64},
    "sweep": {"n_min": 1, "n_max": 13}
  })");
}

json base_gi() {
  return json::parse(R"({
    "hardware": {"peak_ops_per_sec": 1e9, "efficiency": 1,
                 "bandwidth_bits_per_sec": 1e9},
    "workload": {"graph_inference": {"num_vertices": 1e3, "num_edges": 4000,
                                     "states": 2, "shared_memory": true,
                                     "trials": 10}},
    "sweep": {"n_min": 1, "n_max": 8}
  })");
}

ModelConfig parse(const json& doc) {
  return parse_config(doc.dump(), kSourceDir / "configs");
}

}  // namespace

TEST_CASE("architecture config derives C and W") {
  const auto config = load_config(kSourceDir / "configs/spark_fc.json");
  const auto& gd = std::get<GradientDescentConfig>(config.workload);
  CHECK(gd.model.cost_per_point_ops == 71'790'000.0);
  CHECK(gd.model.num_params == 11'965'000.0);
  CHECK(gd.model.batch_size == 60000.0);
  REQUIRE(gd.derived_counts);
  CHECK(gd.derived_counts->forward_madds == 23'930'000);
  CHECK(config.comm.variant() == Topology::kSparkHybrid);
  CHECK(config.comm.bits_per_param() == 64);
  CHECK(config.sweep.min == 1);
  CHECK(config.sweep.max == 13);
}

TEST_CASE("derived and explicit counts of the same network agree") {
  auto explicit_doc = base_gd();
  explicit_doc["workload"]["gradient_descent"]["cost_per_point_ops"] = 71'790'000;
  explicit_doc["workload"]["gradient_descent"]["num_params"] = 11'965'000;
  const auto from_counts = parse(explicit_doc);
  const auto from_arch = load_config(kSourceDir / "configs/spark_fc.json");
  const auto a = build_curve(from_counts, {1, 40});
  const auto b = build_curve(from_arch, {1, 40});
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].t_total == b.points[i].t_total);
  }
}

TEST_CASE("config errors name the problem") {
  auto doc = base_gd();
  doc["comm"]["topology"] = "ring";
  CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("unknown topology 'ring'"),
                       ConfigError);

  doc = base_gd();
  doc.erase("hardware");
  CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("'hardware'"), ConfigError);

  doc = base_gd();
  doc["workload"]["gradient_descent"]["architecture"] =
      json::parse(R"({"layers": [{"dense": {"in": 4, "out": 2}}]})");
  CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("ambiguous"), ConfigError);

  doc = base_gd();
  doc["hardware"]["efficiency"] = 1.5;
  CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("hardware"), ConfigError);

  doc = base_gd();
  doc["hardware"]["flops"] = 1;
  CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("unknown field 'flops'"),
                       ConfigError);

  doc = base_gd();
  doc.erase("comm");
  CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("'comm'"), ConfigError);

  doc = base_gd();
  doc["workload"]["gradient_descent"]["num_params"] = 0;
  CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("num_params"), ConfigError);

  doc = base_gd();
  doc["sweep"]["n_min"] = 20;
  CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("n_min"), ConfigError);

  doc = base_gd();
  doc["sweep"]["n_min"] = 0;
  CHECK_THROWS_AS(parse(doc), ConfigError);

  doc = base_gd();
  doc["workload"]["graph_inference"] = base_gi()["workload"]["graph_inference"];
  CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("exactly one"), ConfigError);

  doc = base_gd();
  doc["workload"]["gradient_descent"]["scaling"] = "sideways";
  CHECK_THROWS_AS(parse(doc), ConfigError);

  doc = base_gd();
  doc["workload"]["gradient_descent"]["architecture"] = json::parse(
      R"({"layers": [{"dense": {"in": 4, "out": 2}}, {"dense": {"in": 3, "out": 1}}]})");
  doc["workload"]["gradient_descent"].erase("cost_per_point_ops");
  doc["workload"]["gradient_descent"].erase("num_params");
  CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("layer 1"), ConfigError);

  CHECK_THROWS_WITH_AS(parse_config("{\"hardware\": "), doctest::Contains("JSON"),
                       ConfigError);
}

TEST_CASE("architecture with convolutions and an explicit input shape") {
  auto doc = base_gd();
  auto& gd = doc["workload"]["gradient_descent"];
  gd.erase("cost_per_point_ops");
  gd.erase("num_params");
  gd["architecture"] = json::parse(R"({
    "input": {"side": 28, "depth": 1},
    "layers": [{"conv": {"maps": 16, "kernel": 5}},
               {"dense": {"in": 9216, "out": 10, "bias": true}}]})");
  const auto config = parse(doc);
  const auto& counts = *std::get<GradientDescentConfig>(config.workload).derived_counts;
  CHECK(counts.total_weights == 400 + 92160 + 10);
  CHECK(counts.forward_madds == 230'400 + 2 * 92160);

  gd["architecture"].erase("input");
  CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("'input'"), ConfigError);
}

TEST_CASE("graph workloads from counts, edge lists and degree files") {
  auto doc = base_gi();
  auto config = parse(doc);
  auto& gi = std::get<GraphInferenceConfig>(config.workload);
  CHECK(gi.workload.num_vertices == 1000.0);
  CHECK(gi.workload.num_edges == 4000.0);
  CHECK(gi.degrees.degrees.size() == 1000);
  CHECK(gi.degrees.degrees.front() == 8);
  CHECK(gi.trials == 10);
  CHECK_FALSE(gi.seed.has_value());

  doc["workload"]["graph_inference"]["num_vertices"] = 1.5;
  CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("integer"), ConfigError);

  doc = base_gi();
  auto& g = doc["workload"]["graph_inference"];
  g.erase("num_vertices");
  g.erase("num_edges");
  g["edge_list"] = "../data/powerlaw_2k.edges";
  g["seed"] = 42;
  g["assignment"] = "independent";
  config = parse(doc);
  const auto& from_edges = std::get<GraphInferenceConfig>(config.workload);
  CHECK(from_edges.workload.num_vertices == 2000.0);
  CHECK(from_edges.workload.num_edges == 7984.0);
  CHECK(from_edges.seed == 42u);
  CHECK(from_edges.assignment == AssignmentMode::kIndependent);

  g["degree_file"] = "whatever.txt";
  CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("ambiguous"), ConfigError);
  g.erase("degree_file");
  g["edge_list"] = "does/not/exist.edges";
  CHECK_THROWS_WITH_AS(parse(doc), doctest::Contains("cannot open"), ConfigError);
}

TEST_CASE("uniform degree sequences spread endpoints evenly") {
  const auto d = uniform_degree_sequence(4, 5);
  CHECK(d.degrees == std::vector<std::uint64_t>{3, 3, 2, 2});
  CHECK(d.num_edges == 5);
}

TEST_CASE("seed precedence") {
  auto doc = base_gi();
  const auto no_seed = parse(doc);
  doc["workload"]["graph_inference"]["seed"] = 11;
  const auto with_seed = parse(doc);

  ::unsetenv(kSeedEnvVar);
  CHECK(resolve_seed(no_seed, {}) == 0);
  ::setenv(kSeedEnvVar, "99", 1);
  CHECK(resolve_seed(no_seed, {}) == 99);
  CHECK(resolve_seed(with_seed, {}) == 11);
  RunOverrides o;
  o.seed = 5;
  CHECK(resolve_seed(with_seed, o) == 5);
  ::setenv(kSeedEnvVar, "abc", 1);
  CHECK_THROWS_AS(resolve_seed(no_seed, {}), ConfigError);
  ::unsetenv(kSeedEnvVar);
}

TEST_CASE("graph time model uses the partition estimate") {
  auto doc = base_gi();
  doc["workload"]["graph_inference"]["seed"] = 3;
  const auto config = parse(doc);
  const auto model = make_time_model(config);
  const auto& gi = std::get<GraphInferenceConfig>(config.workload);

  const auto t1 = model(1);
  CHECK(t1.t_cp == doctest::Approx(4000.0 * 14 / 1e9));
  const auto est = estimate_partition(gi.degrees, 4, 10, 3);
  CHECK(model(4).t_cp == doctest::Approx(est.mean_max_edges * 14 / 1e9));

  const auto sweep = partition_sweep(config, {1, 3});
  REQUIRE(sweep.size() == 3);
  CHECK(sweep[0].mean_max_edges == 4000.0);
}

TEST_CASE("shared-memory graph speedup does not depend on throughput") {
  auto doc = base_gi();
  doc["workload"]["graph_inference"]["seed"] = 8;
  const auto slow = build_curve(parse(doc), {1, 12});
  doc["hardware"]["peak_ops_per_sec"] = 1e12;
  const auto fast = build_curve(parse(doc), {1, 12});
  for (std::size_t i = 0; i < slow.points.size(); ++i) {
    CHECK(slow.points[i].speedup == doctest::Approx(fast.points[i].speedup).epsilon(1e-12));
  }
}

TEST_CASE("weak scaling defaults its reference to the start of the range") {
  auto doc = base_gd();
  doc["workload"]["gradient_descent"]["scaling"] = "weak";
  doc["sweep"] = json::parse(R"({"n_min": 10, "n_max": 20})");
  const auto curve = build_curve(parse(doc), {10, 20});
  CHECK(curve.mode == ScalingMode::kWeak);
  CHECK(curve.reference_n == 10);
  CHECK(curve.points.front().speedup == 1.0);

  doc["reference_n"] = 30;
  CHECK_THROWS_AS(build_curve(parse(doc), {10, 20}), ModelError);
}
