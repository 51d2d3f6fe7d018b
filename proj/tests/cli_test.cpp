#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "scalemodel/cli.hpp"
#include "scalemodel/config.hpp"
#include "scalemodel/report.hpp"

namespace fs = std::filesystem;
using namespace scalemodel;

namespace {

const fs::path kSourceDir = SCALEMODEL_SOURCE_DIR;

std::string cfg(const char* name) {
  return (kSourceDir / "configs" / name).string();
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "scalemodel");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("scalemodel_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

void write(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("arch prints network counts") {
  const auto r = run_cli({"arch", "--config", cfg("spark_fc.json")});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "total_weights: 11965000\nforward_madds: 23930000\n"
        "gradient_madds: 71790000\n");

  const auto explicit_counts =
      run_cli({"arch", "--config", cfg("spark_fc_explicit.json")});
  CHECK(explicit_counts.code == 2);
  CHECK(explicit_counts.err.find("architecture") != std::string::npos);
}

TEST_CASE("sweep writes CSV and SVG") {
  TempDir tmp;
  const auto r = run_cli({"sweep", "--config", cfg("spark_fc.json"), "--out",
                          tmp.file("curve.csv"), "--svg", tmp.file("curve.svg")});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const std::string csv = read_text_file(tmp.file("curve.csv"));
  const auto rows = parse_curve_csv(csv);
  CHECK(rows.size() == 13);
  CHECK(rows.front().n == 1);
  CHECK(rows.back().n == 13);
  CHECK(read_text_file(tmp.file("curve.svg")).find("<polyline") !=
        std::string::npos);

  const auto to_stdout = run_cli({"sweep", "--config", cfg("spark_fc.json")});
  CHECK(to_stdout.out == csv);
}

TEST_CASE("--n overrides the configured sweep") {
  const auto r =
      run_cli({"sweep", "--config", cfg("spark_fc.json"), "--n", "4..6"});
  REQUIRE(r.code == 0);
  const auto rows = parse_curve_csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].n == 4);
  // Strong-scaling speedup stays relative to one worker.
  CHECK(rows[0].speedup == doctest::Approx(2.940208).epsilon(1e-6));

  CHECK(run_cli({"optimal", "--config", cfg("spark_fc.json"), "--n", "7"}).out ==
        "7\n");
  for (const char* bad : {"0..3", "5..2", "a..b", "3..", "1..2000000"}) {
    const auto e = run_cli({"sweep", "--config", cfg("spark_fc.json"), "--n", bad});
    CHECK(e.code == 1);
    CHECK(e.err.find("--n") != std::string::npos);
  }
}

TEST_CASE("optimal matches the argmax of the sweep") {
  for (const char* name : {"spark_fc.json", "spark_fc_explicit.json",
                           "inception_weak.json", "bp_powerlaw.json"}) {
    const auto sweep = run_cli({"sweep", "--config", cfg(name)});
    const auto optimal = run_cli({"optimal", "--config", cfg(name)});
    REQUIRE(sweep.code == 0);
    REQUIRE(optimal.code == 0);
    const auto rows = parse_curve_csv(sweep.out);
    const CurvePoint* best = &rows.front();
    for (const auto& p : rows) {
      if (p.speedup > best->speedup) best = &p;
    }
    CHECK(optimal.out == std::to_string(best->n) + "\n");
  }
  CHECK(run_cli({"optimal", "--config", cfg("spark_fc.json")}).out == "9\n");
}

TEST_CASE("validate reports MAPE") {
  const auto r = run_cli({"validate", "--config", cfg("mape_fixture.json"),
                          "--empirical",
                          (kSourceDir / "data/mape_fixture.csv").string(),
                          "--kind", "time"});
  CHECK(r.code == 0);
  CHECK(r.out == "MAPE: 22.50%\nbasis: time, points: 2\n");

  TempDir tmp;
  // Speedups 1 and 0.5 predicted; measured 1 and 0.4.
  write(tmp.file("speedup.csv"), "n,value\n1,1\n2,0.4\n");
  const auto s = run_cli({"validate", "--config", cfg("mape_fixture.json"),
                          "--empirical", tmp.file("speedup.csv"), "--kind",
                          "speedup"});
  CHECK(s.code == 0);
  CHECK(s.out == "MAPE: 12.50%\nbasis: speedup (reference n=1), points: 2\n");

  // Normalized times: actual speedups 1 and 8/25, predicted 1 and 0.5.
  const auto norm = run_cli({"validate", "--config", cfg("mape_fixture.json"),
                             "--empirical",
                             (kSourceDir / "data/mape_fixture.csv").string(),
                             "--kind", "time", "--normalize"});
  CHECK(norm.code == 0);
  REQUIRE(norm.out.rfind("MAPE: ", 0) == 0);
  CHECK(std::stod(norm.out.substr(6)) == doctest::Approx(28.125).epsilon(1e-3));

  // Measured n outside the configured sweep extends the evaluation.
  write(tmp.file("far.csv"), "n,value\n1,10\n40,0.5\n");
  const auto far = run_cli({"validate", "--config", cfg("spark_fc.json"),
                            "--empirical", tmp.file("far.csv"), "--kind",
                            "time"});
  CHECK(far.code == 0);

  write(tmp.file("bad.csv"), "n,value\n1,0\n");
  const auto bad = run_cli({"validate", "--config", cfg("mape_fixture.json"),
                            "--empirical", tmp.file("bad.csv"), "--kind", "time"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("positive") != std::string::npos);

  const auto missing_kind =
      run_cli({"validate", "--config", cfg("mape_fixture.json"), "--empirical",
               (kSourceDir / "data/mape_fixture.csv").string()});
  CHECK(missing_kind.code == 1);
  const auto bad_kind =
      run_cli({"validate", "--config", cfg("mape_fixture.json"), "--empirical",
               (kSourceDir / "data/mape_fixture.csv").string(), "--kind", "rate"});
  CHECK(bad_kind.code == 1);
}

TEST_CASE("partition output is deterministic and seed-sensitive") {
  const std::vector<std::string> base = {"partition", "--config",
                                         cfg("bp_powerlaw.json"), "--n", "1..6",
                                         "--trials", "20"};
  const auto a = run_cli(base);
  const auto b = run_cli(base);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind(std::string(kPartitionCsvHeader) + "\n1,20,42,7984,7984,", 0) ==
        0);

  auto reseeded = base;
  reseeded.insert(reseeded.end(), {"--seed", "43"});
  CHECK(run_cli(reseeded).out != a.out);

  const auto gd = run_cli({"partition", "--config", cfg("spark_fc.json")});
  CHECK(gd.code == 2);
  CHECK(gd.err.find("graph_inference") != std::string::npos);
}

TEST_CASE("usage and model errors map to distinct exit codes") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"bogus"}).code == 1);
  CHECK(run_cli({"sweep"}).code == 1);
  CHECK(run_cli({"sweep", "--config", cfg("missing.json")}).code == 1);
  CHECK(run_cli({"sweep", "--config", cfg("spark_fc.json"), "--trials", "0"}).code ==
        1);

  TempDir tmp;
  write(tmp.file("ring.json"), R"({
    "hardware": {"peak_ops_per_sec": 1e9, "efficiency": 1, "bandwidth_bits_per_sec": 1e9},
    "workload": {"gradient_descent": {"cost_per_point_ops": 1, "num_params": 1, "batch_size": 1}},
    "comm": {"topology": "ring"},
    "sweep": {"n_min": 1, "n_max": 4}})");
  const auto r = run_cli({"sweep", "--config", tmp.file("ring.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown topology 'ring'") != std::string::npos);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("sweep") != std::string::npos);
}
