#include "scalemodel/graph_partition.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "scalemodel/error.hpp"

namespace scalemodel {

namespace {

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits on '\n', handing each trimmed non-comment line and its 1-based
// number to fn.
template <typename Fn>
void for_each_data_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    fn(line, line_no);
  }
}

// Parses whitespace-separated unsigned integers from line.
std::vector<std::uint64_t> parse_uints(std::string_view line,
                                       std::size_t line_no) {
  std::vector<std::uint64_t> values;
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (p != end) {
    if (*p == ' ' || *p == '\t') {
      ++p;
      continue;
    }
    std::uint64_t v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || (next != end && *next != ' ' && *next != '\t')) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected non-negative integers, got '" +
                        std::string(line) + "'");
    }
    values.push_back(v);
    p = next;
  }
  return values;
}

}  // namespace

DegreeSequence degrees_from_edge_list(std::span<const Edge> edges) {
  DegreeSequence degs;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    if (u == v) {
      throw ModelError("edge " + std::to_string(i) + ": self-loop on vertex " +
                       std::to_string(u));
    }
    const VertexId hi = std::max(u, v);
    if (hi >= degs.degrees.size()) degs.degrees.resize(hi + 1, 0);
    ++degs.degrees[u];
    ++degs.degrees[v];
  }
  degs.num_edges = edges.size();
  return degs;
}

std::vector<Edge> parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  for_each_data_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto ids = parse_uints(line, line_no);
    if (ids.size() != 2) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected two vertex ids, got '" + std::string(line) +
                        "'");
    }
    edges.emplace_back(ids[0], ids[1]);
  });
  return edges;
}

DegreeSequence parse_degree_file(std::string_view text) {
  DegreeSequence degs;
  std::uint64_t endpoint_sum = 0;
  for_each_data_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto values = parse_uints(line, line_no);
    if (values.size() != 1) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected one degree, got '" + std::string(line) +
                        "'");
    }
    degs.degrees.push_back(values[0]);
    endpoint_sum += values[0];
  });
  if (endpoint_sum % 2 != 0) {
    throw ConfigError("degree sum " + std::to_string(endpoint_sum) +
                      " is odd; not a valid undirected graph");
  }
  degs.num_edges = endpoint_sum / 2;
  return degs;
}

double expected_duplicates(double num_vertices, double num_edges,
                           WorkerCount n) {
  if (!(num_vertices >= 2)) {
    throw ModelError("expected_duplicates needs at least 2 vertices");
  }
  if (n < 1) {
    throw ModelError("worker count must be >= 1");
  }
  const double per_worker = num_vertices / static_cast<double>(n);
  // Pairs inside one worker over all pairs, times E. The halves cancel.
  const double pair_fraction = (per_worker * (per_worker - 1.0)) /
                               (num_vertices * (num_vertices - 1.0));
  return num_edges * pair_fraction;
}

std::vector<WorkerCount> assign_vertices(std::size_t num_vertices,
                                         WorkerCount n, std::uint64_t seed,
                                         std::uint64_t trial,
                                         AssignmentMode mode) {
  if (n < 1) {
    throw ModelError("worker count must be >= 1");
  }
  std::vector<WorkerCount> worker(num_vertices, 0);
  if (n == 1) return worker;

  auto engine = trial_engine(seed, trial);
  if (mode == AssignmentMode::kBalanced) {
    std::vector<std::size_t> order(num_vertices);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), engine);
    for (std::size_t pos = 0; pos < num_vertices; ++pos) {
      worker[order[pos]] = static_cast<WorkerCount>(pos % n);
    }
  } else {
    std::uniform_int_distribution<WorkerCount> pick(0, n - 1);
    for (auto& w : worker) w = pick(engine);
  }
  return worker;
}

std::vector<std::uint64_t> worker_degree_sums(
    const DegreeSequence& degs, std::span<const WorkerCount> assignment,
    WorkerCount n) {
  if (assignment.size() != degs.degrees.size()) {
    throw ModelError("assignment size does not match vertex count");
  }
  std::vector<std::uint64_t> sums(static_cast<std::size_t>(n), 0);
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    sums[static_cast<std::size_t>(assignment[v])] += degs.degrees[v];
  }
  return sums;
}

PartitionEstimate estimate_partition(const DegreeSequence& degs, WorkerCount n,
                                     std::int64_t trials, std::uint64_t seed,
                                     const PartitionOptions& options) {
  if (degs.degrees.empty()) {
    throw ModelError("partition: empty degree sequence");
  }
  if (n < 1) {
    throw ModelError("partition: worker count must be >= 1");
  }
  if (trials < 1) {
    throw ModelError("partition: trials must be >= 1");
  }

  const double num_vertices = static_cast<double>(degs.degrees.size());
  const double num_edges = static_cast<double>(degs.num_edges);

  PartitionEstimate est;
  est.n = n;
  est.trials = trials;
  est.seed = seed;
  est.e_dup = num_vertices >= 2 ? expected_duplicates(num_vertices, num_edges, n)
                                : 0.0;
  est.per_trial_max.assign(static_cast<std::size_t>(trials), 0.0);

  auto run_trial = [&](std::int64_t t) {
    const auto assignment =
        assign_vertices(degs.degrees.size(), n, seed,
                        static_cast<std::uint64_t>(t), options.mode);
    const auto sums = worker_degree_sums(degs, assignment, n);
    const auto busiest = *std::max_element(sums.begin(), sums.end());
    est.per_trial_max[static_cast<std::size_t>(t)] =
        static_cast<double>(busiest) - est.e_dup;
  };

  unsigned threads = options.threads != 0
                         ? options.threads
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::int64_t>(threads, trials));
  if (threads <= 1) {
    for (std::int64_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::int64_t t = w; t < trials; t += threads) run_trial(t);
      });
    }
  }

  // Sum in sorted order so the mean does not depend on trial scheduling.
  std::vector<double> sorted = est.per_trial_max;
  std::sort(sorted.begin(), sorted.end());
  const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  est.mean_max_edges = total / static_cast<double>(trials);
  est.min_max_edges = sorted.front();
  est.max_max_edges = sorted.back();
  return est;
}

}  // namespace scalemodel
