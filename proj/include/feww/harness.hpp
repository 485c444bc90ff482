#pragma once

// Seeded experiment runner: per trial, generate an instance, run one
// algorithm, check the answer against the exact oracle and meter space.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "core_model.hpp"
#include "feww_insertion_deletion.hpp"
#include "feww_insertion_only.hpp"
#include "hard_instances.hpp"
#include "random.hpp"
#include "star_detection.hpp"

namespace feww {

enum class Algorithm : std::uint8_t { InsertionOnly, InsertionDeletion, Star };

struct ExperimentConfig {
  /// planted | dynamic | setdisj | bvl | amri | star
  std::string generator = "planted";
  Algorithm algorithm = Algorithm::InsertionOnly;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint64_t d = 0;
  std::uint32_t alpha = 1;
  double epsilon = 1.0;
  double delta = 0.0;
  StreamMode star_mode = StreamMode::InsertionOnly;

  // generator knobs
  std::uint32_t background = 0;    // planted
  std::uint32_t heavy = 0;         // dynamic
  std::uint32_t heavy_degree = 0;  // dynamic
  std::uint32_t churn = 0;         // dynamic
  std::uint32_t p = 2;             // setdisj, bvl
  std::uint32_t k = 1;             // setdisj, bvl
  bool intersecting = true;        // setdisj
  std::uint32_t noise = 0;         // star
  std::uint32_t noise_cap = 2;     // star

  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::string output;       ///< CSV path; empty means the caller decides
  unsigned threads = 1;
  bool timing = false;      ///< fill wall_ms; off keeps reports byte-reproducible

  void validate() const {
    if (trials < 1) throw Error(Errc::InvalidParameter, "trials must be >= 1");
    if (threads < 1) throw Error(Errc::InvalidParameter, "threads must be >= 1");
    if (alpha < 1) throw Error(Errc::InvalidParameter, "alpha must be >= 1");
    const bool dynamic = generator == "dynamic" || generator == "amri";
    if (generator == "star") {
      if (algorithm != Algorithm::Star)
        throw Error(Errc::InvalidParameter, "the star generator needs algorithm=star");
    } else if (generator == "planted" || generator == "setdisj" || generator == "bvl" ||
               dynamic) {
      if (algorithm == Algorithm::Star)
        throw Error(Errc::InvalidParameter, "algorithm=star needs generator=star");
      if (dynamic && algorithm == Algorithm::InsertionOnly)
        throw Error(Errc::InvalidParameter,
                    "generator " + generator + " emits deletions; use algorithm=del");
    } else {
      throw Error(Errc::InvalidParameter, "unknown generator '" + generator + "'");
    }
  }
};

inline Algorithm parse_algorithm(const std::string& v) {
  if (v == "ins" || v == "insertion-only") return Algorithm::InsertionOnly;
  if (v == "del" || v == "insertion-deletion") return Algorithm::InsertionDeletion;
  if (v == "star") return Algorithm::Star;
  throw Error(Errc::InvalidParameter, "unknown algorithm '" + v + "'");
}

inline StreamMode parse_mode(const std::string& v) {
  if (v == "ins") return StreamMode::InsertionOnly;
  if (v == "insdel" || v == "del") return StreamMode::InsertionDeletion;
  throw Error(Errc::InvalidParameter, "unknown mode '" + v + "'");
}

/// Flat `key=value` text; blank lines and lines starting with '#' are skipped.
inline ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig c;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::InvalidParameter, "config line " + std::to_string(line_no) + ": " + line);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    try {
      if (key == "generator") c.generator = value;
      else if (key == "algorithm") c.algorithm = parse_algorithm(value);
      else if (key == "n") c.n = static_cast<std::uint32_t>(std::stoul(value));
      else if (key == "m") c.m = static_cast<std::uint32_t>(std::stoul(value));
      else if (key == "d") c.d = std::stoull(value);
      else if (key == "alpha") c.alpha = static_cast<std::uint32_t>(std::stoul(value));
      else if (key == "epsilon") c.epsilon = std::stod(value);
      else if (key == "delta") c.delta = std::stod(value);
      else if (key == "mode") c.star_mode = parse_mode(value);
      else if (key == "background") c.background = static_cast<std::uint32_t>(std::stoul(value));
      else if (key == "heavy") c.heavy = static_cast<std::uint32_t>(std::stoul(value));
      else if (key == "heavy_degree") c.heavy_degree = static_cast<std::uint32_t>(std::stoul(value));
      else if (key == "churn") c.churn = static_cast<std::uint32_t>(std::stoul(value));
      else if (key == "p") c.p = static_cast<std::uint32_t>(std::stoul(value));
      else if (key == "k") c.k = static_cast<std::uint32_t>(std::stoul(value));
      else if (key == "intersecting") c.intersecting = value == "1" || value == "true";
      else if (key == "noise") c.noise = static_cast<std::uint32_t>(std::stoul(value));
      else if (key == "noise_cap") c.noise_cap = static_cast<std::uint32_t>(std::stoul(value));
      else if (key == "trials") c.trials = std::stoull(value);
      else if (key == "seed") c.seed = std::stoull(value);
      else if (key == "output") c.output = value;
      else if (key == "threads") c.threads = static_cast<unsigned>(std::stoul(value));
      else if (key == "timing") c.timing = value == "1" || value == "true";
      else throw Error(Errc::InvalidParameter, "unknown config key '" + key + "'");
    } catch (const std::logic_error&) {
      throw Error(Errc::InvalidParameter, "bad value for '" + key + "': " + value);
    }
  }
  c.validate();
  return c;
}

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  bool succeeded = false;
  std::uint64_t witness_count = 0;
  bool sound = true;
  std::uint64_t stored_edges = 0;
  std::uint64_t sketch_cells = 0;
  std::uint64_t wall_ms = 0;
  // Not part of the CSV.
  Vertex center = 0;
  std::optional<Vertex> expected_center;
  std::uint64_t threshold = 0;
};

/// A generated instance as the harness sees it.
struct TrialInstance {
  Stream stream;                     ///< bipartite stream, or the general graph for star
  std::uint64_t d = 0;               ///< FEwW threshold
  std::optional<Vertex> planted;     ///< the vertex the instance was built around
};

inline TrialInstance generate_instance(const ExperimentConfig& c, std::uint64_t seed) {
  TrialInstance t;
  t.d = c.d;
  if (c.generator == "planted") {
    auto g = gen_planted_star(c.n, c.m, static_cast<std::uint32_t>(c.d), c.background, seed);
    t.stream = std::move(g.stream);
    t.planted = g.hub;
  } else if (c.generator == "dynamic") {
    auto g = gen_planted_dynamic(c.n, c.m, static_cast<std::uint32_t>(c.d), c.heavy,
                                 c.heavy_degree, c.churn, seed);
    t.stream = std::move(g.stream);
    t.planted = g.hub;
  } else if (c.generator == "setdisj") {
    auto g = gen_set_disjointness(c.p, c.k, c.n, c.intersecting, seed);
    t.stream = std::move(g.stream);
    t.planted = g.common;
    if (t.d == 0) t.d = std::uint64_t{c.k} * c.p;
  } else if (c.generator == "bvl") {
    auto g = gen_bvl_graph(make_bvl_instance(c.p, c.n, c.k, seed));
    t.stream = std::move(g.stream);
    if (t.d == 0) t.d = std::uint64_t{c.k} * c.p;
  } else if (c.generator == "amri") {
    auto inst = make_amri_instance(c.n, static_cast<std::uint32_t>(c.d), c.alpha, seed);
    t.stream = gen_amri_stream(inst, c.alpha).stream;
    t.planted = inst.J;
  } else if (c.generator == "star") {
    auto g = gen_general_star(c.n, static_cast<std::uint32_t>(c.d), c.noise, c.noise_cap, seed);
    t.stream = std::move(g.stream);
    t.planted = g.hub;
  }
  if (t.d == 0) throw Error(Errc::InvalidParameter, "d must be >= 1");
  return t;
}

/// Closed-form space bound of one trial: the stored-edge cap α·s·⌈d/α⌉ for
/// insertion-only runs and the configured sketch words for
/// insertion-deletion runs (summed over all guesses for star detection).
inline std::uint64_t space_bound(const ExperimentConfig& c, std::uint32_t n, std::uint32_t m,
                                 std::uint64_t d) {
  switch (c.algorithm) {
    case Algorithm::InsertionOnly:
      return InsertionOnlyConfig{n, d, c.alpha, 0}.stored_edge_bound();
    case Algorithm::InsertionDeletion:
      return InsDelConfig{n, m, d, c.alpha, 0, c.delta}.sketch_cells();
    case Algorithm::Star: {
      std::uint64_t total = 0;
      for (auto g : guess_grid(n, c.epsilon))
        total += c.star_mode == StreamMode::InsertionOnly
                     ? InsertionOnlyConfig{n, g, c.alpha, 0}.stored_edge_bound()
                     : InsDelConfig{n, n, g, c.alpha, 0, c.delta}.sketch_cells();
      return total;
    }
  }
  return 0;
}

inline TrialRecord run_trial(const ExperimentConfig& c, std::uint64_t trial) {
  TrialRecord r;
  r.trial = trial;
  r.seed = derive_seed(c.seed, trial);
  const auto start = std::chrono::steady_clock::now();

  auto inst = generate_instance(c, derive_seed(r.seed, 0));
  const auto alg_seed = derive_seed(r.seed, 1);
  const auto& h = inst.stream.header;
  r.expected_center = inst.planted;

  std::optional<Neighbourhood> result;
  std::uint64_t d = inst.d;
  ExactGraph oracle;
  if (c.algorithm == Algorithm::Star) {
    Stream doubled;
    doubled.header = {h.n, h.n, StreamMode::InsertionDeletion};
    for (const auto& u : inst.stream.updates)
      for (const auto& e : double_edge(u.a, u.b, u.sign)) doubled.updates.push_back(e);
    oracle = replay(doubled);
    StarConfig sc{h.n, c.epsilon, c.alpha, c.star_mode, alg_seed, c.delta};
    auto out = run_star_detection(sc, inst.stream.updates);
    result = out.result;
    d = out.guess;
    r.stored_edges = out.stored_edges;
    r.sketch_cells = out.sketch_cells;
  } else {
    validate_stream(inst.stream);
    oracle = replay(inst.stream);
    if (c.algorithm == Algorithm::InsertionOnly) {
      auto out = run_insertion_only({h.n, d, c.alpha, alg_seed}, inst.stream.updates);
      result = out.result;
      r.stored_edges = out.space.stored_edges;
    } else {
      auto out = run_insertion_deletion({h.n, h.m, d, c.alpha, alg_seed, c.delta},
                                        inst.stream.updates);
      result = out.result;
      r.stored_edges = out.pooled_edges;
      r.sketch_cells = out.sketch_cells;
    }
  }

  r.threshold = (d + c.alpha - 1) / c.alpha;
  if (result) {
    r.succeeded = true;
    r.center = result->center;
    r.witness_count = result->size();
    r.sound = verify_witness(oracle, *result, r.threshold);
    if (!r.sound)
      throw Error(Errc::UnsoundWitness, "trial " + std::to_string(trial) + " center " +
                                            std::to_string(result->center) + " with " +
                                            std::to_string(result->size()) + " witnesses");
  }
  if (c.timing)
    r.wall_ms = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                               std::chrono::steady_clock::now() - start)
                                               .count());
  return r;
}

struct ExperimentSummary {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double success_rate = 0.0;
  double mean_stored_edges = 0.0;
  double mean_sketch_cells = 0.0;
  std::uint64_t space_bound = 0;  ///< closed form for the configured (n, m, d)
};

struct ExperimentReport {
  std::vector<TrialRecord> records;  ///< sorted by trial index
  ExperimentSummary summary;
};

inline ExperimentReport run_experiment(const ExperimentConfig& c) {
  c.validate();
  ExperimentReport report;
  report.records.resize(c.trials);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (auto t = next++; t < c.trials; t = next++) {
      try {
        report.records[t] = run_trial(c, t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = c.trials;
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(c.threads, c.trials));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  auto& s = report.summary;
  s.trials = c.trials;
  for (const auto& r : report.records) {
    s.successes += r.succeeded;
    s.mean_stored_edges += static_cast<double>(r.stored_edges);
    s.mean_sketch_cells += static_cast<double>(r.sketch_cells);
  }
  s.success_rate = static_cast<double>(s.successes) / static_cast<double>(c.trials);
  s.mean_stored_edges /= static_cast<double>(c.trials);
  s.mean_sketch_cells /= static_cast<double>(c.trials);
  const auto first = generate_instance(c, derive_seed(derive_seed(c.seed, 0), 0));
  s.space_bound = space_bound(c, first.stream.header.n, first.stream.header.m, first.d);
  return report;
}

inline constexpr const char* kCsvHeader =
    "trial,seed,succeeded,witness_count,sound,stored_edges,sketch_cells,wall_ms";

inline void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records)
    out << r.trial << ',' << r.seed << ',' << int{r.succeeded} << ',' << r.witness_count << ','
        << int{r.sound} << ',' << r.stored_edges << ',' << r.sketch_cells << ',' << r.wall_ms
        << '\n';
}

inline void write_summary(std::ostream& out, const ExperimentSummary& s) {
  out << std::fixed << std::setprecision(6) << "trials=" << s.trials
      << "\nsuccesses=" << s.successes << "\nsuccess_rate=" << s.success_rate
      << "\nmean_stored_edges=" << s.mean_stored_edges
      << "\nmean_sketch_cells=" << s.mean_sketch_cells << "\nspace_bound=" << s.space_bound
      << '\n';
  out.unsetf(std::ios::floatfield);
}

/// Throws SpaceBoundViolation unless every insertion-only trial stays within
/// the stored-edge cap and every sketch-based trial allocates exactly the
/// closed-form number of cells.
inline void space_audit(const ExperimentConfig& c, const std::vector<TrialRecord>& records) {
  for (const auto& r : records) {
    const auto inst = generate_instance(c, derive_seed(r.seed, 0));
    const auto& h = inst.stream.header;
    const auto bound = space_bound(c, h.n, h.m, inst.d);
    const bool sketch_based =
        c.algorithm == Algorithm::InsertionDeletion ||
        (c.algorithm == Algorithm::Star && c.star_mode == StreamMode::InsertionDeletion);
    const bool ok = sketch_based ? r.sketch_cells == bound : r.stored_edges <= bound;
    if (!ok)
      throw Error(Errc::SpaceBoundViolation,
                  "trial " + std::to_string(r.trial) + ": measured " +
                      std::to_string(sketch_based ? r.sketch_cells : r.stored_edges) +
                      " vs bound " + std::to_string(bound));
  }
}

}  // namespace feww
