// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "feww_cli.hpp"
#include "feww/feww.hpp"

using namespace feww;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. Degree reservoir success rate.
Verdict reservoir_success() {
  const auto t0 = Clock::now();
  Verdict v;
  // 100 vertices reach d1 = 3; 10 of them continue to d1 + d2 - 1 = 6.
  const DegResParams params{3, 4, 30};
  Stream s{{100, 6, StreamMode::InsertionOnly}, {}};
  for (Vertex b = 1; b <= 6; ++b)
    for (Vertex a = 1; a <= 100; ++a)
      if (b <= 3 || a <= 10) s.updates.push_back(insert_edge(a, b));
  Rng order(11);
  std::shuffle(s.updates.begin(), s.updates.end(), order);
  auto g = replay(s);
  v.require(g.count_at_least(3) == 100 && g.count_at_least(6) == 10, "instance shape");

  const int trials = 10000;
  int successes = 0;
  for (int t = 0; t < trials; ++t) {
    DegResSampling alg(100, params, derive_seed(1, t));
    for (const auto& u : s.updates) alg.process_update(u);
    if (auto nb = alg.finalize()) {
      ++successes;
      v.require(nb->size() == 4 && verify_witness(g, *nb, 4), "unsound neighbourhood");
    }
  }
  const double rate = successes / double(trials);
  const double bound = 1.0 - std::pow(0.7, 10);
  const double secs = seconds_since(t0);
  v.require(rate >= bound - 0.01, "success rate below bound");
  v.require(secs < 30, "slower than 30 s");
  v.note("rate=" + fmt(rate) + " bound-0.01=" + fmt(bound - 0.01) + " time=" + fmt(secs, 1) + "s");
  return v;
}

// 2. Insertion-only end to end on planted stars.
Verdict insertion_only_end_to_end() {
  const auto t0 = Clock::now();
  Verdict v;
  for (std::uint32_t alpha : {2u, 4u}) {
    ExperimentConfig c;
    c.generator = "planted";
    c.algorithm = Algorithm::InsertionOnly;
    c.n = 256;
    c.m = 1024;
    c.d = 64;
    c.alpha = alpha;
    c.background = 3;
    c.trials = 300;
    c.seed = 1000 + alpha;
    const auto report = run_experiment(c);
    const auto bound = InsertionOnlyConfig{256, 64, alpha, 0}.stored_edge_bound();
    std::uint64_t worst = 0;
    for (const auto& r : report.records) {
      worst = std::max(worst, r.stored_edges);
      if (r.succeeded) v.require(r.sound && r.witness_count >= (64 + alpha - 1) / alpha, "witnesses");
    }
    try {
      space_audit(c, report.records);
    } catch (const Error& e) {
      v.require(false, e.what());
    }
    const double target = 1.0 - 1.0 / 256 - 0.03;
    v.require(report.summary.success_rate >= target, "alpha=" + std::to_string(alpha) + " rate");
    v.note("alpha=" + std::to_string(alpha) + " rate=" + fmt(report.summary.success_rate) +
           " max_edges=" + std::to_string(worst) + "/" + std::to_string(bound));
  }
  const double secs = seconds_since(t0);
  v.require(secs < 60, "slower than 60 s");
  v.note("time=" + fmt(secs, 1) + "s");
  return v;
}

// 3. Reservoir inclusion is uniform over candidates.
Verdict reservoir_uniformity() {
  Verdict v;
  const int candidates = 40, seeds = 100000;
  std::vector<int> included(candidates + 1, 0);
  for (int seed = 0; seed < seeds; ++seed) {
    DegResSampler sampler({1, 1, 10}, derive_seed(3, seed));
    for (Vertex a = 1; a <= candidates; ++a) sampler.observe(a, 1, 1);
    for (Vertex a : sampler.reservoir()) ++included[a];
  }
  const double p = 0.25, sigma3 = 3 * std::sqrt(p * (1 - p) / seeds);
  double worst = 0;
  int outside = 0;
  for (Vertex a = 1; a <= candidates; ++a) {
    const double dev = std::abs(included[a] / double(seeds) - p);
    worst = std::max(worst, dev);
    outside += dev > sigma3;
  }
  v.require(outside == 0, std::to_string(outside) + " vertices outside 3 sigma");
  v.note("max_dev=" + fmt(worst, 5) + " 3sigma=" + fmt(sigma3, 5));
  return v;
}

// 4. l0-sampler uniformity, soundness and cancellation.
Verdict l0_sampler() {
  Verdict v;
  const std::uint64_t dim = 1024;
  const double delta = 0.01;
  Rng rng(4);
  std::vector<std::uint64_t> support;
  std::set<std::uint64_t> chosen;
  while (chosen.size() < 16) chosen.insert(uniform_index(dim, rng));
  support.assign(chosen.begin(), chosen.end());
  std::vector<std::uint64_t> churn;
  while (churn.size() < 48) {
    auto c = uniform_index(dim, rng);
    if (!chosen.count(c)) {
      chosen.insert(c);
      churn.push_back(c);
    }
  }

  std::map<std::uint64_t, int> freq;
  int sampled = 0, failed = 0, hallucinated = 0;
  const int draws = 10000;
  for (int t = 0; t < draws; ++t) {
    L0Sketch sk(dim, delta, derive_seed(40, t));
    for (auto c : churn) sk.update(c, 1);
    for (auto c : support) sk.update(c, 1);
    for (auto c : churn) sk.update(c, -1);
    auto s = sk.sample();
    if (s.status == L0Status::Sampled) {
      ++sampled;
      if (!std::binary_search(support.begin(), support.end(), s.coordinate)) ++hallucinated;
      ++freq[s.coordinate];
    } else {
      ++failed;
    }
  }
  double tv = 0;
  for (auto c : support) tv += std::abs(freq[c] / double(sampled) - 1.0 / 16);
  tv /= 2;

  // Bank draws with deletions, checked against the exact support.
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    L0SketchBank bank(dim, 8, delta, derive_seed(41, seed));
    std::set<std::uint64_t> live;
    for (int i = 0; i < 100; ++i) {
      auto c = uniform_index(dim, rng);
      if (live.insert(c).second) bank.update(c, 1);
    }
    for (auto it = live.begin(); it != live.end();) {
      if (coin(0.7, rng)) {
        bank.update(*it, -1);
        it = live.erase(it);
      } else {
        ++it;
      }
    }
    for (std::size_t i = 0; i < bank.sketches(); ++i) {
      auto s = bank.sample(i);
      if (s.status == L0Status::Sampled && !live.count(s.coordinate)) ++hallucinated;
      if (s.status == L0Status::Empty && !live.empty()) ++hallucinated;
    }
  }

  bool cancels = true;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const L0Sketch fresh(dim, delta, seed);
    L0Sketch sk = fresh;
    for (auto c : support) sk.update(c, 1);
    for (auto c : support) sk.update(c, -1);
    cancels = cancels && sk == fresh && sk.all_zero() && l0_sample(sk).status == L0Status::Empty;
  }
  v.require(tv <= 0.05, "TV too large");
  v.require(hallucinated == 0, std::to_string(hallucinated) + " hallucinated samples");
  v.require(cancels, "insert-then-delete left residue");
  v.note("TV=" + fmt(tv) + " fail_rate=" + fmt(failed / double(draws)) +
         " hallucinated=" + std::to_string(hallucinated));
  return v;
}

// 5. Insertion-deletion regimes.
Verdict insertion_deletion_regimes() {
  const auto t0 = Clock::now();
  Verdict v;
  struct Regime {
    const char* name;
    std::uint32_t heavy;
    std::uint32_t churn;
  };
  // dense: 30 further vertices of degree d/α = 8 (more than n/x = 4);
  // sparse: the hub is the only non-isolated vertex of the final graph.
  for (const Regime& regime : {Regime{"dense", 30, 200}, Regime{"sparse", 0, 200}}) {
    ExperimentConfig c;
    c.generator = "dynamic";
    c.algorithm = Algorithm::InsertionDeletion;
    c.n = 100;
    c.m = 64;
    c.d = 32;
    c.alpha = 4;
    c.delta = 1e-6;
    c.heavy = regime.heavy;
    c.heavy_degree = 8;
    c.churn = regime.churn;
    c.trials = 200;
    c.seed = 500 + regime.heavy;
    const auto report = run_experiment(c);
    // independent closed form
    const double ln_n = std::log(100.0);
    const auto sV = std::min<std::uint64_t>(100, std::ceil(10 * 25 * ln_n));
    const auto kA = static_cast<std::uint64_t>(std::ceil(10 * 8 * ln_n));
    const auto kE = static_cast<std::uint64_t>(std::ceil(10 * 100 * 8 * (1.0 / 25 + 1.0 / 4) *
                                                         std::log(6400.0)));
    const std::uint64_t reps = std::ceil(std::log(1e6));
    const std::uint64_t cells = sV * kA * reps * 7 * 3 + kE * reps * 14 * 3;
    bool exact = true;
    for (const auto& r : report.records) exact = exact && r.sketch_cells == cells;
    try {
      space_audit(c, report.records);
    } catch (const Error& e) {
      v.require(false, e.what());
    }
    const double failure = 1.0 - report.summary.success_rate;
    v.require(failure <= 0.05, std::string(regime.name) + " failure rate");
    v.require(exact, std::string(regime.name) + " cell count");
    v.note(std::string(regime.name) + " failure=" + fmt(failure) + " cells=" +
           std::to_string(cells) + " (sV,kA,kE)=(" + std::to_string(sV) + "," +
           std::to_string(kA) + "," + std::to_string(kE) + ")");
  }
  const double secs = seconds_since(t0);
  v.require(secs < 300, "slower than 5 min");
  v.note("time=" + fmt(secs, 1) + "s");
  return v;
}

// 6. Sampling lemma.
Verdict sampling_lemma() {
  Verdict v;
  const double rate = validate_sampling_lemma(1000, 100, 50, 4, 10000, 6);
  v.require(rate >= 0.989, "rate below 0.989");
  v.note("rate=" + fmt(rate));
  return v;
}

// 7. Reduction structure.
Verdict reductions() {
  Verdict v;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (bool meet : {false, true}) {
      auto inst = gen_set_disjointness(4, 5, 60, meet, seed);
      const auto delta = replay(inst.stream).max_degree();
      v.require(delta == (meet ? 20u : 5u), "set disjointness degree, seed " + std::to_string(seed));
    }
  }

  BVLInstance bvl;
  bvl.p = 3;
  bvl.n = 4;
  bvl.k = 5;
  bvl.X = {{1, 2, 3, 4}, {1, 4}, {4}};
  bvl.Y.assign(3, std::vector<std::string>(5));
  bvl.Y[0][1] = "10010";
  bvl.Y[0][2] = "01000";
  bvl.Y[0][3] = "01011";
  bvl.Y[0][4] = "01111";
  bvl.Y[1][1] = "11011";
  bvl.Y[1][4] = "01010";
  bvl.Y[2][4] = "00011";
  auto g = replay(gen_bvl_graph(bvl).stream);
  auto decode = [&](Vertex j) {
    const auto& nb = g.neighbours(j);
    std::string bits;
    for (const auto& b : decode_bvl_witnesses({j, {nb.begin(), nb.end()}}, 5, 3).bits)
      bits += static_cast<char>('0' + b.bit);
    return bits;
  };
  v.require(decode(2) == "01000", "Z^2 decode");
  v.require(decode(4) == "011110101000011", "Z^4 decode");

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::uint32_t d = 16, alpha = 4;
    auto inst = make_amri_instance(40, d, alpha, seed);
    auto s = gen_amri_stream(inst, alpha);
    auto ag = replay(s.stream);
    bool ok = ag.degree(inst.J) >= d;
    for (Vertex i = 1; i <= inst.n; ++i)
      if (i != inst.J) ok = ok && ag.degree(i) <= d / alpha - 1;
    v.require(ok, "AMRI rows, seed " + std::to_string(seed));
  }
  v.note("setdisj/bvl/amri checked on 50 seeds");
  return v;
}

// 8. Star detection.
Verdict star_detection() {
  Verdict v;
  const int trials = 200;
  int good = 0;
  for (int t = 0; t < trials; ++t) {
    auto inst = gen_general_star(16, 8, 4, 2, derive_seed(8, t));
    auto out = run_star_detection({16, 1.0, 2, StreamMode::InsertionOnly, derive_seed(9, t)},
                                  inst.stream.updates);
    if (!out.result) continue;
    Stream h{{16, 16, StreamMode::InsertionOnly}, {}};
    for (const auto& u : inst.stream.updates)
      for (const auto& e : double_edge(u.a, u.b)) h.updates.push_back(e);
    if (verify_witness(replay(h), *out.result, 2)) ++good;
  }
  const double rate = good / double(trials);
  v.require(rate >= 0.95, "rate below 0.95");

  bool presets = true;
  for (std::uint32_t n = 2; n <= 5000; ++n) {
    std::uint32_t lg = 0;
    while ((std::uint64_t{1} << lg) < n) ++lg;
    std::uint32_t rt = 0;
    while (std::uint64_t{rt} * rt < n) ++rt;
    presets = presets && semi_streaming_preset(n, StreamMode::InsertionOnly).alpha == lg &&
              semi_streaming_preset(n, StreamMode::InsertionDeletion).alpha == rt;
  }
  v.require(presets, "preset arithmetic");
  v.note("rate=" + fmt(rate) + " presets n=2..5000");
  return v;
}

// 9. CLI determinism.
Verdict cli_determinism() {
  Verdict v;
  const fs::path dir = fs::temp_directory_path() / "feww_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto p = [&](const std::string& name) { return (dir / name).string(); };
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  auto run = [&](const std::vector<std::string>& args, const std::vector<std::string>& files) {
    std::string first;
    for (int pass = 0; pass < 2; ++pass) {
      std::ostringstream out, err;
      const int code = cli::run_cli(args, out, err);
      std::string all = std::to_string(code) + "\n" + out.str() + err.str();
      for (const auto& f : files) all += slurp(f);
      if (pass == 0) first = all;
      else v.require(all == first, args[0] + (args.size() > 1 ? " " + args[1] : "") + " differs");
    }
  };
  run({"gen", "planted", "--n", "64", "--m", "128", "--d", "16", "--background", "3", "--seed",
       "1", "-o", p("planted.txt")},
      {p("planted.txt")});
  run({"gen", "dynamic", "--n", "30", "--m", "32", "--d", "16", "--heavy", "3", "--heavy-degree",
       "4", "--churn", "100", "--seed", "1", "-o", p("dynamic.txt")},
      {p("dynamic.txt")});
  run({"gen", "setdisj", "--p", "3", "--k", "2", "--n", "30", "--seed", "1", "-o", p("sd.txt")},
      {p("sd.txt")});
  run({"gen", "bvl", "--p", "3", "--n", "4", "--k", "5", "--seed", "1", "-o", p("bvl.txt")},
      {p("bvl.txt"), p("bvl.txt.truth")});
  run({"gen", "amri", "--n", "16", "--d", "8", "--alpha", "2", "--seed", "1", "-o", p("amri.txt")},
      {p("amri.txt")});
  run({"gen", "star", "--n", "16", "--d", "8", "--noise", "4", "--seed", "1", "-o", p("star.txt")},
      {p("star.txt")});
  run({"feww-ins", "--n", "64", "--m", "128", "--d", "16", "--alpha", "2", "--seed", "2",
       "--stream", p("planted.txt")},
      {});
  run({"feww-del", "--n", "30", "--m", "32", "--d", "16", "--alpha", "4", "--delta", "0.001",
       "--seed", "2", "--stream", p("dynamic.txt")},
      {});
  run({"feww-del", "--n", "16", "--m", "16", "--d", "8", "--alpha", "2", "--delta", "0.001",
       "--seed", "2", "--stream", p("amri.txt")},
      {});
  run({"star", "--n", "16", "--alpha", "2", "--epsilon", "1", "--mode", "ins", "--seed", "2",
       "--stream", p("star.txt")},
      {});
  run({"star", "--n", "16", "--alpha", "2", "--epsilon", "1", "--mode", "insdel", "--delta",
       "0.01", "--seed", "2", "--stream", p("star.txt")},
      {});
  {
    std::ostringstream out, err;
    cli::run_cli({"feww-ins", "--n", "64", "--m", "128", "--d", "16", "--alpha", "2", "--seed",
                  "2", "--stream", p("planted.txt")},
                 out, err);
    std::ofstream(p("result.txt")) << out.str();
  }
  run({"verify", "--stream", p("planted.txt"), "--result", p("result.txt")}, {});
  std::ofstream(p("exp.cfg")) << "generator=planted\nalgorithm=ins\nn=64\nm=128\nd=16\nalpha=2\n"
                              << "background=3\ntrials=4\nseed=3\nthreads=2\noutput="
                              << p("exp.csv") << "\n";
  run({"experiment", "--config", p("exp.cfg")}, {p("exp.csv")});
  fs::remove_all(dir);
  v.note("13 invocations compared byte for byte");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"degree reservoir success rate", reservoir_success},
      {"insertion-only planted stars", insertion_only_end_to_end},
      {"reservoir inclusion uniformity", reservoir_uniformity},
      {"l0-sampler uniformity, soundness, cancellation", l0_sampler},
      {"insertion-deletion dense and sparse regimes", insertion_deletion_regimes},
      {"sampling lemma", sampling_lemma},
      {"reduction instance structure", reductions},
      {"star detection", star_detection},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += !v.pass;
    std::printf("%s %zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
