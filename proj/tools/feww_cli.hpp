#pragma once

// Command dispatch for the `feww` executable. Kept in a header so the test
// suite can drive it with in-memory streams.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "feww/feww.hpp"

namespace feww::cli {

inline Stream load_stream(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MalformedStream, "cannot open " + path);
  return parse_stream(in);
}

inline void save_stream(const std::string& path, const Stream& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidParameter, "cannot write " + path);
  write_stream(out, s);
}

inline void print_result(std::ostream& out, const std::optional<Neighbourhood>& nb) {
  if (!nb) {
    out << "fail\n";
    return;
  }
  out << "result " << nb->center << ' ' << nb->size() << '\n' << "witnesses";
  for (Vertex b : nb->witnesses) out << ' ' << b;
  out << '\n';
}

/// Reads the `result` / `witnesses` lines printed by the algorithm commands.
inline std::optional<Neighbourhood> read_result(std::istream& in) {
  std::string line;
  std::optional<Neighbourhood> nb;
  std::size_t claimed = 0;
  while (std::getline(in, line)) {
    std::istringstream is(line);
    std::string tag;
    is >> tag;
    if (tag == "fail") return std::nullopt;
    if (tag == "result") {
      nb.emplace();
      if (!(is >> nb->center >> claimed)) throw Error(Errc::MalformedStream, "bad result line");
    } else if (tag == "witnesses" && nb) {
      std::vector<Vertex> w;
      for (Vertex b; is >> b;) w.push_back(b);
      *nb = make_neighbourhood(nb->center, std::move(w));
    }
  }
  if (!nb) throw Error(Errc::MalformedStream, "no result line");
  if (nb->size() != claimed) throw Error(Errc::MalformedStream, "witness count mismatch");
  return nb;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequent elements with witnesses"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "write a generated stream");
  std::string gen_kind, gen_out;
  std::uint32_t g_n = 0, g_m = 0, g_d = 0, g_alpha = 1, g_background = 0, g_p = 2, g_k = 1;
  std::uint32_t g_heavy = 0, g_heavy_degree = 0, g_churn = 0, g_noise = 0, g_noise_cap = 2;
  bool g_disjoint = false;
  std::uint64_t g_seed = 0;
  gen->add_option("kind", gen_kind, "planted | dynamic | setdisj | bvl | amri | star")
      ->required()
      ->check(CLI::IsMember({"planted", "dynamic", "setdisj", "bvl", "amri", "star"}));
  gen->add_option("--n", g_n, "A-side size (universe for setdisj/bvl)")->required();
  gen->add_option("--m", g_m, "B-side size");
  gen->add_option("--d", g_d, "planted degree");
  gen->add_option("--alpha", g_alpha);
  gen->add_option("--background", g_background, "planted: degree of other vertices");
  gen->add_option("--heavy", g_heavy, "dynamic: extra heavy vertices");
  gen->add_option("--heavy-degree", g_heavy_degree);
  gen->add_option("--churn", g_churn, "dynamic: transient edges");
  gen->add_option("--p", g_p, "parties");
  gen->add_option("--k", g_k);
  gen->add_flag("--disjoint", g_disjoint, "setdisj: pairwise disjoint branch");
  gen->add_option("--noise", g_noise, "star: noise edges");
  gen->add_option("--noise-cap", g_noise_cap);
  gen->add_option("--seed", g_seed)->required();
  gen->add_option("-o,--output", gen_out)->required();

  // feww-ins / feww-del share most options
  std::uint32_t a_n = 0, a_m = 0, a_alpha = 1;
  std::uint64_t a_d = 0, a_seed = 0;
  double a_delta = 0.0;
  std::string a_stream;
  auto* ins = app.add_subcommand("feww-ins", "insertion-only FEwW");
  auto* del = app.add_subcommand("feww-del", "insertion-deletion FEwW");
  for (auto* sc : {ins, del}) {
    sc->add_option("--n", a_n)->required();
    sc->add_option("--m", a_m)->required();
    sc->add_option("--d", a_d)->required();
    sc->add_option("--alpha", a_alpha)->required();
    sc->add_option("--seed", a_seed)->required();
    sc->add_option("--stream", a_stream)->required();
  }
  del->add_option("--delta", a_delta, "sampler failure probability (default 1/(n^10 d))");

  // star
  auto* star = app.add_subcommand("star", "star detection on a general graph");
  double s_epsilon = 1.0;
  std::string s_mode = "ins";
  star->add_option("--n", a_n)->required();
  star->add_option("--alpha", a_alpha)->required();
  star->add_option("--epsilon", s_epsilon);
  star->add_option("--mode", s_mode)->check(CLI::IsMember({"ins", "insdel"}));
  star->add_option("--seed", a_seed)->required();
  star->add_option("--delta", a_delta);
  star->add_option("--stream", a_stream)->required();

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a seeded experiment");
  std::string e_config;
  exp->add_option("--config", e_config)->required();

  // verify
  auto* ver = app.add_subcommand("verify", "check a reported neighbourhood");
  std::string v_result;
  std::size_t v_threshold = 0;
  bool v_general = false;
  ver->add_option("--stream", a_stream)->required();
  ver->add_option("--result", v_result)->required();
  ver->add_option("--threshold", v_threshold, "minimum witness count (default: as claimed)");
  ver->add_flag("--general", v_general, "stream is a general graph");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (gen->parsed()) {
      Stream s;
      if (gen_kind == "planted") {
        auto g = gen_planted_star(g_n, g_m, g_d, g_background, g_seed);
        s = std::move(g.stream);
        out << "hub " << g.hub << '\n';
      } else if (gen_kind == "dynamic") {
        auto g = gen_planted_dynamic(g_n, g_m, g_d, g_heavy, g_heavy_degree, g_churn, g_seed);
        s = std::move(g.stream);
        out << "hub " << g.hub << '\n';
      } else if (gen_kind == "setdisj") {
        auto g = gen_set_disjointness(g_p, g_k, g_n, !g_disjoint, g_seed);
        s = std::move(g.stream);
        if (g.common) out << "common " << *g.common << '\n';
        else out << "disjoint\n";
      } else if (gen_kind == "bvl") {
        auto inst = make_bvl_instance(g_p, g_n, g_k, g_seed);
        s = gen_bvl_graph(inst).stream;
        std::ofstream truth(gen_out + ".truth", std::ios::binary);
        if (!truth) throw Error(Errc::InvalidParameter, "cannot write " + gen_out + ".truth");
        write_bvl_sidecar(truth, inst);
        out << "truth " << gen_out << ".truth\n";
      } else if (gen_kind == "amri") {
        auto inst = make_amri_instance(g_n, g_d, g_alpha, g_seed);
        s = gen_amri_stream(inst, g_alpha).stream;
        out << "J " << inst.J << " invert " << int{inst.invert} << '\n';
      } else {
        auto g = gen_general_star(g_n, g_d, g_noise, g_noise_cap, g_seed);
        s = std::move(g.stream);
        out << "hub " << g.hub << '\n';
      }
      save_stream(gen_out, s);
      out << "updates " << s.updates.size() << '\n';
    } else if (ins->parsed()) {
      const auto s = load_stream(a_stream);
      if (s.header.n != a_n || s.header.m != a_m)
        throw Error(Errc::InvalidParameter, "stream header disagrees with --n/--m");
      const auto o = run_insertion_only({a_n, a_d, a_alpha, a_seed}, s.updates);
      print_result(out, o.result);
      out << "space=" << o.space.stored_edges << ',' << o.space.words() << '\n';
    } else if (del->parsed()) {
      const auto s = load_stream(a_stream);
      if (s.header.n != a_n || s.header.m != a_m)
        throw Error(Errc::InvalidParameter, "stream header disagrees with --n/--m");
      const auto o = run_insertion_deletion({a_n, a_m, a_d, a_alpha, a_seed, a_delta}, s.updates);
      print_result(out, o.result);
      out << "space=" << o.pooled_edges << ',' << o.sketch_cells << '\n'
          << "samplers=" << o.samplers.vertex_samples << ',' << o.samplers.per_vertex_samplers
          << ',' << o.samplers.edge_samplers << '\n';
    } else if (star->parsed()) {
      const auto s = load_stream(a_stream);
      if (s.header.n != a_n) throw Error(Errc::InvalidParameter, "stream header disagrees with --n");
      StarConfig c{a_n, s_epsilon, a_alpha, parse_mode(s_mode), a_seed, a_delta};
      const auto o = run_star_detection(c, s.updates);
      print_result(out, o.result);
      if (o.result) out << "guess=" << o.guess << '\n';
      out << "space=" << o.stored_edges << ',' << o.sketch_cells << '\n';
    } else if (exp->parsed()) {
      std::ifstream in(e_config);
      if (!in) throw Error(Errc::InvalidParameter, "cannot open " + e_config);
      const auto cfg = parse_experiment_config(in);
      const auto report = run_experiment(cfg);
      space_audit(cfg, report.records);
      if (cfg.output.empty()) {
        write_csv(out, report.records);
      } else {
        std::ofstream csv(cfg.output, std::ios::binary);
        if (!csv) throw Error(Errc::InvalidParameter, "cannot write " + cfg.output);
        write_csv(csv, report.records);
      }
      write_summary(out, report.summary);
      out << "space_audit=pass\n";
    } else if (ver->parsed()) {
      const auto s = load_stream(a_stream);
      std::ifstream in(v_result);
      if (!in) throw Error(Errc::InvalidParameter, "cannot open " + v_result);
      const auto nb = read_result(in);
      if (!nb) {
        out << "nothing to verify\n";
        return 0;
      }
      ExactGraph g;
      if (v_general) {
        Stream doubled{{s.header.n, s.header.n, StreamMode::InsertionDeletion}, {}};
        for (const auto& u : s.updates)
          for (const auto& e : double_edge(u.a, u.b, u.sign)) doubled.updates.push_back(e);
        g = replay(doubled);
      } else {
        g = replay(s);
      }
      const auto threshold = v_threshold ? v_threshold : nb->size();
      const bool ok = verify_witness(g, *nb, threshold);
      out << (ok ? "sound" : "unsound") << " center " << nb->center << " witnesses " << nb->size()
          << " degree " << g.degree(nb->center) << '\n';
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace feww::cli
