#pragma once

// Stream generators: planted positive instances for the algorithms, and the
// graphs built by the lower-bound reductions (multi-party Set-Disjointness,
// Bit-Vector-Learning, Augmented-Matrix-Row-Index). Every generator is a pure
// function of its parameters and seed.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core_model.hpp"
#include "random.hpp"

namespace feww {

namespace detail {

/// `count` distinct values from [1, universe], in random order.
inline std::vector<Vertex> distinct_sample(std::uint32_t universe, std::uint32_t count, Rng& rng) {
  std::vector<Vertex> all(universe);
  std::iota(all.begin(), all.end(), Vertex{1});
  std::vector<Vertex> out;
  std::sample(all.begin(), all.end(), std::back_inserter(out), count, rng);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

inline std::vector<StreamUpdate> concat(const std::vector<std::vector<StreamUpdate>>& parts) {
  std::vector<StreamUpdate> all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Planted instances

struct PlantedStar {
  Stream stream;
  Vertex hub = 0;
};

/// One uniformly chosen A-vertex gets d distinct random neighbours, every
/// other A-vertex gets `background_degree`; updates are shuffled.
inline PlantedStar gen_planted_star(std::uint32_t n, std::uint32_t m, std::uint32_t d,
                                    std::uint32_t background_degree, std::uint64_t seed) {
  if (n < 1 || d < 1 || d > m)
    throw Error(Errc::InvalidParameter, "planted star needs 1 <= d <= m");
  if (background_degree >= d)
    throw Error(Errc::InvalidParameter, "background degree must be below d");
  Rng rng(seed);
  PlantedStar out;
  out.stream.header = {n, m, StreamMode::InsertionOnly};
  check_header(out.stream.header);
  out.hub = static_cast<Vertex>(uniform_index(n, rng) + 1);
  for (Vertex a = 1; a <= n; ++a) {
    const auto degree = a == out.hub ? d : background_degree;
    for (Vertex b : detail::distinct_sample(m, degree, rng))
      out.stream.updates.push_back(insert_edge(a, b));
  }
  std::shuffle(out.stream.updates.begin(), out.stream.updates.end(), rng);
  return out;
}

struct PlantedDynamic {
  Stream stream;
  Vertex hub = 0;
  std::vector<Vertex> heavy;  ///< vertices of degree heavy_degree besides the hub
};

/// Insertion-deletion instance: a hub of degree d, `heavy_count` further
/// vertices of degree `heavy_degree`, and `churn` transient edges that are
/// inserted and later deleted. Events are interleaved at random; every
/// transient edge is deleted after its insertion and is absent from the
/// final graph.
inline PlantedDynamic gen_planted_dynamic(std::uint32_t n, std::uint32_t m, std::uint32_t d,
                                          std::uint32_t heavy_count, std::uint32_t heavy_degree,
                                          std::uint32_t churn, std::uint64_t seed) {
  if (d < 1 || d > m || heavy_degree > m)
    throw Error(Errc::InvalidParameter, "degrees must not exceed m");
  if (heavy_count + 1 > n) throw Error(Errc::InvalidParameter, "too many heavy vertices");
  Rng rng(seed);
  PlantedDynamic out;
  out.stream.header = {n, m, StreamMode::InsertionDeletion};
  check_header(out.stream.header);

  auto chosen = detail::distinct_sample(n, heavy_count + 1, rng);
  out.hub = chosen[0];
  out.heavy.assign(chosen.begin() + 1, chosen.end());
  std::sort(out.heavy.begin(), out.heavy.end());

  std::set<std::pair<Vertex, Vertex>> final_edges;
  for (Vertex b : detail::distinct_sample(m, d, rng)) final_edges.emplace(out.hub, b);
  for (Vertex a : out.heavy)
    for (Vertex b : detail::distinct_sample(m, heavy_degree, rng)) final_edges.emplace(a, b);

  if (churn > std::uint64_t{n} * m - final_edges.size())
    throw Error(Errc::InvalidParameter, "churn exceeds the free edge slots");
  std::set<std::pair<Vertex, Vertex>> transient;
  std::uniform_int_distribution<Vertex> pick_a(1, n), pick_b(1, m);
  while (transient.size() < churn) {
    std::pair<Vertex, Vertex> e{pick_a(rng), pick_b(rng)};
    if (!final_edges.count(e)) transient.insert(e);
  }

  struct Event {
    double time;
    StreamUpdate update;
  };
  std::vector<Event> events;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const auto& [a, b] : final_edges) events.push_back({unit(rng), insert_edge(a, b)});
  for (const auto& [a, b] : transient) {
    const double t = unit(rng);
    events.push_back({t, insert_edge(a, b)});
    events.push_back({std::uniform_real_distribution<double>(t, 1.0)(rng), delete_edge(a, b)});
  }
  // Ties cannot reorder an insert after its delete: stable sort keeps the
  // insert first.
  std::stable_sort(events.begin(), events.end(),
                   [](const Event& x, const Event& y) { return x.time < y.time; });
  for (const auto& e : events) out.stream.updates.push_back(e.update);
  return out;
}

struct GeneralStar {
  Stream stream;  ///< general-graph stream, header m == n
  Vertex hub = 0;
};

/// General graph on n vertices with a star K_{1,d} around a random hub and
/// `noise_edges` random edges among the other vertices, none of which pushes
/// a vertex above `noise_cap` total degree.
inline GeneralStar gen_general_star(std::uint32_t n, std::uint32_t d, std::uint32_t noise_edges,
                                    std::uint32_t noise_cap, std::uint64_t seed) {
  if (d < 1 || d + 1 > n) throw Error(Errc::InvalidParameter, "star K_{1,d} needs d + 1 <= n");
  Rng rng(seed);
  GeneralStar out;
  out.stream.header = {n, n, StreamMode::InsertionOnly};
  check_header(out.stream.header);
  out.hub = static_cast<Vertex>(uniform_index(n, rng) + 1);
  std::vector<std::uint32_t> degree(std::size_t{n} + 1, 0);
  std::set<std::pair<Vertex, Vertex>> edges;
  for (Vertex v : detail::distinct_sample(n, n, rng)) {
    if (edges.size() == d) break;
    if (v == out.hub) continue;
    edges.emplace(std::min(out.hub, v), std::max(out.hub, v));
    ++degree[v];
  }
  std::uniform_int_distribution<Vertex> pick(1, n);
  std::uint64_t attempts = 0;
  std::size_t noise = 0;
  while (noise < noise_edges && attempts++ < 100000) {
    Vertex u = pick(rng), v = pick(rng);
    if (u == v || u == out.hub || v == out.hub) continue;
    if (degree[u] >= noise_cap || degree[v] >= noise_cap) continue;
    if (!edges.emplace(std::min(u, v), std::max(u, v)).second) continue;
    ++degree[u];
    ++degree[v];
    ++noise;
  }
  for (const auto& [u, v] : edges) out.stream.updates.push_back(insert_edge(u, v));
  std::shuffle(out.stream.updates.begin(), out.stream.updates.end(), rng);
  return out;
}

// ---------------------------------------------------------------------------
// Multi-party Set-Disjointness

struct SetDisjointnessInstance {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::vector<std::vector<Vertex>> sets;                 ///< S_1..S_p, sorted
  std::vector<std::vector<StreamUpdate>> party_streams;  ///< E_1..E_p
  Stream stream;                                         ///< E_1 ∘ … ∘ E_p
  std::optional<Vertex> common;                          ///< the unique intersection
};

/// Party i connects every u ∈ S_i to B-columns (i-1)k+1 .. ik, so d = k·p
/// and Δ is k for pairwise disjoint sets and k·p for uniquely intersecting
/// ones. Sets take ⌊n/p⌋ elements each (⌊(n-1)/p⌋ + 1 when intersecting).
inline SetDisjointnessInstance gen_set_disjointness(std::uint32_t p, std::uint32_t k,
                                                    std::uint32_t universe_n, bool intersecting,
                                                    std::uint64_t seed) {
  if (p < 2 || k < 1) throw Error(Errc::InvalidParameter, "need p >= 2 and k >= 1");
  if (universe_n < p)
    throw Error(Errc::UniverseTooSmall, "universe of " + std::to_string(universe_n) +
                                            " cannot hold " + std::to_string(p) + " sets");
  Rng rng(seed);
  SetDisjointnessInstance inst;
  inst.p = p;
  inst.k = k;
  const std::uint32_t d = k * p;
  inst.stream.header = {universe_n, d, StreamMode::InsertionOnly};
  check_header(inst.stream.header);

  auto order = detail::distinct_sample(universe_n, universe_n, rng);
  std::size_t next = 0;
  std::uint32_t own = universe_n / p;
  if (intersecting) {
    inst.common = order[next++];
    own = (universe_n - 1) / p;
  }
  inst.sets.resize(p);
  for (auto& set : inst.sets) {
    if (inst.common) set.push_back(*inst.common);
    for (std::uint32_t i = 0; i < own; ++i) set.push_back(order[next++]);
    std::sort(set.begin(), set.end());
  }

  inst.party_streams.resize(p);
  for (std::uint32_t i = 0; i < p; ++i)
    for (Vertex u : inst.sets[i])
      for (std::uint32_t c = i * k + 1; c <= (i + 1) * k; ++c)
        inst.party_streams[i].push_back(insert_edge(u, c));
  inst.stream.updates = detail::concat(inst.party_streams);
  return inst;
}

// ---------------------------------------------------------------------------
// Bit-Vector-Learning

/// Party i (1-based) holds X_i and the k-bit strings Y_i^j for j ∈ X_i.
/// Strings are '0'/'1' text; Y_i^j is empty for j ∉ X_i.
struct BVLInstance {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::vector<std::vector<Vertex>> X;       ///< X[i-1] = X_i, sorted
  std::vector<std::vector<std::string>> Y;  ///< Y[i-1][j] = Y_i^j, j in 1..n

  /// Z^j = Y_1^j ∘ … ∘ Y_p^j.
  std::string Z(Vertex j) const {
    std::string z;
    for (const auto& row : Y) z += row.at(j);
    return z;
  }

  const std::string& string_of(std::uint32_t party, Vertex j) const { return Y.at(party - 1).at(j); }
};

/// n_i = n^{1-(i-1)/(p-1)} for i = 1..p; requires n^{1/(p-1)} integral.
inline std::vector<std::uint32_t> bvl_partition_sizes(std::uint32_t p, std::uint32_t n) {
  if (p < 2 || n < 1) throw Error(Errc::InvalidParameter, "need p >= 2 and n >= 1");
  std::uint64_t root = 1;
  auto power = [&](std::uint64_t base, std::uint32_t e) {
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
      r *= base;
      if (r > n) return std::uint64_t{n} + 1;
    }
    return r;
  };
  while (power(root, p - 1) < n) ++root;
  if (power(root, p - 1) != n)
    throw Error(Errc::NonIntegralPartition,
                "n^(1/(p-1)) is not integral for n=" + std::to_string(n));
  std::vector<std::uint32_t> sizes(p);
  for (std::uint32_t i = 1; i <= p; ++i)
    sizes[i - 1] = static_cast<std::uint32_t>(power(root, p - i));
  return sizes;
}

inline void validate_bvl(const BVLInstance& inst) {
  const auto sizes = bvl_partition_sizes(inst.p, inst.n);
  if (inst.k < 1) throw Error(Errc::InvalidParameter, "k must be >= 1");
  if (inst.X.size() != inst.p || inst.Y.size() != inst.p)
    throw Error(Errc::InvalidParameter, "instance must hold p parties");
  std::set<Vertex> previous;
  for (Vertex j = 1; j <= inst.n; ++j) previous.insert(j);
  for (std::uint32_t i = 0; i < inst.p; ++i) {
    const auto& xi = inst.X[i];
    if (xi.size() != sizes[i])
      throw Error(Errc::NonIntegralPartition, "|X_" + std::to_string(i + 1) + "| mismatch");
    std::set<Vertex> current(xi.begin(), xi.end());
    if (current.size() != xi.size() ||
        !std::includes(previous.begin(), previous.end(), current.begin(), current.end()))
      throw Error(Errc::InvalidParameter, "X_" + std::to_string(i + 1) + " is not nested");
    if (inst.Y[i].size() != std::size_t{inst.n} + 1)
      throw Error(Errc::InvalidParameter, "Y row size mismatch");
    for (Vertex j = 1; j <= inst.n; ++j) {
      const auto& y = inst.Y[i][j];
      const bool held = current.count(j) != 0;
      if (held != (y.size() == inst.k) || (!held && !y.empty()) ||
          y.find_first_not_of("01") != std::string::npos)
        throw Error(Errc::InvalidParameter, "bad string Y_" + std::to_string(i + 1) + "^" +
                                                std::to_string(j));
    }
    previous = std::move(current);
  }
}

inline BVLInstance make_bvl_instance(std::uint32_t p, std::uint32_t n, std::uint32_t k,
                                     std::uint64_t seed) {
  const auto sizes = bvl_partition_sizes(p, n);
  if (k < 1) throw Error(Errc::InvalidParameter, "k must be >= 1");
  Rng rng(seed);
  BVLInstance inst;
  inst.p = p;
  inst.n = n;
  inst.k = k;
  std::vector<Vertex> current(n);
  std::iota(current.begin(), current.end(), Vertex{1});
  for (std::uint32_t i = 0; i < p; ++i) {
    if (i > 0) {
      std::vector<Vertex> next;
      std::sample(current.begin(), current.end(), std::back_inserter(next), sizes[i], rng);
      current = std::move(next);
    }
    inst.X.push_back(current);
    std::vector<std::string> row(std::size_t{n} + 1);
    for (Vertex j : current) {
      std::string bits(k, '0');
      for (auto& c : bits) c = coin(0.5, rng) ? '1' : '0';
      row[j] = std::move(bits);
    }
    inst.Y.push_back(std::move(row));
  }
  return inst;
}

/// B-column holding bit value `bit` of position j (1-based) of party i.
inline std::uint32_t bvl_column(std::uint32_t k, std::uint32_t party, std::uint32_t j,
                                std::uint32_t bit) {
  return 2 * k * (party - 1) + 2 * (j - 1) + bit + 1;
}

struct BVLGraph {
  std::vector<std::vector<StreamUpdate>> party_streams;
  Stream stream;  ///< concatenation in party order over [n] × [2kp]
};

/// E_i = {(ℓ, 2k(i-1) + 2(j-1) + Y_i^ℓ[j] + 1) : ℓ ∈ X_i, j ∈ [k]}.
inline BVLGraph gen_bvl_graph(const BVLInstance& inst) {
  validate_bvl(inst);
  BVLGraph g;
  g.stream.header = {inst.n, 2 * inst.k * inst.p, StreamMode::InsertionOnly};
  check_header(g.stream.header);
  g.party_streams.resize(inst.p);
  for (std::uint32_t i = 1; i <= inst.p; ++i)
    for (Vertex l : inst.X[i - 1]) {
      const auto& y = inst.string_of(i, l);
      for (std::uint32_t j = 1; j <= inst.k; ++j)
        g.party_streams[i - 1].push_back(
            insert_edge(l, bvl_column(inst.k, i, j, y[j - 1] == '1' ? 1 : 0)));
    }
  g.stream.updates = detail::concat(g.party_streams);
  return g;
}

struct DecodedBit {
  std::uint32_t position = 0;  ///< 1-based position in Z^index
  std::uint8_t bit = 0;

  friend bool operator==(const DecodedBit&, const DecodedBit&) = default;
};

struct BVLDecoding {
  Vertex index = 0;
  std::vector<DecodedBit> bits;  ///< sorted by position
};

/// Column c ↦ party ⌊(c-1)/2k⌋+1, position j within the party's string and
/// bit (c-1) mod 2; the position in Z is (party-1)·k + j.
inline BVLDecoding decode_bvl_witnesses(const Neighbourhood& nb, std::uint32_t k,
                                        std::uint32_t p) {
  BVLDecoding out;
  out.index = nb.center;
  for (Vertex c : nb.witnesses) {
    if (c < 1 || c > 2 * k * p)
      throw Error(Errc::ColumnOutOfRange, "column " + std::to_string(c));
    const std::uint32_t offset = c - 1;
    const std::uint32_t party = offset / (2 * k) + 1;
    const std::uint32_t j = (offset % (2 * k)) / 2 + 1;
    out.bits.push_back({(party - 1) * k + j, static_cast<std::uint8_t>(offset % 2)});
  }
  std::sort(out.bits.begin(), out.bits.end(),
            [](const DecodedBit& x, const DecodedBit& y) { return x.position < y.position; });
  for (std::size_t i = 1; i < out.bits.size(); ++i)
    if (out.bits[i].position == out.bits[i - 1].position)
      throw Error(Errc::InvalidParameter,
                  "both values of position " + std::to_string(out.bits[i].position));
  return out;
}

/// Sidecar text:
///   # bvl p=<p> n=<n> k=<k>
///   X <i> <j1> <j2> ...
///   Y <i> <j> <bits>
inline void write_bvl_sidecar(std::ostream& out, const BVLInstance& inst) {
  out << "# bvl p=" << inst.p << " n=" << inst.n << " k=" << inst.k << '\n';
  for (std::uint32_t i = 1; i <= inst.p; ++i) {
    out << "X " << i;
    for (Vertex j : inst.X[i - 1]) out << ' ' << j;
    out << '\n';
  }
  for (std::uint32_t i = 1; i <= inst.p; ++i)
    for (Vertex j : inst.X[i - 1]) out << "Y " << i << ' ' << j << ' ' << inst.string_of(i, j) << '\n';
}

inline BVLInstance read_bvl_sidecar(std::istream& in) {
  BVLInstance inst;
  std::string line;
  if (!std::getline(in, line) ||
      std::sscanf(line.c_str(), "# bvl p=%u n=%u k=%u", &inst.p, &inst.n, &inst.k) != 3)
    throw Error(Errc::MalformedStream, "bad bvl sidecar header");
  inst.X.resize(inst.p);
  inst.Y.assign(inst.p, std::vector<std::string>(std::size_t{inst.n} + 1));
  while (std::getline(in, line)) {
    std::istringstream is(line);
    std::string tag;
    std::uint32_t i = 0;
    is >> tag >> i;
    if (i < 1 || i > inst.p) throw Error(Errc::MalformedStream, "bad party in '" + line + "'");
    if (tag == "X") {
      Vertex j;
      while (is >> j) inst.X[i - 1].push_back(j);
    } else if (tag == "Y") {
      Vertex j = 0;
      std::string bits;
      is >> j >> bits;
      if (j < 1 || j > inst.n) throw Error(Errc::MalformedStream, "bad index in '" + line + "'");
      inst.Y[i - 1][j] = bits;
    } else {
      throw Error(Errc::MalformedStream, "bad sidecar line '" + line + "'");
    }
  }
  validate_bvl(inst);
  return inst;
}

// ---------------------------------------------------------------------------
// Augmented-Matrix-Row-Index

/// Alice holds the n×m matrix X; Bob holds J and, for each row i ≠ J, m - k
/// known positions Y_i. perms[i] maps column c to π_i(c) (all 1-based); an
/// empty perms means identity permutations.
struct AMRIInstance {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint32_t k = 0;
  std::vector<std::vector<std::uint8_t>> X;  ///< X[i-1][c-1]
  Vertex J = 0;
  std::vector<std::vector<std::uint32_t>> Y;      ///< Y[i-1], sorted columns; empty for J
  std::vector<std::vector<std::uint32_t>> perms;  ///< perms[i-1][c-1] = π_i(c)
  bool invert = false;

  std::uint8_t entry(Vertex i, std::uint32_t c) const {
    const auto v = X.at(i - 1).at(c - 1);
    return invert ? static_cast<std::uint8_t>(1 - v) : v;
  }
  std::uint32_t permuted(Vertex i, std::uint32_t c) const {
    return perms.empty() ? c : perms.at(i - 1).at(c - 1);
  }
  std::uint32_t ones_in_row(Vertex i) const {
    std::uint32_t c = 0;
    for (std::uint32_t col = 1; col <= m; ++col) c += entry(i, col);
    return c;
  }
};

/// Row-permutation matrix for the reduction: n random permutations of [m].
inline std::vector<std::vector<std::uint32_t>> random_row_permutations(std::uint32_t n,
                                                                       std::uint32_t m, Rng& rng) {
  std::vector<std::vector<std::uint32_t>> perms(n, std::vector<std::uint32_t>(m));
  for (auto& p : perms) {
    std::iota(p.begin(), p.end(), 1U);
    std::shuffle(p.begin(), p.end(), rng);
  }
  return perms;
}

/// Random instance of AMRI(n, 2d, d/α - 1); `invert` is set when row J has
/// fewer than d ones so that the streamed matrix always qualifies.
inline AMRIInstance make_amri_instance(std::uint32_t n, std::uint32_t d, std::uint32_t alpha,
                                       std::uint64_t seed) {
  if (n < 1 || d < 1 || alpha < 1 || d % alpha != 0)
    throw Error(Errc::InvalidParameter, "AMRI needs alpha dividing d");
  Rng rng(seed);
  AMRIInstance inst;
  inst.n = n;
  inst.m = 2 * d;
  inst.k = d / alpha - 1;
  inst.X.assign(n, std::vector<std::uint8_t>(inst.m));
  for (auto& row : inst.X)
    for (auto& v : row) v = coin(0.5, rng) ? 1 : 0;
  inst.J = static_cast<Vertex>(uniform_index(n, rng) + 1);
  inst.Y.resize(n);
  std::vector<std::uint32_t> cols(inst.m);
  std::iota(cols.begin(), cols.end(), 1U);
  for (Vertex i = 1; i <= n; ++i) {
    if (i == inst.J) continue;
    std::sample(cols.begin(), cols.end(), std::back_inserter(inst.Y[i - 1]), inst.m - inst.k,
                rng);
  }
  inst.perms = random_row_permutations(n, inst.m, rng);
  inst.invert = inst.ones_in_row(inst.J) < d;
  return inst;
}

struct AMRIStream {
  Stream stream;
  std::size_t alice_updates = 0;  ///< insertions come first, Bob's deletions after
};

/// Alice inserts (i, π_i(c)) for every 1-entry; Bob deletes (i, π_i(c)) for
/// every known position c ∈ Y_i holding a 1. Afterwards every row except J
/// has at most k = d/α - 1 ones. With `require_heavy_row` unset the stream
/// is produced even when row J holds fewer than d ones (the protocol runs
/// both orientations without knowing which one qualifies).
inline AMRIStream gen_amri_stream(const AMRIInstance& inst, std::uint32_t alpha,
                                  bool require_heavy_row = true) {
  if (inst.m == 0 || inst.m % 2 != 0) throw Error(Errc::InvalidParameter, "m must be 2d");
  const std::uint32_t d = inst.m / 2;
  if (alpha < 1 || d % alpha != 0 || inst.k != d / alpha - 1)
    throw Error(Errc::InvalidParameter, "k must equal d/alpha - 1");
  if (inst.J < 1 || inst.J > inst.n || inst.X.size() != inst.n || inst.Y.size() != inst.n)
    throw Error(Errc::InvalidParameter, "inconsistent AMRI instance");
  for (Vertex i = 1; i <= inst.n; ++i) {
    const auto expected = i == inst.J ? 0U : inst.m - inst.k;
    if (inst.Y[i - 1].size() != expected)
      throw Error(Errc::InvalidParameter, "|Y_" + std::to_string(i) + "| must be m - k");
    if (!inst.perms.empty()) {
      auto sorted = inst.perms.at(i - 1);
      std::sort(sorted.begin(), sorted.end());
      for (std::uint32_t c = 1; c <= inst.m; ++c)
        if (sorted.at(c - 1) != c) throw Error(Errc::InvalidParameter, "bad permutation");
    }
  }
  if (require_heavy_row && inst.ones_in_row(inst.J) < d)
    throw Error(Errc::InvalidParameter, "row J holds fewer than d ones");

  AMRIStream out;
  out.stream.header = {inst.n, inst.m, StreamMode::InsertionDeletion};
  check_header(out.stream.header);
  for (Vertex i = 1; i <= inst.n; ++i)
    for (std::uint32_t c = 1; c <= inst.m; ++c)
      if (inst.entry(i, c)) out.stream.updates.push_back(insert_edge(i, inst.permuted(i, c)));
  out.alice_updates = out.stream.updates.size();
  for (Vertex i = 1; i <= inst.n; ++i)
    for (std::uint32_t c : inst.Y[i - 1])
      if (inst.entry(i, c)) out.stream.updates.push_back(delete_edge(i, inst.permuted(i, c)));
  return out;
}

}  // namespace feww
