#pragma once

// Vertex/edge/stream types for bipartite graph streams G = (A, B, E),
// the exact in-memory oracle used for verification, and the text stream
// format shared by the CLI and the generators.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace feww {

/// 1-based vertex index. A-side indices live in [1, n], B-side in [1, m].
using Vertex = std::uint32_t;

enum class Errc {
  DuplicateInsert,
  DeleteAbsent,
  EmptyGraph,
  VertexOutOfRange,
  MalformedStream,
  ProbabilityOutOfRange,
  DeletionUnsupported,
  CoordinateOutOfRange,
  ParameterOrderViolation,
  SelfLoop,
  ColumnOutOfRange,
  NonIntegralPartition,
  UniverseTooSmall,
  InvalidParameter,
  SpaceBoundViolation,
  UnsoundWitness,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DuplicateInsert: return "DuplicateInsert";
    case Errc::DeleteAbsent: return "DeleteAbsent";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::MalformedStream: return "MalformedStream";
    case Errc::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case Errc::DeletionUnsupported: return "DeletionUnsupported";
    case Errc::CoordinateOutOfRange: return "CoordinateOutOfRange";
    case Errc::ParameterOrderViolation: return "ParameterOrderViolation";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::ColumnOutOfRange: return "ColumnOutOfRange";
    case Errc::NonIntegralPartition: return "NonIntegralPartition";
    case Errc::UniverseTooSmall: return "UniverseTooSmall";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::SpaceBoundViolation: return "SpaceBoundViolation";
    case Errc::UnsoundWitness: return "UnsoundWitness";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

enum class Sign : std::uint8_t { Insert, Delete };

enum class StreamMode : std::uint8_t { InsertionOnly, InsertionDeletion };

struct StreamUpdate {
  Vertex a = 0;
  Vertex b = 0;
  Sign sign = Sign::Insert;

  friend bool operator==(const StreamUpdate&, const StreamUpdate&) = default;
};

inline StreamUpdate insert_edge(Vertex a, Vertex b) { return {a, b, Sign::Insert}; }
inline StreamUpdate delete_edge(Vertex a, Vertex b) { return {a, b, Sign::Delete}; }

struct StreamHeader {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  StreamMode mode = StreamMode::InsertionOnly;

  friend bool operator==(const StreamHeader&, const StreamHeader&) = default;
};

struct Stream {
  StreamHeader header;
  std::vector<StreamUpdate> updates;

  friend bool operator==(const Stream&, const Stream&) = default;
};

/// Output of every FEwW algorithm: a center a together with S ⊆ Γ(a).
/// Witnesses are kept sorted and duplicate-free.
struct Neighbourhood {
  Vertex center = 0;
  std::vector<Vertex> witnesses;

  std::size_t size() const noexcept { return witnesses.size(); }

  friend bool operator==(const Neighbourhood&, const Neighbourhood&) = default;
};

inline Neighbourhood make_neighbourhood(Vertex center, std::vector<Vertex> witnesses) {
  std::sort(witnesses.begin(), witnesses.end());
  if (std::adjacent_find(witnesses.begin(), witnesses.end()) != witnesses.end())
    throw Error(Errc::InvalidParameter, "duplicate witness");
  return {center, std::move(witnesses)};
}

/// Default exponent c of the |B| <= |A|^c restriction.
inline constexpr unsigned kDefaultPolyExponent = 3;

/// True iff m <= n^exponent, computed without overflow.
inline bool within_poly_bound(std::uint64_t n, std::uint64_t m,
                              unsigned exponent = kDefaultPolyExponent) {
  std::uint64_t bound = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (bound > m) return true;
    bound *= n;
  }
  return m <= bound;
}

inline void check_header(const StreamHeader& h, unsigned exponent = kDefaultPolyExponent) {
  if (h.n == 0 || h.m == 0)
    throw Error(Errc::InvalidParameter, "n and m must be positive");
  if (!within_poly_bound(h.n, h.m, exponent))
    throw Error(Errc::InvalidParameter,
                "m=" + std::to_string(h.m) + " exceeds n^" + std::to_string(exponent));
}

inline void check_update(const StreamHeader& h, const StreamUpdate& u) {
  if (u.a < 1 || u.a > h.n)
    throw Error(Errc::VertexOutOfRange, "A-vertex " + std::to_string(u.a));
  if (u.b < 1 || u.b > h.m)
    throw Error(Errc::VertexOutOfRange, "B-vertex " + std::to_string(u.b));
  if (h.mode == StreamMode::InsertionOnly && u.sign == Sign::Delete)
    throw Error(Errc::DeletionUnsupported, "deletion in an insertion-only stream");
}

/// Exact adjacency of the current graph. Verification oracle only; it stores
/// every edge.
class ExactGraph {
 public:
  ExactGraph() = default;
  ExactGraph(std::uint32_t n, std::uint32_t m) : n_(n), m_(m), adjacency_(n + 1) {}

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t m() const noexcept { return m_; }

  void apply(const StreamUpdate& u) {
    if (u.a < 1 || u.a > n_ || u.b < 1 || u.b > m_)
      throw Error(Errc::VertexOutOfRange,
                  "edge (" + std::to_string(u.a) + "," + std::to_string(u.b) + ")");
    auto& nbrs = adjacency_[u.a];
    if (u.sign == Sign::Insert) {
      if (!nbrs.insert(u.b).second)
        throw Error(Errc::DuplicateInsert,
                    "edge (" + std::to_string(u.a) + "," + std::to_string(u.b) + ")");
      ++edges_;
    } else {
      if (nbrs.erase(u.b) == 0)
        throw Error(Errc::DeleteAbsent,
                    "edge (" + std::to_string(u.a) + "," + std::to_string(u.b) + ")");
      --edges_;
    }
  }

  std::size_t degree(Vertex a) const { return a >= 1 && a <= n_ ? adjacency_[a].size() : 0; }
  const std::set<Vertex>& neighbours(Vertex a) const { return adjacency_.at(a); }
  bool has_edge(Vertex a, Vertex b) const {
    return a >= 1 && a <= n_ && adjacency_[a].count(b) != 0;
  }
  std::size_t edge_count() const noexcept { return edges_; }

  /// Δ, the maximum A-degree.
  std::size_t max_degree() const {
    std::size_t best = 0;
    for (Vertex a = 1; a <= n_; ++a) best = std::max(best, adjacency_[a].size());
    return best;
  }

  /// Number of A-vertices with degree >= threshold (the degree classes n_i).
  std::size_t count_at_least(std::size_t threshold) const {
    std::size_t c = 0;
    for (Vertex a = 1; a <= n_; ++a) c += adjacency_[a].size() >= threshold;
    return c;
  }

 private:
  std::uint32_t n_ = 0;
  std::uint32_t m_ = 0;
  std::vector<std::set<Vertex>> adjacency_;
  std::size_t edges_ = 0;
};

inline ExactGraph apply_update(ExactGraph graph, const StreamUpdate& u) {
  graph.apply(u);
  return graph;
}

inline ExactGraph replay(const Stream& s) {
  ExactGraph g(s.header.n, s.header.m);
  for (const auto& u : s.updates) g.apply(u);
  return g;
}

/// Throws on any update that breaks the header ranges, the mode, or the
/// simple-graph discipline.
inline void validate_stream(const Stream& s, unsigned exponent = kDefaultPolyExponent) {
  check_header(s.header, exponent);
  ExactGraph g(s.header.n, s.header.m);
  for (const auto& u : s.updates) {
    check_update(s.header, u);
    g.apply(u);
  }
}

/// Vertex of maximal degree with its full neighbourhood; ties go to the
/// smallest index.
inline Neighbourhood exact_max_neighbourhood(const ExactGraph& g) {
  Vertex best = 0;
  std::size_t best_degree = 0;
  for (Vertex a = 1; a <= g.n(); ++a) {
    if (g.degree(a) > best_degree) {
      best = a;
      best_degree = g.degree(a);
    }
  }
  if (best == 0) throw Error(Errc::EmptyGraph, "graph has no edges");
  const auto& nbrs = g.neighbours(best);
  return {best, std::vector<Vertex>(nbrs.begin(), nbrs.end())};
}

inline bool verify_witness(const ExactGraph& g, const Neighbourhood& nb, std::size_t threshold) {
  if (nb.witnesses.size() < threshold) return false;
  std::set<Vertex> seen;
  for (Vertex b : nb.witnesses) {
    if (!seen.insert(b).second) return false;
    if (!g.has_edge(nb.center, b)) return false;
  }
  return true;
}

// Stream text format:
//   # n=<n> m=<m> mode=<ins|insdel>
//   I <a> <b>
//   D <a> <b>
// LF line endings, decimal integers, one update per line.

inline const char* mode_name(StreamMode mode) {
  return mode == StreamMode::InsertionOnly ? "ins" : "insdel";
}

inline void write_stream(std::ostream& out, const Stream& s) {
  out << "# n=" << s.header.n << " m=" << s.header.m << " mode=" << mode_name(s.header.mode)
      << '\n';
  for (const auto& u : s.updates)
    out << (u.sign == Sign::Insert ? 'I' : 'D') << ' ' << u.a << ' ' << u.b << '\n';
}

inline std::string to_string(const Stream& s) {
  std::ostringstream os;
  write_stream(os, s);
  return os.str();
}

namespace detail {

inline std::optional<std::uint32_t> parse_u32(std::string_view text) {
  if (text.empty() || text.size() > 10) return std::nullopt;
  std::uint64_t v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (v > UINT32_MAX) return std::nullopt;
  return static_cast<std::uint32_t>(v);
}

inline std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    auto next = line.find(' ', pos);
    if (next == std::string_view::npos) next = line.size();
    parts.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return parts;
}

}  // namespace detail

inline StreamHeader parse_header(std::string_view line) {
  auto fail = [&] { throw Error(Errc::MalformedStream, "bad header '" + std::string(line) + "'"); };
  auto parts = detail::split_spaces(line);
  if (parts.size() != 4 || parts[0] != "#") fail();
  auto value = [&](std::string_view part, std::string_view key) {
    if (part.substr(0, key.size()) != key) fail();
    return part.substr(key.size());
  };
  StreamHeader h;
  auto n = detail::parse_u32(value(parts[1], "n="));
  auto m = detail::parse_u32(value(parts[2], "m="));
  auto mode = value(parts[3], "mode=");
  if (!n || !m) fail();
  h.n = *n;
  h.m = *m;
  if (mode == "ins")
    h.mode = StreamMode::InsertionOnly;
  else if (mode == "insdel")
    h.mode = StreamMode::InsertionDeletion;
  else
    fail();
  return h;
}

/// Parses the text format. Range and mode violations are reported here;
/// simple-graph discipline is checked by validate_stream.
inline Stream parse_stream(std::istream& in) {
  Stream s;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!have_header) {
      s.header = parse_header(line);
      check_header(s.header);
      have_header = true;
      continue;
    }
    auto parts = detail::split_spaces(line);
    auto fail = [&] {
      throw Error(Errc::MalformedStream,
                  "line " + std::to_string(line_no) + ": '" + line + "'");
    };
    if (parts.size() != 3 || parts[0].size() != 1) fail();
    auto a = detail::parse_u32(parts[1]);
    auto b = detail::parse_u32(parts[2]);
    if (!a || !b) fail();
    StreamUpdate u{*a, *b, Sign::Insert};
    if (parts[0] == "I")
      u.sign = Sign::Insert;
    else if (parts[0] == "D")
      u.sign = Sign::Delete;
    else
      fail();
    check_update(s.header, u);
    s.updates.push_back(u);
  }
  if (!have_header) throw Error(Errc::MalformedStream, "missing header");
  return s;
}

inline Stream parse_stream(std::string_view text) {
  std::istringstream is{std::string(text)};
  return parse_stream(is);
}

}  // namespace feww
