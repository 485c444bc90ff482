#pragma once

// Star Detection on a general graph G = (V, E) through FEwW: every edge uv
// is fed to the bipartite double cover H = (V, V, E') as uv and vu, and one
// FEwW instance runs per guess Δ' of the maximum degree.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "core_model.hpp"
#include "feww_insertion_deletion.hpp"
#include "feww_insertion_only.hpp"
#include "random.hpp"

namespace feww {

struct StarConfig {
  std::uint32_t n = 0;
  double epsilon = 1.0;
  std::uint32_t alpha = 1;
  StreamMode mode = StreamMode::InsertionOnly;
  std::uint64_t seed = 0;
  /// Sampler failure probability for the insertion-deletion runs; 0 selects
  /// the default formula.
  double delta = 0.0;

  void validate() const {
    if (n < 2) throw Error(Errc::InvalidParameter, "n must be >= 2");
    if (!(epsilon > 0.0)) throw Error(Errc::InvalidParameter, "epsilon must be > 0");
    if (alpha < 1) throw Error(Errc::InvalidParameter, "alpha must be >= 1");
  }
};

/// {⌊(1+ε)^i⌋ : i = 0..⌈log_{1+ε} n⌉}, deduplicated and ascending.
inline std::vector<std::uint64_t> guess_grid(std::uint32_t n, double epsilon) {
  if (n < 1 || !(epsilon > 0.0)) throw Error(Errc::InvalidParameter, "bad grid parameters");
  std::vector<std::uint64_t> grid;
  double power = 1.0;
  while (true) {
    auto v = static_cast<std::uint64_t>(std::floor(power));
    if (grid.empty() || grid.back() != v) grid.push_back(v);
    // The last index is the smallest i with (1+ε)^i >= n.
    if (power >= static_cast<double>(n)) break;
    power *= 1.0 + epsilon;
  }
  return grid;
}

/// The two H-edges (A:u → B:v) and (A:v → B:u) for general edge uv.
inline std::array<StreamUpdate, 2> double_edge(Vertex u, Vertex v, Sign sign = Sign::Insert) {
  if (u == v) throw Error(Errc::SelfLoop, "vertex " + std::to_string(u));
  return {StreamUpdate{u, v, sign}, StreamUpdate{v, u, sign}};
}

/// Semi-streaming presets with ε = 1: α = ⌈log2 n⌉ for insertion-only
/// streams and α = ⌈√n⌉ for insertion-deletion streams.
inline StarConfig semi_streaming_preset(std::uint32_t n, StreamMode mode) {
  if (n < 2) throw Error(Errc::InvalidParameter, "n must be >= 2");
  StarConfig c;
  c.n = n;
  c.epsilon = 1.0;
  c.mode = mode;
  c.alpha = mode == StreamMode::InsertionOnly ? ceil_log2(n)
                                              : static_cast<std::uint32_t>(ceil_sqrt(n));
  return c;
}

struct StarOutcome {
  std::optional<Neighbourhood> result;
  std::uint64_t guess = 0;  ///< Δ' of the run that produced result
  std::vector<std::uint64_t> grid;
  std::uint64_t stored_edges = 0;
  std::uint64_t sketch_cells = 0;
};

class StarDetector {
 public:
  explicit StarDetector(StarConfig config) : config_(config) {
    config_.validate();
    grid_ = guess_grid(config_.n, config_.epsilon);
    runs_.reserve(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      const auto seed = derive_seed(config_.seed, i);
      if (config_.mode == StreamMode::InsertionOnly)
        runs_.emplace_back(std::in_place_type<InsertionOnlyFeww>,
                           InsertionOnlyConfig{config_.n, grid_[i], config_.alpha, seed});
      else
        runs_.emplace_back(
            std::in_place_type<InsertionDeletionFeww>,
            InsDelConfig{config_.n, config_.n, grid_[i], config_.alpha, seed, config_.delta});
    }
  }

  /// Feeds one general-graph update (u, v).
  void process_update(const StreamUpdate& u) {
    if (u.a < 1 || u.a > config_.n || u.b < 1 || u.b > config_.n)
      throw Error(Errc::VertexOutOfRange,
                  "edge (" + std::to_string(u.a) + "," + std::to_string(u.b) + ")");
    if (config_.mode == StreamMode::InsertionOnly && u.sign == Sign::Delete)
      throw Error(Errc::DeletionUnsupported, "insertion-only star detection");
    for (const auto& h : double_edge(u.a, u.b, u.sign))
      for (auto& run : runs_) std::visit([&](auto& alg) { alg.process_update(h); }, run);
  }

  /// Result of the largest guess whose run succeeded.
  StarOutcome finish() const {
    StarOutcome out;
    out.grid = grid_;
    for (std::size_t i = 0; i < runs_.size(); ++i) {
      std::optional<Neighbourhood> nb;
      if (auto* io = std::get_if<InsertionOnlyFeww>(&runs_[i])) {
        nb = io->result();
        out.stored_edges += io->space_report().stored_edges;
      } else {
        auto o = std::get<InsertionDeletionFeww>(runs_[i]).finish();
        nb = o.result;
        out.stored_edges += o.pooled_edges;
        out.sketch_cells += o.sketch_cells;
      }
      if (nb) {
        out.result = std::move(nb);
        out.guess = grid_[i];
      }
    }
    return out;
  }

  const std::vector<std::uint64_t>& grid() const noexcept { return grid_; }

 private:
  StarConfig config_;
  std::vector<std::uint64_t> grid_;
  std::vector<std::variant<InsertionOnlyFeww, InsertionDeletionFeww>> runs_;
};

inline StarOutcome run_star_detection(const StarConfig& config,
                                      std::span<const StreamUpdate> stream) {
  StarDetector det(config);
  for (const auto& u : stream) det.process_update(u);
  return det.finish();
}

}  // namespace feww
