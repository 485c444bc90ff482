#pragma once

// Degree-based reservoir sampling: a uniform reservoir over the A-vertices
// whose degree has reached d1, collecting up to d2 incident edges for each
// vertex while it is held.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "core_model.hpp"
#include "random.hpp"

namespace feww {

struct DegResParams {
  std::uint64_t d1 = 1;  ///< degree that makes a vertex a reservoir candidate
  std::uint64_t d2 = 1;  ///< neighbourhood size that counts as success
  std::uint64_t s = 1;   ///< reservoir capacity

  void validate() const {
    if (d1 < 1 || d2 < 1 || s < 1)
      throw Error(Errc::InvalidParameter, "d1, d2 and s must be >= 1");
  }
};

/// Per-vertex degree counters, indexed 1..n.
class DegreeTable {
 public:
  explicit DegreeTable(std::uint32_t n) : degree_(static_cast<std::size_t>(n) + 1, 0) {}

  std::uint64_t increment(Vertex a) { return ++degree_.at(a); }
  std::uint64_t operator[](Vertex a) const { return degree_.at(a); }
  std::size_t entries() const noexcept { return degree_.size() - 1; }

 private:
  std::vector<std::uint64_t> degree_;
};

/// Reservoir and collected-edge state of one run. Degree bookkeeping lives
/// outside so several runs can share one DegreeTable.
class DegResSampler {
 public:
  DegResSampler(DegResParams params, std::uint64_t seed) : params_(params), rng_(seed) {
    params_.validate();
  }

  const DegResParams& params() const noexcept { return params_; }

  /// Feeds edge ab, where `degree_after` is deg(a) including this edge.
  void observe(Vertex a, Vertex b, std::uint64_t degree_after) {
    if (degree_after == params_.d1) {
      ++candidates_;
      if (reservoir_.size() < params_.s) {
        admit(a);
      } else if (coin(static_cast<double>(params_.s) / static_cast<double>(candidates_), rng_)) {
        auto slot = uniform_index(reservoir_.size(), rng_);
        collected_.erase(reservoir_[slot]);
        reservoir_[slot] = a;
        collected_.emplace(a, std::vector<Vertex>{});
      }
    }
    // Runs after admission so the triggering edge itself is collectible.
    auto it = collected_.find(a);
    if (it != collected_.end() && it->second.size() < params_.d2) it->second.push_back(b);
  }

  /// Neighbourhood of size exactly d2 with the smallest center, or nullopt
  /// (fail).
  std::optional<Neighbourhood> finalize() const {
    std::optional<Neighbourhood> best;
    for (const auto& [center, edges] : collected_) {
      if (edges.size() != params_.d2) continue;
      if (!best || center < best->center) best = make_neighbourhood(center, edges);
    }
    return best;
  }

  bool in_reservoir(Vertex a) const { return collected_.count(a) != 0; }
  const std::vector<Vertex>& reservoir() const noexcept { return reservoir_; }
  std::size_t collected(Vertex a) const {
    auto it = collected_.find(a);
    return it == collected_.end() ? 0 : it->second.size();
  }
  /// x: number of vertices whose degree has reached d1.
  std::uint64_t candidates() const noexcept { return candidates_; }
  std::size_t stored_edges() const {
    std::size_t total = 0;
    for (const auto& [center, edges] : collected_) total += edges.size();
    return total;
  }

 private:
  void admit(Vertex a) {
    reservoir_.push_back(a);
    collected_.emplace(a, std::vector<Vertex>{});
  }

  DegResParams params_;
  Rng rng_;
  std::vector<Vertex> reservoir_;
  std::unordered_map<Vertex, std::vector<Vertex>> collected_;
  std::uint64_t candidates_ = 0;
};

/// Standalone single run with its own degree table.
class DegResSampling {
 public:
  DegResSampling(std::uint32_t n, DegResParams params, std::uint64_t seed)
      : degrees_(n), sampler_(params, seed) {}

  void process_update(const StreamUpdate& u) {
    if (u.sign != Sign::Insert)
      throw Error(Errc::DeletionUnsupported, "degree reservoir sampling is insertion-only");
    sampler_.observe(u.a, u.b, degrees_.increment(u.a));
  }

  std::optional<Neighbourhood> finalize() const { return sampler_.finalize(); }

  const DegResSampler& sampler() const noexcept { return sampler_; }
  const DegreeTable& degrees() const noexcept { return degrees_; }

 private:
  DegreeTable degrees_;
  DegResSampler sampler_;
};

}  // namespace feww
