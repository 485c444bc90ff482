#pragma once

// α-approximation FEwW for insertion-only streams: α degree-reservoir runs
// in parallel with candidate thresholds 0, d/α, 2d/α, ... and a common
// neighbourhood target of d/α.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "core_model.hpp"
#include "deg_res_sampling.hpp"
#include "random.hpp"

namespace feww {

inline std::uint64_t ceil_div(std::uint64_t num, std::uint64_t den) { return (num + den - 1) / den; }

/// ⌈log2 n⌉ for n >= 1.
inline std::uint32_t ceil_log2(std::uint64_t n) {
  std::uint32_t r = 0;
  while ((std::uint64_t{1} << r) < n) ++r;
  return r;
}

struct InsertionOnlyConfig {
  std::uint32_t n = 0;
  std::uint64_t d = 1;
  std::uint32_t alpha = 1;
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1) throw Error(Errc::InvalidParameter, "n must be >= 1");
    if (d < 1) throw Error(Errc::InvalidParameter, "d must be >= 1");
    if (alpha < 1 || alpha > ceil_log2(n) + 1)
      throw Error(Errc::InvalidParameter,
                  "alpha must lie in [1, ceil(log2 n) + 1], got " + std::to_string(alpha));
  }

  /// s = ⌈ln(n) · n^(1/α)⌉, at least 1.
  std::uint64_t reservoir_size() const {
    double v = std::log(static_cast<double>(n)) * std::pow(static_cast<double>(n), 1.0 / alpha);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(v)));
  }
  /// d2 = ⌈d/α⌉.
  std::uint64_t target() const { return ceil_div(d, alpha); }
  /// d1(i) = max{1, ⌈i·d/α⌉}.
  std::uint64_t threshold(std::uint32_t run) const {
    return std::max<std::uint64_t>(1, ceil_div(run * d, alpha));
  }
  /// α·s·⌈d/α⌉, the cap on edges held across all runs.
  std::uint64_t stored_edge_bound() const { return alpha * reservoir_size() * target(); }
};

struct SpaceReport {
  std::uint64_t stored_edges = 0;
  std::uint64_t reservoir_entries = 0;
  std::uint64_t degree_entries = 0;
  std::uint64_t counters = 0;  ///< one x counter per run

  /// Total words, counting one per stored edge (its B endpoint).
  std::uint64_t words() const {
    return stored_edges + reservoir_entries + degree_entries + counters;
  }
};

class InsertionOnlyFeww {
 public:
  explicit InsertionOnlyFeww(InsertionOnlyConfig config) : config_(config), degrees_(config.n) {
    config_.validate();
    const auto s = config_.reservoir_size();
    runs_.reserve(config_.alpha);
    for (std::uint32_t i = 0; i < config_.alpha; ++i)
      runs_.emplace_back(DegResParams{config_.threshold(i), config_.target(), s},
                         derive_seed(config_.seed, i));
  }

  void process_update(const StreamUpdate& u) {
    if (u.sign != Sign::Insert)
      throw Error(Errc::DeletionUnsupported, "insertion-only algorithm received a deletion");
    if (u.a < 1 || u.a > config_.n)
      throw Error(Errc::VertexOutOfRange, "A-vertex " + std::to_string(u.a));
    const auto degree = degrees_.increment(u.a);
    for (auto& run : runs_) run.observe(u.a, u.b, degree);
  }

  /// Result of the successful run with the smallest index.
  std::optional<Neighbourhood> result() const {
    for (const auto& run : runs_)
      if (auto nb = run.finalize()) return nb;
    return std::nullopt;
  }

  SpaceReport space_report() const {
    SpaceReport r;
    for (const auto& run : runs_) {
      r.stored_edges += run.stored_edges();
      r.reservoir_entries += run.reservoir().size();
    }
    r.degree_entries = degrees_.entries();
    r.counters = runs_.size();
    return r;
  }

  const InsertionOnlyConfig& config() const noexcept { return config_; }
  const std::vector<DegResSampler>& runs() const noexcept { return runs_; }

 private:
  InsertionOnlyConfig config_;
  DegreeTable degrees_;
  std::vector<DegResSampler> runs_;
};

struct InsertionOnlyOutcome {
  std::optional<Neighbourhood> result;
  SpaceReport space;
};

inline InsertionOnlyOutcome run_insertion_only(const InsertionOnlyConfig& config,
                                               std::span<const StreamUpdate> stream) {
  InsertionOnlyFeww alg(config);
  for (const auto& u : stream) alg.process_update(u);
  return {alg.result(), alg.space_report()};
}

}  // namespace feww
