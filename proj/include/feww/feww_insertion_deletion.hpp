#pragma once

// α-approximation FEwW for insertion-deletion streams. Two l0-sampling
// strategies run side by side:
//   vertex sampling  a uniform subset A' of A is fixed up front and every
//                    a in A' gets kA samplers over its own m potential edges;
//   edge sampling    kE samplers over all n·m edge coordinates.
// After the stream, every sampler is queried once, the recovered edges are
// pooled, and any center holding ⌈d/α⌉ distinct pooled edges is reported.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "core_model.hpp"
#include "l0_sampler.hpp"
#include "random.hpp"

namespace feww {

/// ⌈√n⌉ in integer arithmetic.
inline std::uint64_t ceil_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while (r * r < n) ++r;
  return r;
}

struct SamplerCounts {
  std::uint64_t vertex_samples = 0;      ///< sV = |A'|
  std::uint64_t per_vertex_samplers = 0; ///< kA
  std::uint64_t edge_samplers = 0;       ///< kE

  std::uint64_t total() const { return vertex_samples * per_vertex_samplers + edge_samplers; }
  friend bool operator==(const SamplerCounts&, const SamplerCounts&) = default;
};

struct InsDelConfig {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint64_t d = 1;
  std::uint32_t alpha = 1;
  std::uint64_t seed = 0;
  /// Sampler failure probability; 0 selects 1/(n^10·d).
  double delta = 0.0;

  void validate() const {
    if (n < 2) throw Error(Errc::InvalidParameter, "n must be >= 2");
    if (m < 1 || d < 1 || alpha < 1)
      throw Error(Errc::InvalidParameter, "m, d and alpha must be >= 1");
    if (std::uint64_t{n} * m > kMaxSketchDim)
      throw Error(Errc::InvalidParameter, "n*m exceeds the supported sketch dimension");
    if (delta != 0.0) l0_repetitions(delta);
  }

  double effective_delta() const {
    if (delta > 0.0) return delta;
    return 1.0 / (std::pow(static_cast<double>(n), 10.0) * static_cast<double>(d));
  }

  /// x = max{⌈n/α⌉, ⌈√n⌉}.
  std::uint64_t x() const {
    return std::max<std::uint64_t>((n + alpha - 1) / alpha, ceil_sqrt(n));
  }

  std::uint64_t target() const { return (d + alpha - 1) / alpha; }

  SamplerCounts sampler_counts() const {
    const double ln_n = std::log(static_cast<double>(n));
    const double d_over_alpha = static_cast<double>(d) / alpha;
    const auto xv = static_cast<double>(x());
    SamplerCounts c;
    c.vertex_samples = std::min<std::uint64_t>(
        n, static_cast<std::uint64_t>(std::ceil(10.0 * xv * ln_n)));
    c.per_vertex_samplers = static_cast<std::uint64_t>(std::ceil(10.0 * d_over_alpha * ln_n));
    c.edge_samplers = static_cast<std::uint64_t>(
        std::ceil(10.0 * n * d_over_alpha * (1.0 / xv + 1.0 / alpha) *
                  std::log(static_cast<double>(n) * m)));
    return c;
  }

  /// Words held by all sketches.
  std::uint64_t sketch_cells() const {
    const auto c = sampler_counts();
    const double dl = effective_delta();
    return c.vertex_samples * c.per_vertex_samplers * l0_sketch_words(m, dl) +
           c.edge_samplers * l0_sketch_words(std::uint64_t{n} * m, dl);
  }
};

struct InsDelOutcome {
  std::optional<Neighbourhood> result;
  SamplerCounts samplers;
  std::uint64_t sketch_cells = 0;
  std::uint64_t pooled_edges = 0;      ///< distinct edges recovered by all samplers
  std::uint64_t sampler_failures = 0;  ///< samplers whose query failed
};

class InsertionDeletionFeww {
 public:
  explicit InsertionDeletionFeww(InsDelConfig config)
      : config_(config), counts_(config.sampler_counts()) {
    config_.validate();
    const double dl = config_.effective_delta();

    Rng rng(derive_seed(config_.seed, 0));
    std::vector<Vertex> all(config_.n);
    std::iota(all.begin(), all.end(), Vertex{1});
    std::sample(all.begin(), all.end(), std::back_inserter(sampled_), counts_.vertex_samples, rng);

    bank_of_.assign(std::size_t{config_.n} + 1, kNotSampled);
    vertex_banks_.reserve(sampled_.size());
    for (std::size_t i = 0; i < sampled_.size(); ++i) {
      bank_of_[sampled_[i]] = static_cast<std::uint32_t>(i);
      vertex_banks_.emplace_back(config_.m, counts_.per_vertex_samplers, dl,
                                 derive_seed(config_.seed, 2 + std::uint64_t{sampled_[i]}));
    }
    edge_bank_.emplace(std::uint64_t{config_.n} * config_.m, counts_.edge_samplers, dl,
                       derive_seed(config_.seed, 1));
  }

  void process_update(const StreamUpdate& u) {
    if (u.a < 1 || u.a > config_.n)
      throw Error(Errc::VertexOutOfRange, "A-vertex " + std::to_string(u.a));
    if (u.b < 1 || u.b > config_.m)
      throw Error(Errc::VertexOutOfRange, "B-vertex " + std::to_string(u.b));
    const int delta = u.sign == Sign::Insert ? 1 : -1;
    if (auto i = bank_of_[u.a]; i != kNotSampled) vertex_banks_[i].update(u.b - 1, delta);
    edge_bank_->update(std::uint64_t{u.a - 1} * config_.m + (u.b - 1), delta);
  }

  InsDelOutcome finish() const {
    std::map<Vertex, std::set<Vertex>> pool;
    std::uint64_t failures = 0;
    for (std::size_t i = 0; i < sampled_.size(); ++i) {
      const auto& bank = vertex_banks_[i];
      for (std::size_t s = 0; s < bank.sketches(); ++s) {
        auto r = bank.sample(s);
        if (r.status == L0Status::Sampled)
          pool[sampled_[i]].insert(static_cast<Vertex>(r.coordinate + 1));
        else if (r.status == L0Status::Fail)
          ++failures;
      }
    }
    for (std::size_t s = 0; s < edge_bank_->sketches(); ++s) {
      auto r = edge_bank_->sample(s);
      if (r.status == L0Status::Sampled)
        pool[static_cast<Vertex>(r.coordinate / config_.m + 1)].insert(
            static_cast<Vertex>(r.coordinate % config_.m + 1));
      else if (r.status == L0Status::Fail)
        ++failures;
    }

    InsDelOutcome out;
    out.samplers = counts_;
    out.sketch_cells = sketch_cells();
    out.sampler_failures = failures;
    for (const auto& [center, witnesses] : pool) {
      out.pooled_edges += witnesses.size();
      if (!out.result && witnesses.size() >= config_.target())
        out.result = Neighbourhood{center, {witnesses.begin(), witnesses.end()}};
    }
    return out;
  }

  const InsDelConfig& config() const noexcept { return config_; }
  const SamplerCounts& sampler_counts() const noexcept { return counts_; }
  const std::vector<Vertex>& sampled_vertices() const noexcept { return sampled_; }

  /// Cell words actually allocated by the configured sketches.
  std::uint64_t sketch_cells() const {
    std::uint64_t total = edge_bank_->words();
    for (const auto& b : vertex_banks_) total += b.words();
    return total;
  }

 private:
  static constexpr std::uint32_t kNotSampled = UINT32_MAX;

  InsDelConfig config_;
  SamplerCounts counts_;
  std::vector<Vertex> sampled_;
  std::vector<std::uint32_t> bank_of_;
  std::vector<L0SketchBank> vertex_banks_;
  std::optional<L0SketchBank> edge_bank_;
};

inline InsDelOutcome run_insertion_deletion(const InsDelConfig& config,
                                            std::span<const StreamUpdate> stream) {
  InsertionDeletionFeww alg(config);
  for (const auto& u : stream) alg.process_update(u);
  return alg.finish();
}

/// Monte Carlo estimate of Pr[|Y ∩ X| >= y] where Y collects
/// ⌈C·ln(n)·n·y/k⌉ uniform draws (with repetition) from a universe of size n
/// and X is a fixed k-subset.
inline double validate_sampling_lemma(std::uint64_t n, std::uint64_t k, std::uint64_t y,
                                      double C, std::uint64_t trials, std::uint64_t seed) {
  if (!(y <= k && k <= n)) throw Error(Errc::ParameterOrderViolation, "need y <= k <= n");
  if (n < 2) throw Error(Errc::InvalidParameter, "n must be >= 2");
  if (C < 4.0) throw Error(Errc::InvalidParameter, "C must be >= 4");
  if (trials < 1) throw Error(Errc::InvalidParameter, "trials must be >= 1");
  const auto draws = static_cast<std::uint64_t>(
      std::ceil(C * std::log(static_cast<double>(n)) * static_cast<double>(n) *
                static_cast<double>(y) / static_cast<double>(k)));
  Rng rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
  std::vector<bool> hit(k);
  std::uint64_t successes = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::fill(hit.begin(), hit.end(), false);
    std::uint64_t distinct = 0;
    for (std::uint64_t i = 0; i < draws && distinct < y; ++i) {
      auto v = pick(rng);
      if (v < k && !hit[v]) {
        hit[v] = true;
        ++distinct;
      }
    }
    successes += distinct >= y;
  }
  return static_cast<double>(successes) / static_cast<double>(trials);
}

}  // namespace feww
