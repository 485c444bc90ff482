#pragma once

// One-way protocol that recovers row J of an Augmented-Matrix-Row-Index
// instance with an insertion-deletion FEwW algorithm. Each repetition draws
// fresh public row permutations, streams Alice's matrix as insertions and
// Bob's known entries as deletions, and maps the reported witnesses of
// center J back through π_J^{-1}.

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "core_model.hpp"
#include "feww_insertion_deletion.hpp"
#include "hard_instances.hpp"
#include "random.hpp"

namespace feww {

/// Repetitions ⌈c·α·ln n⌉, the constant c defaulting to 8.
inline std::uint32_t amri_repetitions(std::uint32_t n, std::uint32_t alpha,
                                      double constant = 8.0) {
  return std::max<std::uint32_t>(
      1, static_cast<std::uint32_t>(std::ceil(constant * alpha * std::log(static_cast<double>(n)))));
}

struct AMRIRowLearning {
  std::set<std::uint32_t> learned;                 ///< columns of row J seen as 1
  std::vector<std::set<std::uint32_t>> per_round;  ///< columns learned in each repetition
};

/// Runs `repetitions` independent rounds on the matrix in the given
/// orientation and collects the 1-columns of row J that were reported.
inline AMRIRowLearning learn_amri_row(const AMRIInstance& base, bool invert, std::uint32_t alpha,
                                      std::uint32_t repetitions, std::uint64_t seed,
                                      double delta) {
  AMRIRowLearning out;
  const std::uint32_t d = base.m / 2;
  for (std::uint32_t r = 0; r < repetitions; ++r) {
    const auto round_seed = derive_seed(seed, r);
    Rng rng(round_seed);
    AMRIInstance inst = base;
    inst.invert = invert;
    inst.perms = random_row_permutations(inst.n, inst.m, rng);
    const auto s = gen_amri_stream(inst, alpha, /*require_heavy_row=*/false);
    const auto outcome = run_insertion_deletion(
        InsDelConfig{inst.n, inst.m, d, alpha, derive_seed(round_seed, 1), delta},
        s.stream.updates);
    std::set<std::uint32_t> round;
    if (outcome.result && outcome.result->center == inst.J) {
      const auto& pi = inst.perms[inst.J - 1];
      for (Vertex b : outcome.result->witnesses) {
        const auto it = std::find(pi.begin(), pi.end(), b);
        round.insert(static_cast<std::uint32_t>(it - pi.begin()) + 1);
      }
    }
    out.learned.insert(round.begin(), round.end());
    out.per_round.push_back(std::move(round));
  }
  return out;
}

struct AMRISolution {
  std::vector<std::uint8_t> row;  ///< reconstructed X_J (in the instance's own orientation)
  bool used_inverted = false;     ///< decided that X_J holds fewer than d ones
  std::size_t ones_learned = 0;
  std::size_t zeros_learned = 0;
};

/// Bob's full strategy: learn the 1s of X_J and, in parallel, the 1s of the
/// bit-inverted matrix; fewer than d learned 1s means X_J itself had fewer
/// than d ones, so the inverted run's answer is used.
inline AMRISolution solve_amri(const AMRIInstance& base, std::uint32_t alpha, std::uint64_t seed,
                               double delta, double constant = 8.0) {
  const auto reps = amri_repetitions(base.n, alpha, constant);
  const std::uint32_t d = base.m / 2;
  const auto ones = learn_amri_row(base, base.invert, alpha, reps, derive_seed(seed, 0), delta);
  const auto zeros = learn_amri_row(base, !base.invert, alpha, reps, derive_seed(seed, 1), delta);
  AMRISolution out;
  out.ones_learned = ones.learned.size();
  out.zeros_learned = zeros.learned.size();
  out.used_inverted = ones.learned.size() < d;
  out.row.assign(base.m, out.used_inverted ? 1 : 0);
  for (auto c : out.used_inverted ? zeros.learned : ones.learned)
    out.row[c - 1] = out.used_inverted ? 0 : 1;
  return out;
}

}  // namespace feww
