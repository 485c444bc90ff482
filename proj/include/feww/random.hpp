#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "core_model.hpp"

namespace feww {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child seed for sub-stream `index` of `master`:
///   mix64(mix64(master) ^ (index * 0xD1B54A32D192ED03)).
/// Used for per-trial seeds, per-run seeds and per-sketch seeds.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ (index * 0xD1B54A32D192ED03ULL));
}

/// Returns true with probability p.
template <typename Urbg>
bool coin(double p, Urbg& rng) {
  if (!(p >= 0.0 && p <= 1.0))
    throw Error(Errc::ProbabilityOutOfRange, "p=" + std::to_string(p));
  if (p == 0.0) return false;
  if (p == 1.0) return true;
  return std::bernoulli_distribution(p)(rng);
}

template <typename Urbg>
std::uint64_t uniform_index(std::uint64_t size, Urbg& rng) {
  return std::uniform_int_distribution<std::uint64_t>(0, size - 1)(rng);
}

}  // namespace feww
