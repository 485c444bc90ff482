#pragma once

// Linear l0-sampling sketches over a coordinate space [0, dim).
//
// Each sketch holds `repetitions` independent copies of a nested geometric
// subsampling structure: a coordinate c whose pairwise-independent hash
// h_r(c) has t trailing zero bits lives in levels 0..t (level 0 holds every
// coordinate). Every level keeps a one-sparse recovery cell
//   (count, Σ coordinate, Σ z^coordinate mod p)
// with p the smallest prime above dim^3. Sampling takes, per repetition, the
// sparsest non-empty level and accepts it when the fingerprint proves it is a
// singleton.
//
// A bank groups many sketches over the same coordinate space so that one
// update computes z^c once; the sketches share the fingerprint base z and
// have independent level hashes.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <ostream>
#include <unordered_set>
#include <vector>

#include "core_model.hpp"
#include "random.hpp"

namespace feww {

namespace detail {

using u128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    exp >>= 1;
  }
  return result;
}

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Multiply-add-shift hash ((a·x + b) mod 2^64) div 2^32; pairwise
/// independent for x < 2^32 with a, b uniform 64-bit words.
inline std::uint32_t multiply_add_shift(std::uint64_t a, std::uint64_t x, std::uint64_t b) {
  return static_cast<std::uint32_t>((a * x + b) >> 32);
}

/// True when z^k = 1 for some 1 <= k <= r^2, r = ⌈√bound⌉, which covers
/// every order below `bound`. Baby-step giant-step, O(√bound) products.
inline bool order_below(std::uint64_t z, std::uint64_t bound, std::uint64_t p) {
  std::uint64_t r = 1;
  while (r * r < bound) ++r;
  std::unordered_set<std::uint64_t> baby;
  std::uint64_t power = 1;
  for (std::uint64_t j = 0; j < r; ++j) {
    baby.insert(power);
    power = mulmod(power, z, p);
  }
  // power = z^r; z^{ir} = z^j gives z^{ir-j} = 1 with 0 < ir-j <= r^2.
  std::uint64_t giant = power;
  for (std::uint64_t i = 1; i <= r; ++i) {
    if (baby.count(giant)) return true;
    giant = mulmod(giant, power, p);
  }
  return false;
}

}  // namespace detail

/// Largest supported coordinate space; keeps dim^3 below 2^63.
inline constexpr std::uint64_t kMaxSketchDim = (std::uint64_t{1} << 21) - 1;
inline constexpr std::uint32_t kMaxLevels = 22;

/// Smallest prime exceeding dim^3.
inline std::uint64_t fingerprint_prime(std::uint64_t dim) {
  if (dim < 1 || dim > kMaxSketchDim)
    throw Error(Errc::InvalidParameter, "sketch dimension " + std::to_string(dim));
  static std::mutex mutex;
  static std::map<std::uint64_t, std::uint64_t> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(dim); it != cache.end()) return it->second;
  std::uint64_t p = dim * dim * dim + 1;
  while (!detail::is_prime(p)) ++p;
  cache.emplace(dim, p);
  return p;
}

inline std::uint32_t l0_levels(std::uint64_t dim) {
  std::uint32_t r = 0;
  while ((std::uint64_t{1} << r) < dim) ++r;
  return r + 1;
}

/// ⌈ln(1/δ)⌉ independent repetitions, at least one.
inline std::uint32_t l0_repetitions(double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw Error(Errc::ProbabilityOutOfRange, "delta=" + std::to_string(delta));
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(-std::log(delta))));
}

/// Words held by one sketch: repetitions × levels × 3.
inline std::uint64_t l0_sketch_words(std::uint64_t dim, double delta) {
  return std::uint64_t{l0_repetitions(delta)} * l0_levels(dim) * 3;
}

struct L0Cell {
  std::int64_t count = 0;
  std::int64_t index_sum = 0;
  std::uint64_t fingerprint = 0;

  bool zero() const noexcept { return count == 0 && index_sum == 0 && fingerprint == 0; }
  friend bool operator==(const L0Cell&, const L0Cell&) = default;
};

enum class L0Status : std::uint8_t { Sampled, Empty, Fail };

struct L0Sample {
  L0Status status = L0Status::Empty;
  std::uint64_t coordinate = 0;
};

class L0SketchBank {
 public:
  L0SketchBank(std::uint64_t dim, std::size_t sketches, double delta, std::uint64_t seed)
      : dim_(dim),
        sketches_(sketches),
        levels_(l0_levels(dim)),
        repetitions_(l0_repetitions(delta)),
        seed_(seed),
        prime_(fingerprint_prime(dim)),
        reciprocal_(UINT64_MAX / prime_) {
    Rng rng(seed);
    // A base of small multiplicative order would alias coordinates i and
    // i + order in every fingerprint of the bank, so redraw until z^i is
    // distinct across the coordinate space.
    std::uniform_int_distribution<std::uint64_t> base(2, prime_ - 1);
    do z_ = base(rng);
    while (detail::order_below(z_, dim_, prime_));
    hashes_.resize(sketches_ * repetitions_);
    for (auto& h : hashes_) {
      h.a = rng();
      h.b = rng();
    }
  }

  std::uint64_t dim() const noexcept { return dim_; }
  std::size_t sketches() const noexcept { return sketches_; }
  std::uint32_t levels() const noexcept { return levels_; }
  std::uint32_t repetitions() const noexcept { return repetitions_; }
  std::uint64_t prime() const noexcept { return prime_; }
  std::uint64_t words() const noexcept {
    return std::uint64_t{sketches_} * repetitions_ * levels_ * 3;
  }

  /// Adds `delta` (+1 or -1) to `coordinate` in every sketch of the bank.
  void update(std::uint64_t coordinate, int delta) {
    if (coordinate >= dim_)
      throw Error(Errc::CoordinateOutOfRange,
                  std::to_string(coordinate) + " >= " + std::to_string(dim_));
    if (delta != 1 && delta != -1)
      throw Error(Errc::InvalidParameter, "sketch updates are +1 or -1");
    std::uint64_t zc = detail::powmod(z_, coordinate, prime_);
    if (delta < 0 && zc != 0) zc = prime_ - zc;
    pending_.push_back({coordinate, pack(delta * static_cast<std::int64_t>(coordinate), delta), zc});
    if (pending_.size() >= kBatch) flush();
  }

  L0Sample sample(std::size_t sketch) const {
    if (sketch >= sketches_) throw Error(Errc::InvalidParameter, "sketch index out of range");
    flush();
    if (cells_.empty() || cell(sketch, 0, 0).zero()) return {L0Status::Empty, 0};
    for (std::uint32_t rep = 0; rep < repetitions_; ++rep) {
      for (std::uint32_t level = levels_; level-- > 0;) {
        const L0Cell& c = cell(sketch, rep, level);
        if (c.zero()) continue;
        if (auto coordinate = recover(c)) return {L0Status::Sampled, *coordinate};
        // Levels are nested: every lower level holds a superset.
        break;
      }
    }
    return {L0Status::Fail, 0};
  }

  /// Cellwise sum; both banks must come from identical parameters and seed.
  void merge(const L0SketchBank& other) {
    if (other.dim_ != dim_ || other.sketches_ != sketches_ ||
        other.repetitions_ != repetitions_ || other.seed_ != seed_)
      throw Error(Errc::InvalidParameter, "merging incompatible sketches");
    other.flush();
    flush();
    if (other.cells_.empty()) return;
    materialize();
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      cells_[i].count += other.cells_[i].count;
      cells_[i].index_sum += other.cells_[i].index_sum;
      cells_[i].fingerprint += other.cells_[i].fingerprint;
      if (cells_[i].fingerprint >= prime_) cells_[i].fingerprint -= prime_;
    }
  }

  /// Zero cell for sketches that were never updated.
  const L0Cell& cell(std::size_t sketch, std::uint32_t rep, std::uint32_t level) const {
    static const L0Cell kZero{};
    flush();
    if (cells_.empty()) return kZero;
    return cells_[(sketch * repetitions_ + rep) * levels_ + level];
  }

  bool all_zero() const {
    flush();
    for (const auto& c : cells_)
      if (!c.zero()) return false;
    return true;
  }

  friend bool operator==(const L0SketchBank& x, const L0SketchBank& y) {
    if (x.dim_ != y.dim_ || x.sketches_ != y.sketches_ || x.repetitions_ != y.repetitions_ ||
        x.seed_ != y.seed_)
      return false;
    x.flush();
    y.flush();
    if (x.cells_.empty() || y.cells_.empty()) return x.all_zero() && y.all_zero();
    return x.cells_ == y.cells_;
  }

  /// Debug dump, one non-zero cell per line:
  ///   <sketch> <rep> <level> <count> <index_sum> <fingerprint>
  void dump(std::ostream& out) const {
    out << "# l0 dim=" << dim_ << " sketches=" << sketches_ << " reps=" << repetitions_
        << " levels=" << levels_ << " p=" << prime_ << '\n';
    for (std::size_t s = 0; s < sketches_; ++s)
      for (std::uint32_t r = 0; r < repetitions_; ++r)
        for (std::uint32_t l = 0; l < levels_; ++l) {
          const auto& c = cell(s, r, l);
          if (c.zero()) continue;
          out << s << ' ' << r << ' ' << l << ' ' << c.count << ' ' << c.index_sum << ' '
              << c.fingerprint << '\n';
        }
  }

 private:
  struct AffineHash {
    std::uint64_t a = 1;
    std::uint64_t b = 0;
  };

  std::optional<std::uint64_t> recover(const L0Cell& c) const {
    if (c.count == 0 || c.index_sum % c.count != 0) return std::nullopt;
    const std::int64_t idx = c.index_sum / c.count;
    if (idx < 0 || static_cast<std::uint64_t>(idx) >= dim_) return std::nullopt;
    std::uint64_t count_mod = c.count > 0
                                  ? static_cast<std::uint64_t>(c.count) % prime_
                                  : prime_ - static_cast<std::uint64_t>(-c.count) % prime_;
    std::uint64_t expected =
        detail::mulmod(count_mod, detail::powmod(z_, static_cast<std::uint64_t>(idx), prime_),
                       prime_);
    if (expected != c.fingerprint) return std::nullopt;
    return static_cast<std::uint64_t>(idx);
  }

  void materialize() const {
    if (cells_.empty()) cells_.assign(sketches_ * repetitions_ * levels_, L0Cell{});
  }

  std::uint64_t add_mod(std::uint64_t x, std::uint64_t y) const noexcept {
    x += y;
    return x - (prime_ & (0 - static_cast<std::uint64_t>(x >= prime_)));
  }

  void add_cell(L0Cell& into, const L0Cell& from) const noexcept {
    into.count += from.count;
    into.index_sum += from.index_sum;
    into.fingerprint = add_mod(into.fingerprint, from.fingerprint);
  }

  // Count and index sum of a batch share one word: the count in the low
  // 32 bits, the index sum above it. Both stay below 2^31 in magnitude
  // over kBatch updates since dim < 2^21.
  static std::uint64_t pack(std::int64_t weighted, std::int64_t delta) noexcept {
    return (static_cast<std::uint64_t>(weighted) << 32) + static_cast<std::uint64_t>(delta);
  }
  static std::int64_t packed_count(std::uint64_t w) noexcept {
    return static_cast<std::int32_t>(static_cast<std::uint32_t>(w));
  }
  static std::int64_t packed_sum(std::uint64_t w) noexcept {
    const auto count = static_cast<std::uint64_t>(packed_count(w));
    return static_cast<std::int32_t>(static_cast<std::uint32_t>((w - count) >> 32));
  }

  /// x mod p by a precomputed reciprocal.
  std::uint64_t reduce(std::uint64_t x) const noexcept {
    const auto q = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(x) * reciprocal_) >> 64);
    x -= q * prime_;
    while (x >= prime_) x -= prime_;
    return x;
  }

  // With Raw, fingerprints are summed without reduction (a batch of residues
  // fits in 64 bits) and the running suffix is reduced once per level.
  template <bool Raw>
  void flush_slots() const {
    const std::size_t slots = sketches_ * repetitions_;
    // Slots are ordered (sketch, rep) like hashes_. Level j admits a
    // coordinate when the top j hash bits are zero; the floor bit caps the
    // leading-zero count at levels - 1.
    const std::uint32_t floor_bit = std::uint32_t{1} << (32 - levels_);
    std::array<std::uint64_t, kMaxLevels> packed;
    std::array<std::uint64_t, kMaxLevels> prints;
    for (std::size_t slot = 0; slot < slots; ++slot) {
      packed.fill(0);
      prints.fill(0);
      const auto& h = hashes_[slot];
      for (const auto& u : pending_) {
        const auto depth =
            std::countl_zero(detail::multiply_add_shift(h.a, u.coordinate, h.b) | floor_bit);
        packed[depth] += u.packed;
        if constexpr (Raw) prints[depth] += u.zc;
        else prints[depth] = add_mod(prints[depth], u.zc);
      }
      L0Cell* cells = &cells_[slot * levels_];
      std::uint64_t running_packed = 0, running_print = 0;
      for (std::uint32_t level = levels_; level-- > 0;) {
        running_packed += packed[level];
        L0Cell& c = cells[level];
        c.count += packed_count(running_packed);
        c.index_sum += packed_sum(running_packed);
        if constexpr (Raw) {
          running_print += prints[level];
          c.fingerprint = add_mod(c.fingerprint, reduce(running_print));
        } else {
          running_print = add_mod(running_print, prints[level]);
          c.fingerprint = add_mod(c.fingerprint, running_print);
        }
      }
    }
  }

  // Applies buffered updates one slot at a time: each update is binned by
  // its depth, and a suffix sum over the bins adds it to levels 0..depth.
  void flush() const {
    if (pending_.empty()) return;
    materialize();
    if (prime_ <= UINT64_MAX / kBatch) flush_slots<true>();
    else flush_slots<false>();
    pending_.clear();
  }

  std::uint64_t dim_;
  std::size_t sketches_;
  std::uint32_t levels_;
  std::uint32_t repetitions_;
  std::uint64_t seed_;
  std::uint64_t prime_;
  std::uint64_t reciprocal_;
  std::uint64_t z_ = 2;
  std::vector<AffineHash> hashes_;
  struct Pending {
    std::uint64_t coordinate;
    std::uint64_t packed;
    std::uint64_t zc;
  };
  static constexpr std::size_t kBatch = 256;

  // Linear sketch: the cell state is independent of when pending updates are
  // applied, so queries flush lazily.
  mutable std::vector<L0Cell> cells_;  // [sketch][rep][level]
  mutable std::vector<Pending> pending_;
};

/// A single l0-sampler.
class L0Sketch {
 public:
  L0Sketch(std::uint64_t dim, double delta, std::uint64_t seed) : bank_(dim, 1, delta, seed) {}

  void update(std::uint64_t coordinate, int delta) { bank_.update(coordinate, delta); }
  L0Sample sample() const { return bank_.sample(0); }
  void merge(const L0Sketch& other) { bank_.merge(other.bank_); }

  const L0SketchBank& bank() const noexcept { return bank_; }
  std::uint64_t words() const noexcept { return bank_.words(); }
  bool all_zero() const { return bank_.all_zero(); }

  friend bool operator==(const L0Sketch&, const L0Sketch&) = default;

 private:
  L0SketchBank bank_;
};

inline L0Sketch l0_update(L0Sketch sk, std::uint64_t coordinate, int delta) {
  sk.update(coordinate, delta);
  return sk;
}

inline L0Sample l0_sample(const L0Sketch& sk) { return sk.sample(); }

}  // namespace feww
