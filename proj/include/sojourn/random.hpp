// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random number streams (Philox4x32-10).
//
// Contract, frozen for reproducibility: a stream is fully determined by
// (seed, stream_id). The Philox key holds the 64-bit seed (k0 = low word,
// k1 = high word); the 128-bit counter holds the 64-bit block index in
// words c0,c1 and the 64-bit stream_id in words c2,c3. Distinct stream ids
// therefore select disjoint counter ranges and can never overlap, for any
// number of draws. Output is consumed as two 64-bit words per block,
// low half first.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace sojourn {

namespace detail {

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
  constexpr std::uint64_t kMul0 = 0xD2511F53u;
  constexpr std::uint64_t kMul1 = 0xCD9E8D57u;
  const std::uint64_t p0 = kMul0 * ctr[0];
  const std::uint64_t p1 = kMul1 * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  ctr[0] = hi1 ^ ctr[1] ^ key[0];
  ctr[1] = lo1;
  ctr[2] = hi0 ^ ctr[3] ^ key[1];
  ctr[3] = lo0;
}

// 10-round Philox4x32 block function.
inline void philox4x32_10(const std::uint32_t counter[4], const std::uint32_t key[2],
                          std::uint32_t out[4]) {
  constexpr std::uint32_t kBump0 = 0x9E3779B9u;
  constexpr std::uint32_t kBump1 = 0xBB67AE85u;
  std::uint32_t k[2] = {key[0], key[1]};
  out[0] = counter[0];
  out[1] = counter[1];
  out[2] = counter[2];
  out[3] = counter[3];
  philox_round(out, k);
  for (int r = 1; r < 10; ++r) {
    k[0] += kBump0;
    k[1] += kBump1;
    philox_round(out, k);
  }
}

}  // namespace detail

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_(stream_id), block_(0), index_(2) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64() {
    if (index_ == 2) refill();
    return buffer_[index_++];
  }

  // Uniform on the open interval (0,1); never returns an endpoint, so
  // log() and inverse-CDF transforms are safe without special cases.
  double uniform() {
    const std::uint64_t bits = next_u64() >> 11;  // top 53 bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  // One standard normal via Box-Muller (the sine branch is discarded so
  // the stream position is a pure function of the draw count).
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be > 0");
    return -std::log(uniform()) / rate;
  }

  // Poisson count by inversion of uniform products; means are split into
  // chunks so the e^{-mean} threshold never underflows.
  std::uint64_t poisson(double mean) {
    if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be >= 0");
    std::uint64_t total = 0;
    while (mean > 30.0) {
      total += poisson_knuth(30.0);
      mean -= 30.0;
    }
    return total + poisson_knuth(mean);
  }

 private:
  std::uint64_t poisson_knuth(double mean) {
    const double threshold = std::exp(-mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > threshold);
    return k - 1;
  }

  void refill() {
    const std::uint32_t key[2] = {static_cast<std::uint32_t>(seed_),
                                  static_cast<std::uint32_t>(seed_ >> 32)};
    const std::uint32_t ctr[4] = {static_cast<std::uint32_t>(block_),
                                  static_cast<std::uint32_t>(block_ >> 32),
                                  static_cast<std::uint32_t>(stream_),
                                  static_cast<std::uint32_t>(stream_ >> 32)};
    std::uint32_t out[4];
    detail::philox4x32_10(ctr, key, out);
    buffer_[0] = static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32);
    buffer_[1] = static_cast<std::uint64_t>(out[2]) | (static_cast<std::uint64_t>(out[3]) << 32);
    ++block_;
    index_ = 0;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_;
  std::uint64_t buffer_[2];
  int index_;
};

// A family of independent streams under one seed. Monte Carlo loops assign
// stream `base + i` to sample i, which makes results reproducible
// bit-for-bit regardless of thread count.
struct StreamFamily {
  std::uint64_t seed = 0;
  std::uint64_t base = 0;

  RandomStream at(std::uint64_t i) const { return RandomStream(seed, base + i); }
  StreamFamily offset(std::uint64_t shift) const { return StreamFamily{seed, base + shift}; }
};

}  // namespace sojourn
