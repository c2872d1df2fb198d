// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "sojourn/random.hpp"

using sojourn::RandomStream;
using sojourn::StreamFamily;

TEST_CASE("philox4x32-10 known-answer vectors", "[random]") {
  // Reference vectors from the Random123 test suite (kat_vectors).
  std::uint32_t out[4];

  const std::uint32_t zero_ctr[4] = {0, 0, 0, 0};
  const std::uint32_t zero_key[2] = {0, 0};
  sojourn::detail::philox4x32_10(zero_ctr, zero_key, out);
  CHECK(out[0] == 0x6627e8d5u);
  CHECK(out[1] == 0xe169c58du);
  CHECK(out[2] == 0xbc57ac4cu);
  CHECK(out[3] == 0x9b00dbd8u);

  const std::uint32_t ff_ctr[4] = {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu};
  const std::uint32_t ff_key[2] = {0xffffffffu, 0xffffffffu};
  sojourn::detail::philox4x32_10(ff_ctr, ff_key, out);
  CHECK(out[0] == 0x408f276du);
  CHECK(out[1] == 0x41c83b0eu);
  CHECK(out[2] == 0xa20bc7c6u);
  CHECK(out[3] == 0x6d5451fdu);

  const std::uint32_t pi_ctr[4] = {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u};
  const std::uint32_t pi_key[2] = {0xa4093822u, 0x299f31d0u};
  sojourn::detail::philox4x32_10(pi_ctr, pi_key, out);
  CHECK(out[0] == 0xd16cfe09u);
  CHECK(out[1] == 0x94fdccebu);
  CHECK(out[2] == 0x5001e420u);
  CHECK(out[3] == 0x24126ea1u);
}

TEST_CASE("streams are reproducible and distinct", "[random]") {
  RandomStream a(42, 7);
  RandomStream b(42, 7);
  RandomStream c(42, 8);
  bool same = true, differs = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t va = a.next_u64();
    same = same && (va == b.next_u64());
    differs = differs || (va != c.next_u64());
  }
  CHECK(same);
  CHECK(differs);
}

TEST_CASE("uniform stays inside the open unit interval", "[random]") {
  RandomStream rng(1, 0);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
  CHECK(lo < 1e-4);
  CHECK(hi > 1.0 - 1e-4);
}

TEST_CASE("normal and exponential moments", "[random]") {
  RandomStream rng(123, 5);
  const int n = 1000000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));

  double esum = 0.0;
  for (int i = 0; i < n; ++i) esum += rng.exponential(2.0);
  CHECK(std::fabs(esum / n - 0.5) < 4.0 * 0.5 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("poisson mean and variance", "[random]") {
  RandomStream rng(9, 1);
  const int n = 200000;
  const double mean = 20.15;  // same order as the dominating tail mass in use
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(rng.poisson(mean));
    sum += k;
    sum2 += k * k;
  }
  const double m = sum / n;
  const double v = sum2 / n - m * m;
  CHECK(std::fabs(m - mean) < 4.0 * std::sqrt(mean / n));
  CHECK(std::fabs(v - mean) < 4.0 * mean * std::sqrt(2.0 / n));
  CHECK_THROWS_AS(rng.poisson(-1.0), std::invalid_argument);
}

TEST_CASE("stream family offsets", "[random]") {
  const StreamFamily family{42, 100};
  RandomStream direct(42, 105);
  RandomStream via = family.at(5);
  for (int i = 0; i < 16; ++i) REQUIRE(direct.next_u64() == via.next_u64());
}
