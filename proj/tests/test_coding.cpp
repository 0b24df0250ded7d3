/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "vivolink/coding.hpp"

using namespace vivolink;

namespace {

// Reference scrambling sequence: explicit x^7 + x^4 + 1 shift register,
// cell-by-cell, independent of the packed implementation.
BitVec ref_lfsr(uint8_t seed, size_t n) {
  std::array<int, 7> reg{};
  for (int i = 0; i < 7; ++i) reg[i] = (seed >> i) & 1;
  BitVec out(n);
  for (size_t i = 0; i < n; ++i) {
    const int fb = reg[6] ^ reg[3];
    out[i] = static_cast<uint8_t>(fb);
    for (int j = 6; j > 0; --j) reg[j] = reg[j - 1];
    reg[0] = fb;
  }
  return out;
}

// Reference convolutional encoder: explicit delay line and tap lists.
BitVec ref_encode(const BitVec& in) {
  static const int taps_a[] = {0, 2, 3, 5, 6};
  static const int taps_b[] = {0, 1, 2, 3, 6};
  std::array<int, 7> delay{};
  BitVec out;
  for (uint8_t bit : in) {
    for (int j = 6; j > 0; --j) delay[j] = delay[j - 1];
    delay[0] = bit;
    int a = 0;
    int b = 0;
    for (int t : taps_a) a ^= delay[t];
    for (int t : taps_b) b ^= delay[t];
    out.push_back(static_cast<uint8_t>(a));
    out.push_back(static_cast<uint8_t>(b));
  }
  return out;
}

BitVec random_bits(std::mt19937& gen, size_t n) {
  BitVec v(n);
  for (auto& b : v) b = static_cast<uint8_t>(gen() & 1);
  return v;
}

LlrVec to_llrs(const BitVec& bits, double mag = 4.0) {
  LlrVec out(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) out[i] = bit_to_llr(bits[i], mag);
  return out;
}

// TX coding path for a message that already carries its six tail zeros.
LlrVec coded_llrs(const BitVec& msg_with_tail, CodeRate rate) {
  return to_llrs(puncture(bcc_encode(msg_with_tail), rate));
}

const CodeRate kRates[4] = {{1, 2}, {2, 3}, {3, 4}, {5, 6}};

// total message length (tail included) divisible by every pattern period
int legal_length(std::mt19937& gen) { return 30 * static_cast<int>(1 + gen() % 8); }

}  // namespace

TEST_CASE("scrambler: involution, reference sequence, errors") {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const BitVec x = random_bits(gen, 1 + gen() % 300);
    const uint8_t seed = static_cast<uint8_t>(1 + gen() % 127);
    CHECK(scramble(scramble(x, seed), seed) == x);
  }

  // all-zero input reproduces the raw LFSR sequence for every seed
  for (int seed = 1; seed <= 127; ++seed) {
    const BitVec got = scramble(BitVec(254, 0), static_cast<uint8_t>(seed));
    const BitVec want = ref_lfsr(static_cast<uint8_t>(seed), 254);
    CHECK(got == want);
    // 127-periodic
    for (int i = 0; i < 127; ++i) CHECK(got[i] == got[i + 127]);
  }

  // the well-known start of the all-ones sequence
  const BitVec seq = scrambler_sequence(0x7f);
  const BitVec head = {0, 0, 0, 0, 1, 1, 1, 0, 1, 1, 1, 1, 0, 0, 1, 0};
  CHECK(BitVec(seq.begin(), seq.begin() + 16) == head);

  CHECK_THROWS_AS(scramble(BitVec(8, 0), 0), std::invalid_argument);
}

TEST_CASE("bcc_encode: impulse response, zeros, linearity") {
  // all-zero input stays all-zero
  const BitVec zeros(64, 0);
  CHECK(bcc_encode(zeros) == BitVec(128, 0));

  // impulse response equals the generator taps 133/171 (octal)
  const BitVec impulse = {1, 0, 0, 0, 0, 0, 0};
  const BitVec want = {1, 1, 0, 1, 1, 1, 1, 1, 0, 0, 1, 0, 1, 1};
  CHECK(bcc_encode(impulse) == want);

  std::mt19937 gen(11);
  for (int trial = 0; trial < 30; ++trial) {
    const size_t n = 1 + gen() % 200;
    const BitVec a = random_bits(gen, n);
    const BitVec b = random_bits(gen, n);
    CHECK(bcc_encode(a).size() == 2 * n);
    CHECK(bcc_encode(a) == ref_encode(a));
    // linear code: encode(a ^ b) = encode(a) ^ encode(b)
    BitVec ab(n);
    for (size_t i = 0; i < n; ++i) ab[i] = a[i] ^ b[i];
    const BitVec ea = bcc_encode(a);
    const BitVec eb = bcc_encode(b);
    BitVec eab(2 * n);
    for (size_t i = 0; i < 2 * n; ++i) eab[i] = ea[i] ^ eb[i];
    CHECK(bcc_encode(ab) == eab);
  }
}

TEST_CASE("puncture/depuncture: patterns and lengths") {
  // rate 1/2 is the identity
  std::mt19937 gen(3);
  const BitVec x = random_bits(gen, 40);
  CHECK(puncture(x, {1, 2}) == x);

  // 12 encoder bits at rate 3/4 -> 8 survivors
  BitVec ramp12(12);
  for (int i = 0; i < 12; ++i) ramp12[i] = static_cast<uint8_t>(i % 2);
  CHECK(puncture(ramp12, {3, 4}).size() == 8);

  // 20 bits at 5/6 -> 12
  CHECK(puncture(BitVec(20, 1), {5, 6}).size() == 12);

  // extract the surviving positions with one-hot probes, independent of the
  // pattern tables
  std::vector<int> survivors;
  for (int i = 0; i < 12; ++i) {
    BitVec probe(12, 0);
    probe[i] = 1;
    const BitVec p = puncture(probe, {3, 4});
    int ones = 0;
    for (uint8_t b : p) ones += b;
    if (ones == 1) survivors.push_back(i);
  }
  CHECK(survivors == std::vector<int>{0, 1, 2, 5, 6, 7, 8, 11});

  // depuncture re-inserts zeros at exactly the deleted slots of a ramp
  const LlrVec restored = depuncture({1, 2, 3, 6, 7, 8, 9, 12}, {3, 4});
  CHECK(restored == LlrVec{1, 2, 3, 0, 0, 6, 7, 8, 9, 0, 0, 12});

  // inverse length arithmetic at every rate
  for (CodeRate r : kRates) {
    const size_t n_info = 30;  // 30 info bits divide all patterns
    const BitVec coded = random_bits(gen, 2 * n_info);
    const BitVec p = puncture(coded, r);
    CHECK(p.size() * r.num * 2 == coded.size() * r.den);  // |out| = |in| (1/2)/rate
    const LlrVec soft = to_llrs(p);
    const LlrVec dp = depuncture(soft, r);
    CHECK(dp.size() == coded.size());
    // survivors keep their values, removed slots read exactly 0.0
    size_t nonzero = 0;
    for (double v : dp) nonzero += v != 0.0;
    CHECK(nonzero == p.size());
  }

  CHECK_THROWS_AS(puncture(BitVec(13, 0), {3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(puncture(BitVec(12, 0), {4, 5}), std::invalid_argument);
  CHECK_THROWS_AS(depuncture(LlrVec(5, 1.0), {3, 4}), std::invalid_argument);
}

TEST_CASE("viterbi: noiseless round trips at every rate") {
  std::mt19937 gen(5);
  for (CodeRate rate : kRates) {
    for (int trial = 0; trial < 25; ++trial) {
      BitVec msg = random_bits(gen, static_cast<size_t>(legal_length(gen)) - 6);
      msg.insert(msg.end(), 6, 0);  // tail
      const LlrVec soft = depuncture(coded_llrs(msg, rate), rate);
      CHECK(viterbi_decode(soft) == msg);
    }
  }
}

TEST_CASE("viterbi: exhaustive single-flip correction on a short frame") {
  std::mt19937 gen(9);
  BitVec msg = random_bits(gen, 294);
  msg.insert(msg.end(), 6, 0);
  const LlrVec clean = to_llrs(bcc_encode(msg));
  for (size_t flip = 0; flip < clean.size(); ++flip) {
    LlrVec soft = clean;
    soft[flip] = -soft[flip];
    CHECK(viterbi_decode(soft) == msg);
  }
}

TEST_CASE("viterbi: scale invariance, erasures, odd length") {
  std::mt19937 gen(13);
  BitVec msg = random_bits(gen, 114);
  msg.insert(msg.end(), 6, 0);
  LlrVec soft = to_llrs(bcc_encode(msg));
  // add mild noise so the test is not trivially saturated
  std::normal_distribution<double> nd(0.0, 1.0);
  for (auto& v : soft) v += nd(gen);
  const BitVec base = viterbi_decode(soft);
  LlrVec scaled = soft;
  for (auto& v : scaled) v *= 37.5;
  CHECK(viterbi_decode(scaled) == base);

  // total erasure: correct length, no crash
  const BitVec out = viterbi_decode(LlrVec(240, 0.0));
  CHECK(out.size() == 120);

  CHECK_THROWS_AS(viterbi_decode(LlrVec(7, 1.0)), std::invalid_argument);
}

TEST_CASE("viterbi: hard decisions match brute-force ML at k = 10") {
  // exhaustive nearest-codeword search over all messages, bit-packed
  const int k = 10;
  const int n_bits = 2 * (k + 6);
  std::vector<uint32_t> codewords(1u << k);
  for (uint32_t m = 0; m < codewords.size(); ++m) {
    BitVec msg(k + 6, 0);
    for (int i = 0; i < k; ++i) msg[i] = (m >> i) & 1;
    const BitVec enc = bcc_encode(msg);
    uint32_t packed = 0;
    for (int i = 0; i < n_bits; ++i) packed |= static_cast<uint32_t>(enc[i]) << i;
    codewords[m] = packed;
  }

  std::mt19937 gen(17);
  for (int trial = 0; trial < 60; ++trial) {
    const uint32_t m = gen() % codewords.size();
    uint32_t rx = codewords[m];
    // flip up to two positions: always within half the free distance
    rx ^= 1u << (gen() % n_bits);
    if (trial % 2) rx ^= 1u << (gen() % n_bits);

    int best = -1;
    int best_dist = 1 << 30;
    for (size_t cand = 0; cand < codewords.size(); ++cand) {
      const int d = __builtin_popcount(rx ^ codewords[cand]);
      if (d < best_dist) {
        best_dist = d;
        best = static_cast<int>(cand);
      }
    }

    LlrVec soft(n_bits);
    for (int i = 0; i < n_bits; ++i) soft[i] = bit_to_llr((rx >> i) & 1, 1.0);
    const BitVec decoded = viterbi_decode(soft);
    uint32_t got = 0;
    for (int i = 0; i < k; ++i) got |= static_cast<uint32_t>(decoded[i]) << i;
    CHECK(got == static_cast<uint32_t>(best));
  }
}

TEST_CASE("coding: end-to-end identity over all rates") {
  std::mt19937 gen(23);
  int trials = 0;
  for (CodeRate rate : kRates) {
    for (int t = 0; t < 250; ++t, ++trials) {
      const int payload_len = legal_length(gen) - 6;
      const BitVec payload = random_bits(gen, static_cast<size_t>(payload_len));
      const uint8_t seed = static_cast<uint8_t>(1 + gen() % 127);

      BitVec data = payload;
      data.insert(data.end(), 6, 0);
      BitVec scrambled = scramble(data, seed);
      for (size_t i = data.size() - 6; i < data.size(); ++i) scrambled[i] = 0;

      const BitVec punctured = puncture(bcc_encode(scrambled), rate);
      const LlrVec soft = depuncture(to_llrs(punctured), rate);
      const BitVec decoded = viterbi_decode(soft);
      const BitVec descrambled = descramble(decoded, seed);
      CHECK(BitVec(descrambled.begin(), descrambled.begin() + payload_len) == payload);
    }
  }
  CHECK(trials >= 1000);
}
