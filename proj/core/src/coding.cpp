/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vivolink/coding.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace vivolink {

namespace {

// Generators 133/171 (octal), constraint length 7. Bit 6 of a tap mask is the
// newest input bit, bit 0 the oldest.
constexpr uint32_t kGen0 = 0x5b;  // 133 octal
constexpr uint32_t kGen1 = 0x79;  // 171 octal
constexpr int kNumStates = 64;

inline uint8_t parity7(uint32_t w) { return static_cast<uint8_t>(std::popcount(w) & 1u); }

struct PuncturePattern {
  int period;          // encoder-output bits per pattern repetition
  uint16_t keep_mask;  // bit i set: position i within the period survives
  int kept;            // popcount of keep_mask
};

PuncturePattern pattern_for(CodeRate rate) {
  if (rate == CodeRate{1, 2}) return {2, 0b11, 2};
  if (rate == CodeRate{2, 3}) return {4, 0b0111, 3};
  if (rate == CodeRate{3, 4}) return {6, 0b100111, 4};
  if (rate == CodeRate{5, 6}) return {10, 0b1001100111, 6};
  throw std::invalid_argument("unsupported code rate " + code_rate_name(rate));
}

}  // namespace

BitVec scramble(const BitVec& bits, uint8_t seed) {
  if ((seed & 0x7f) == 0) {
    throw std::invalid_argument("scrambler seed must be a nonzero 7-bit value");
  }
  uint32_t lfsr = seed & 0x7f;
  BitVec out(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) {
    const uint32_t fb = ((lfsr >> 6) ^ (lfsr >> 3)) & 1u;  // x^7 + x^4 + 1
    out[i] = static_cast<uint8_t>(bits[i] ^ fb);
    lfsr = ((lfsr << 1) | fb) & 0x7f;
  }
  return out;
}

BitVec scrambler_sequence(uint8_t seed) {
  return scramble(BitVec(127, 0), seed);
}

BitVec bcc_encode(const BitVec& bits) {
  BitVec out(bits.size() * 2);
  uint32_t state = 0;  // previous six input bits, newest in bit 5
  for (size_t i = 0; i < bits.size(); ++i) {
    const uint32_t w = (static_cast<uint32_t>(bits[i] & 1u) << 6) | state;
    out[2 * i] = parity7(w & kGen0);
    out[2 * i + 1] = parity7(w & kGen1);
    state = (w >> 1) & 0x3f;
  }
  return out;
}

BitVec puncture(const BitVec& coded, CodeRate rate) {
  const PuncturePattern p = pattern_for(rate);
  if (coded.size() % p.period != 0) {
    throw std::invalid_argument("punctured input length " + std::to_string(coded.size()) +
                                " is not a multiple of the pattern period " +
                                std::to_string(p.period));
  }
  BitVec out;
  out.reserve(coded.size() / p.period * p.kept);
  for (size_t i = 0; i < coded.size(); ++i) {
    if (p.keep_mask >> (i % p.period) & 1u) out.push_back(coded[i]);
  }
  return out;
}

LlrVec depuncture(const LlrVec& soft, CodeRate rate) {
  const PuncturePattern p = pattern_for(rate);
  if (soft.size() % p.kept != 0) {
    throw std::invalid_argument("depuncture input length " + std::to_string(soft.size()) +
                                " is not a multiple of " + std::to_string(p.kept));
  }
  LlrVec out(soft.size() / p.kept * p.period, 0.0);
  size_t in = 0;
  for (size_t i = 0; i < out.size(); ++i) {
    if (p.keep_mask >> (i % p.period) & 1u) out[i] = soft[in++];
  }
  return out;
}

BitVec viterbi_decode(const LlrVec& soft, bool terminated) {
  if (soft.size() % 2 != 0) {
    throw std::invalid_argument("soft input length must be even");
  }
  const size_t n_steps = soft.size() / 2;
  if (n_steps == 0) return {};

  // Code symbol (two output bits) per 7-bit register content.
  static const std::array<uint8_t, 128> kOut = [] {
    std::array<uint8_t, 128> t{};
    for (uint32_t w = 0; w < 128; ++w) {
      t[w] = static_cast<uint8_t>((parity7(w & kGen0) << 1) | parity7(w & kGen1));
    }
    return t;
  }();

  constexpr double kFloor = -1e300;
  std::array<double, kNumStates> pm{};
  std::array<double, kNumStates> next{};
  pm.fill(kFloor);
  pm[0] = 0.0;  // encoder starts in the all-zero state

  std::vector<uint64_t> decisions(n_steps);

  for (size_t t = 0; t < n_steps; ++t) {
    const double l0 = soft[2 * t];
    const double l1 = soft[2 * t + 1];
    // Metric per hypothesized code symbol, positive LLR favouring bit 0.
    const double bm[4] = {l0 + l1, l0 - l1, -l0 + l1, -l0 - l1};

    uint64_t dec = 0;
    for (int s = 0; s < kNumStates; ++s) {
      const uint32_t b = static_cast<uint32_t>(s) >> 5;  // input bit on this transition
      const uint32_t p0 = (static_cast<uint32_t>(s) << 1) & 0x3f;
      const uint32_t p1 = p0 | 1u;
      const double m0 = pm[p0] + bm[kOut[(b << 6) | p0]];
      const double m1 = pm[p1] + bm[kOut[(b << 6) | p1]];
      if (m1 > m0) {
        next[s] = m1;
        dec |= uint64_t{1} << s;
      } else {
        next[s] = m0;
      }
    }
    decisions[t] = dec;
    pm = next;
  }

  int state = 0;
  if (!terminated || pm[0] <= kFloor / 2) {
    double best = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < kNumStates; ++s) {
      if (pm[s] > best) {
        best = pm[s];
        state = s;
      }
    }
  }

  BitVec out(n_steps);
  for (size_t t = n_steps; t-- > 0;) {
    out[t] = static_cast<uint8_t>(state >> 5);
    const uint32_t d = (decisions[t] >> state) & 1u;
    state = static_cast<int>(((static_cast<uint32_t>(state) << 1) | d) & 0x3f);
  }
  return out;
}

}  // namespace vivolink
