/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef VIVOLINK_CODING_HPP
#define VIVOLINK_CODING_HPP

#include "vivolink/bits.hpp"
#include "vivolink/phy_params.hpp"

namespace vivolink {

// Bit-domain pipeline: scramble -> rate-1/2 convolutional encode -> puncture.
// The receive side is depuncture -> soft Viterbi -> descramble.

/// XOR the input with the x^7 + x^4 + 1 LFSR sequence started from `seed`
/// (7-bit, nonzero). Involution: scramble(scramble(x, s), s) == x.
/// Throws std::invalid_argument for seed == 0 (degenerate all-zero sequence).
BitVec scramble(const BitVec& bits, uint8_t seed);

inline BitVec descramble(const BitVec& bits, uint8_t seed) { return scramble(bits, seed); }

/// First 127 outputs of the scrambling LFSR for a given nonzero seed
/// (the sequence XORed onto an all-zero input).
BitVec scrambler_sequence(uint8_t seed);

/// Rate-1/2 binary convolutional encoder, constraint length 7, generators
/// 133/171 (octal), zero initial state. Output is g0,g1 interleaved, so
/// |out| == 2*|in|. Framed callers terminate with six zero tail bits.
BitVec bcc_encode(const BitVec& bits);

/// Delete coded bits following the standard puncturing pattern for the rate.
/// Input length must be a multiple of the pattern period (2, 4, 6, 10 encoder
/// bits for rates 1/2, 2/3, 3/4, 5/6); |out| = |in| * (1/2) / rate.
BitVec puncture(const BitVec& coded, CodeRate rate);

/// Re-insert erasure LLRs (exactly 0.0) at the punctured positions.
/// |out| = |in| * rate / (1/2).
LlrVec depuncture(const LlrVec& soft, CodeRate rate);

/// Maximum-likelihood path over the 64-state trellis under the additive LLR
/// metric (max-log). Input length must be even; output |soft|/2 bits.
/// `terminated` forces the final state to zero (frames carrying tail bits);
/// otherwise the best final state wins. Full-block traceback.
BitVec viterbi_decode(const LlrVec& soft, bool terminated = true);

}  // namespace vivolink

#endif  // VIVOLINK_CODING_HPP
