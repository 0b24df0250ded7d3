/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef VIVOLINK_BITS_HPP
#define VIVOLINK_BITS_HPP

#include <cstdint>
#include <vector>

namespace vivolink {

/// Hard bits, one 0/1 value per element.
using BitVec = std::vector<uint8_t>;

/// Soft values. Convention: positive LLR means bit 0 is more likely;
/// exactly 0.0 marks an erasure (no information).
using LlrVec = std::vector<double>;

/// Hard bit -> saturated LLR under the sign convention above.
inline double bit_to_llr(uint8_t bit, double magnitude = 1.0) {
  return bit ? -magnitude : magnitude;
}

/// Sign decision, ties go to bit 0.
inline uint8_t llr_to_bit(double llr) { return llr < 0.0 ? 1 : 0; }

}  // namespace vivolink

#endif  // VIVOLINK_BITS_HPP
