/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef VIVOLINK_PHY_PARAMS_HPP
#define VIVOLINK_PHY_PARAMS_HPP

#include <string>
#include <vector>

namespace vivolink {

enum class Modulation { bpsk, qpsk, qam16, qam64 };

const char* modulation_name(Modulation m);
int bits_per_symbol(Modulation m);

/// Convolutional code rate as an exact rational. Supported: 1/2, 2/3, 3/4, 5/6.
struct CodeRate {
  int num = 1;
  int den = 2;
  bool operator==(const CodeRate&) const = default;
};

std::string code_rate_name(CodeRate r);

/// One row of the modulation-and-coding table. All counts are per OFDM symbol
/// at the bandwidth the entry was looked up for.
struct McsEntry {
  int index = 0;      // 0..15
  int n_ss = 1;       // spatial streams: 1 (index 0..7) or 2 (index 8..15)
  Modulation modulation = Modulation::bpsk;
  CodeRate code_rate;
  int n_bpscs = 1;  // coded bits per subcarrier per stream
  int n_cbps = 0;   // coded bits per OFDM symbol, all streams
  int n_dbps = 0;   // data bits per OFDM symbol
};

/// OFDM numerology for one bandwidth. Subcarrier indices are signed FFT bin
/// offsets; DC (0) is never used.
struct Numerology {
  int bandwidth_mhz = 20;
  int fft_size = 64;
  int n_sd = 52;  // data subcarriers
  int n_sp = 4;   // pilot subcarriers
  std::vector<int> data_indices;
  std::vector<int> pilot_indices;
  std::vector<int> used_indices;  // data+pilot, ascending
  // position of each data/pilot subcarrier inside used_indices
  std::vector<int> data_used_pos;
  std::vector<int> pilot_used_pos;
  double carrier_freq_hz = 2.4e9;
  double subcarrier_spacing_hz = 312.5e3;

  int n_used() const { return n_sd + n_sp; }
  /// 4.0 us for the 800 ns guard interval, 3.6 us for 400 ns.
  double symbol_duration_us(int guard_interval_ns) const;
  /// Absolute RF frequency of each used subcarrier, in used_indices order.
  std::vector<double> used_subcarrier_freqs_hz() const;
};

/// Throws std::invalid_argument unless bandwidth is 20 or 40.
Numerology make_numerology(int bandwidth_mhz, double carrier_freq_hz = 2.4e9);

/// Table lookup for MCS 0..15. Throws std::invalid_argument on out-of-range
/// index or unsupported bandwidth.
McsEntry mcs_lookup(int index, int bandwidth_mhz);

/// PHY data rate in Mbit/s, rounded to 0.1 Mbit/s. guard_interval_ns is 800 or 400.
double data_rate_mbps(const McsEntry& entry, int bandwidth_mhz, int guard_interval_ns);

/// OFDM symbols needed for a PSDU: ceil((16 service + 8*bytes + 6 tail) / n_dbps).
int num_symbols(const McsEntry& entry, int psdu_bytes);

}  // namespace vivolink

#endif  // VIVOLINK_PHY_PARAMS_HPP
