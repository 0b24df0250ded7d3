/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vivolink/phy_params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vivolink {

const char* modulation_name(Modulation m) {
  switch (m) {
    case Modulation::bpsk: return "BPSK";
    case Modulation::qpsk: return "QPSK";
    case Modulation::qam16: return "16-QAM";
    case Modulation::qam64: return "64-QAM";
  }
  return "?";
}

int bits_per_symbol(Modulation m) {
  switch (m) {
    case Modulation::bpsk: return 1;
    case Modulation::qpsk: return 2;
    case Modulation::qam16: return 4;
    case Modulation::qam64: return 6;
  }
  return 0;
}

std::string code_rate_name(CodeRate r) {
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

double Numerology::symbol_duration_us(int guard_interval_ns) const {
  if (guard_interval_ns == 800) return 4.0;
  if (guard_interval_ns == 400) return 3.6;
  throw std::invalid_argument("unsupported guard interval: " +
                              std::to_string(guard_interval_ns) + " ns");
}

std::vector<double> Numerology::used_subcarrier_freqs_hz() const {
  std::vector<double> freqs;
  freqs.reserve(used_indices.size());
  for (int idx : used_indices) {
    freqs.push_back(carrier_freq_hz + idx * subcarrier_spacing_hz);
  }
  return freqs;
}

Numerology make_numerology(int bandwidth_mhz, double carrier_freq_hz) {
  Numerology num;
  num.bandwidth_mhz = bandwidth_mhz;
  num.carrier_freq_hz = carrier_freq_hz;
  num.subcarrier_spacing_hz = 312.5e3;

  int edge = 0;
  int inner = 1;  // first occupied index away from DC
  if (bandwidth_mhz == 20) {
    num.fft_size = 64;
    num.n_sd = 52;
    num.n_sp = 4;
    num.pilot_indices = {-21, -7, 7, 21};
    edge = 28;
  } else if (bandwidth_mhz == 40) {
    num.fft_size = 128;
    num.n_sd = 108;
    num.n_sp = 6;
    num.pilot_indices = {-53, -25, -11, 11, 25, 53};
    edge = 58;
    inner = 2;  // DC and +-1 are null in the 40 MHz plan
  } else {
    throw std::invalid_argument("unsupported bandwidth: " + std::to_string(bandwidth_mhz) +
                                " MHz");
  }

  for (int idx = -edge; idx <= edge; ++idx) {
    if (std::abs(idx) < inner) continue;
    num.used_indices.push_back(idx);
    if (std::find(num.pilot_indices.begin(), num.pilot_indices.end(), idx) ==
        num.pilot_indices.end()) {
      num.data_indices.push_back(idx);
    }
  }

  num.data_used_pos.resize(num.data_indices.size());
  num.pilot_used_pos.resize(num.pilot_indices.size());
  for (size_t i = 0; i < num.data_indices.size(); ++i) {
    num.data_used_pos[i] = static_cast<int>(
        std::find(num.used_indices.begin(), num.used_indices.end(), num.data_indices[i]) -
        num.used_indices.begin());
  }
  for (size_t i = 0; i < num.pilot_indices.size(); ++i) {
    num.pilot_used_pos[i] = static_cast<int>(
        std::find(num.used_indices.begin(), num.used_indices.end(), num.pilot_indices[i]) -
        num.used_indices.begin());
  }
  return num;
}

McsEntry mcs_lookup(int index, int bandwidth_mhz) {
  if (index < 0 || index > 15) {
    throw std::invalid_argument("MCS index out of range: " + std::to_string(index));
  }
  const Numerology num = make_numerology(bandwidth_mhz);

  struct Base {
    Modulation mod;
    CodeRate rate;
  };
  static const Base kBase[8] = {
      {Modulation::bpsk, {1, 2}},  {Modulation::qpsk, {1, 2}},  {Modulation::qpsk, {3, 4}},
      {Modulation::qam16, {1, 2}}, {Modulation::qam16, {3, 4}}, {Modulation::qam64, {2, 3}},
      {Modulation::qam64, {3, 4}}, {Modulation::qam64, {5, 6}},
  };

  McsEntry e;
  e.index = index;
  e.n_ss = index < 8 ? 1 : 2;
  e.modulation = kBase[index % 8].mod;
  e.code_rate = kBase[index % 8].rate;
  e.n_bpscs = bits_per_symbol(e.modulation);
  e.n_cbps = num.n_sd * e.n_bpscs * e.n_ss;
  e.n_dbps = e.n_cbps * e.code_rate.num / e.code_rate.den;
  return e;
}

double data_rate_mbps(const McsEntry& entry, int bandwidth_mhz, int guard_interval_ns) {
  const Numerology num = make_numerology(bandwidth_mhz);
  const double t_us = num.symbol_duration_us(guard_interval_ns);
  // n_dbps bits per t_us microseconds, reported to 0.1 Mbit/s.
  return std::llround(entry.n_dbps * 10.0 / t_us) / 10.0;
}

int num_symbols(const McsEntry& entry, int psdu_bytes) {
  if (psdu_bytes < 1) {
    throw std::invalid_argument("psdu_bytes must be >= 1");
  }
  const int64_t bits = 16 + 8LL * psdu_bytes + 6;
  return static_cast<int>((bits + entry.n_dbps - 1) / entry.n_dbps);
}

}  // namespace vivolink
