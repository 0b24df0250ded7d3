/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef VIVOLINK_CHANNEL_RESPONSE_HPP
#define VIVOLINK_CHANNEL_RESPONSE_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace vivolink {

/// Per-subcarrier MIMO frequency response. One n_rx x n_tx matrix per used
/// (data or pilot) subcarrier, stored row-major per subcarrier in ascending
/// subcarrier-frequency order.
struct ChannelResponse {
  std::vector<double> freqs_hz;  // one entry per subcarrier, ascending
  int n_rx = 1;
  int n_tx = 1;
  std::vector<std::complex<double>> h;  // freqs.size() * n_rx * n_tx
  std::string provenance;               // file id or synthetic seed+params

  std::complex<double>& at(int sc, int rx, int tx) {
    return h[(static_cast<size_t>(sc) * n_rx + rx) * n_tx + tx];
  }
  const std::complex<double>& at(int sc, int rx, int tx) const {
    return h[(static_cast<size_t>(sc) * n_rx + rx) * n_tx + tx];
  }
  size_t n_subcarriers() const { return freqs_hz.size(); }
};

/// Transmit/noise powers in watts. Defaults are the SAR-safe 0.412 mW
/// transmit power and -101 dBm thermal noise over the signal band.
/// noise_power_w == 0 disables noise injection (test mode).
struct LinkBudget {
  enum class PowerMode {
    total,       // tx_power_w is total radiated power, split across streams
    per_antenna  // tx_power_w is radiated per transmit antenna
  };

  double tx_power_w = 0.412e-3;
  double noise_power_w = 7.943282347242815e-14;  // 10^(-101/10) mW
  double bandwidth_mhz = 20.0;
  PowerMode power_mode = PowerMode::total;
};

inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts * 1e3); }

/// Antenna-placement metadata for the three bundled measurement scenarios.
/// Coordinates are mm offsets of the external antennas from the origin; the
/// two internal antennas sit 140 mm either side of the origin along Y.
struct ScenarioDescriptor {
  int id;                // 1..3
  double mimo_x_mm;      // shared X of both external antennas
  double mimo_y1_mm;     // antenna 1 Y
  double mimo_y2_mm;     // antenna 2 Y
  double siso_x_mm;      // single external antenna X
  const char* placement; // internal antenna note
};

/// The bundled scenario table (ids 1..3). Throws std::invalid_argument for
/// any other id.
ScenarioDescriptor scenario_lookup(int id);

}  // namespace vivolink

#endif  // VIVOLINK_CHANNEL_RESPONSE_HPP
