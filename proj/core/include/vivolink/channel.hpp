/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef VIVOLINK_CHANNEL_HPP
#define VIVOLINK_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include "vivolink/channel_response.hpp"
#include "vivolink/modem.hpp"
#include "vivolink/rng.hpp"
#include "vivolink/touchstone.hpp"

namespace vivolink {

/// Which S-matrix entries feed the MIMO channel matrix. Ports are 1-based;
/// H[r][t] = S(rx_ports[r], tx_ports[t]). Default for 4-port exports:
/// TX = ports 1,2 and RX = ports 3,4, i.e. H = [[S31,S32],[S41,S42]].
struct PortMap {
  std::vector<int> tx_ports{1, 2};
  std::vector<int> rx_ports{3, 4};

  static PortMap mimo_default() { return {}; }
  static PortMap siso_default() { return {{1}, {2}}; }
};

/// Interpolate the transmission terms of `net` onto the given subcarrier
/// frequencies (real and imaginary parts independently, linear). Every
/// frequency must lie inside the sampled band; violations raise RangeError
/// naming the offending frequency.
ChannelResponse to_channel_response(const SParamNetwork& net, const PortMap& ports,
                                    const std::vector<double>& subcarrier_freqs_hz);

/// Parametric in-body channel: log-distance mean gain, exponential power
/// delay profile for frequency selectivity, Kronecker spatial correlation,
/// and a flat rank-1 Rician line-of-sight component.
struct SyntheticChannelParams {
  double ref_gain_db = -62.0;    // mean power gain at ref_distance_mm
  double ref_distance_mm = 70.0;
  double path_loss_exponent = 4.2;
  double distance_mm = 100.0;
  double rician_k = 1.0;         // LOS-to-scattered power ratio (linear)
  double corr_rho = 0.35;        // TX- and RX-side correlation coefficient
  int n_taps = 5;
  double delay_spread_ns = 8.0;  // RMS delay spread of the tap profile
  int n_tx = 2;
  int n_rx = 2;
};

/// Mean linear power gain G(d) = ref_gain - 10*n*log10(d/d0), as a ratio.
double synthetic_mean_gain(const SyntheticChannelParams& p);

/// Draw one channel realization on the numerology's used subcarriers.
/// Deterministic in (params, numerology, seed). Throws std::invalid_argument
/// on out-of-range parameters.
ChannelResponse synthetic_channel(const SyntheticChannelParams& params,
                                  const Numerology& numerology, uint64_t seed);

/// H[k] = I on every used subcarrier (back-to-back testing).
ChannelResponse identity_channel(int n_streams, const Numerology& numerology);

struct ApplyResult {
  FrequencyGrid received;
  ChannelResponse effective;  // per-subcarrier sqrt(P_sc/n_ss) * H the RX sees
  double noise_var = 0.0;     // per receive antenna, per subcarrier
};

/// Transmit `grid` through `chan`: per subcarrier y = sqrt(P_sc/n_ss) H x + n,
/// where P_sc splits the budget's transmit power uniformly over the used
/// subcarriers and n is circular complex Gaussian with per-subcarrier variance
/// noise_power/n_used per receive antenna. `noise` must be a dedicated
/// counter stream; draws are indexed by (symbol, subcarrier, antenna) so the
/// realization is independent of evaluation order.
ApplyResult apply_channel(const FrequencyGrid& grid, const ChannelResponse& chan,
                          const LinkBudget& budget, const CounterRng& noise);

struct LinkBudgetReport {
  std::vector<double> per_subcarrier_rx_w;   // summed over receive antennas
  std::vector<double> per_subcarrier_snr_db;
  double band_rx_dbm = 0.0;
  double band_snr_db = 0.0;  // -inf when the channel is identically zero
};

/// Receive power and SNR diagnostics for a channel under a budget.
LinkBudgetReport link_budget_report(const ChannelResponse& chan, const LinkBudget& budget);

}  // namespace vivolink

#endif  // VIVOLINK_CHANNEL_HPP
