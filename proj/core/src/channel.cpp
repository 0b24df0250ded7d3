/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vivolink/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "vivolink/errors.hpp"

namespace vivolink {

ScenarioDescriptor scenario_lookup(int id) {
  static const ScenarioDescriptor kTable[3] = {
      {1, 130.0, 50.0, -50.0, 130.0, "internal antennas 140 mm either side of the origin along Y"},
      {2, 100.0, 50.0, -50.0, 100.0, "internal antennas 140 mm either side of the origin along Y"},
      {3, 70.0, 30.0, -30.0, 70.0, "internal antennas 140 mm either side of the origin along Y"},
  };
  if (id < 1 || id > 3) {
    throw std::invalid_argument("scenario id must be 1..3, got " + std::to_string(id));
  }
  return kTable[id - 1];
}

ChannelResponse to_channel_response(const SParamNetwork& net, const PortMap& ports,
                                    const std::vector<double>& subcarrier_freqs_hz) {
  if (ports.tx_ports.empty() || ports.rx_ports.empty()) {
    throw std::invalid_argument("port map needs at least one TX and one RX port");
  }
  for (int p : ports.tx_ports) {
    if (p < 1 || p > net.n_ports) {
      throw std::invalid_argument("TX port " + std::to_string(p) + " outside 1.." +
                                  std::to_string(net.n_ports));
    }
  }
  for (int p : ports.rx_ports) {
    if (p < 1 || p > net.n_ports) {
      throw std::invalid_argument("RX port " + std::to_string(p) + " outside 1.." +
                                  std::to_string(net.n_ports));
    }
  }
  if (net.freqs_hz.empty()) throw std::invalid_argument("empty network");

  ChannelResponse resp;
  resp.freqs_hz = subcarrier_freqs_hz;
  resp.n_rx = static_cast<int>(ports.rx_ports.size());
  resp.n_tx = static_cast<int>(ports.tx_ports.size());
  resp.h.resize(subcarrier_freqs_hz.size() * resp.n_rx * resp.n_tx);
  resp.provenance = "touchstone:" + std::to_string(net.n_ports) + "-port";

  for (size_t k = 0; k < subcarrier_freqs_hz.size(); ++k) {
    const double f = subcarrier_freqs_hz[k];
    if (f < net.freqs_hz.front() || f > net.freqs_hz.back()) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "subcarrier frequency %.6f GHz outside the sampled band %.6f-%.6f GHz",
                    f / 1e9, net.freqs_hz.front() / 1e9, net.freqs_hz.back() / 1e9);
      throw RangeError(msg);
    }
    const auto it = std::lower_bound(net.freqs_hz.begin(), net.freqs_hz.end(), f);
    const size_t hi = static_cast<size_t>(it - net.freqs_hz.begin());

    for (int r = 0; r < resp.n_rx; ++r) {
      for (int t = 0; t < resp.n_tx; ++t) {
        std::complex<double> v;
        if (net.freqs_hz[hi] == f) {
          v = net.at(hi, ports.rx_ports[r], ports.tx_ports[t]);
        } else {
          const size_t lo = hi - 1;
          const double w = (f - net.freqs_hz[lo]) / (net.freqs_hz[hi] - net.freqs_hz[lo]);
          const auto a = net.at(lo, ports.rx_ports[r], ports.tx_ports[t]);
          const auto b = net.at(hi, ports.rx_ports[r], ports.tx_ports[t]);
          v = {a.real() + w * (b.real() - a.real()), a.imag() + w * (b.imag() - a.imag())};
        }
        resp.at(static_cast<int>(k), r, t) = v;
      }
    }
  }
  return resp;
}

double synthetic_mean_gain(const SyntheticChannelParams& p) {
  const double gain_db =
      p.ref_gain_db - 10.0 * p.path_loss_exponent * std::log10(p.distance_mm / p.ref_distance_mm);
  return std::pow(10.0, gain_db / 10.0);
}

namespace {

void validate_synthetic(const SyntheticChannelParams& p) {
  if (p.path_loss_exponent <= 0.0) throw std::invalid_argument("path_loss_exponent must be > 0");
  if (p.corr_rho < 0.0 || p.corr_rho >= 1.0) throw std::invalid_argument("corr_rho must be in [0, 1)");
  if (p.rician_k < 0.0) throw std::invalid_argument("rician_k must be >= 0");
  if (p.n_taps < 1) throw std::invalid_argument("n_taps must be >= 1");
  if (p.distance_mm <= 0.0 || p.ref_distance_mm <= 0.0) {
    throw std::invalid_argument("distances must be > 0");
  }
  if (p.delay_spread_ns < 0.0) throw std::invalid_argument("delay_spread_ns must be >= 0");
  if (p.n_tx < 1 || p.n_rx < 1) throw std::invalid_argument("antenna counts must be >= 1");
}

}  // namespace

ChannelResponse synthetic_channel(const SyntheticChannelParams& params,
                                  const Numerology& numerology, uint64_t seed) {
  validate_synthetic(params);
  const int n_tx = params.n_tx;
  const int n_rx = params.n_rx;
  const int n_ant = n_tx * n_rx;

  // Exponential power delay profile at the sample spacing of the bandwidth.
  const double tap_spacing_s = 1.0 / (numerology.bandwidth_mhz * 1e6);
  std::vector<double> tap_power(params.n_taps, 0.0);
  if (params.delay_spread_ns <= 0.0 || params.n_taps == 1) {
    tap_power[0] = 1.0;
  } else {
    double sum = 0.0;
    for (int l = 0; l < params.n_taps; ++l) {
      tap_power[l] = std::exp(-static_cast<double>(l) * tap_spacing_s /
                              (params.delay_spread_ns * 1e-9));
      sum += tap_power[l];
    }
    for (double& p : tap_power) p /= sum;
  }

  // Kronecker coloring: lower Cholesky factor of [[1, rho], [rho, 1]].
  const double rho = params.corr_rho;
  const double chol_off = rho;
  const double chol_diag = std::sqrt(1.0 - rho * rho);

  const auto color = [&](std::vector<cplx>& w, int rows, int cols) {
    // left-multiply by L_rx, right-multiply by L_tx^T, both 2x2 at most
    if (rows == 2) {
      for (int c = 0; c < cols; ++c) {
        const cplx a = w[c];
        const cplx b = w[cols + c];
        w[cols + c] = chol_off * a + chol_diag * b;
      }
    }
    if (cols == 2) {
      for (int r = 0; r < rows; ++r) {
        const cplx a = w[static_cast<size_t>(r) * cols];
        const cplx b = w[static_cast<size_t>(r) * cols + 1];
        w[static_cast<size_t>(r) * cols + 1] = chol_off * a + chol_diag * b;
      }
    }
  };

  CounterRng rng(seed, RngStream::channel);
  uint64_t ctr = 0;
  std::vector<std::vector<cplx>> taps(params.n_taps);
  for (int l = 0; l < params.n_taps; ++l) {
    taps[l].resize(n_ant);
    for (int e = 0; e < n_ant; ++e) taps[l][e] = rng.complex_gaussian(ctr++, 1.0);
    color(taps[l], n_rx, n_tx);
    for (auto& v : taps[l]) v *= std::sqrt(tap_power[l]);
  }

  const double gain = synthetic_mean_gain(params);
  const double k = params.rician_k;
  const double los_amp = std::sqrt(gain * k / (k + 1.0));
  const double nlos_amp = std::sqrt(gain / (k + 1.0));

  ChannelResponse resp;
  resp.freqs_hz = numerology.used_subcarrier_freqs_hz();
  resp.n_rx = n_rx;
  resp.n_tx = n_tx;
  resp.h.resize(resp.freqs_hz.size() * n_ant);
  {
    char tag[128];
    std::snprintf(tag, sizeof tag, "synthetic:seed=%llu,d=%.1fmm",
                  static_cast<unsigned long long>(seed), params.distance_mm);
    resp.provenance = tag;
  }

  for (size_t kk = 0; kk < resp.freqs_hz.size(); ++kk) {
    const double f_off = resp.freqs_hz[kk] - numerology.carrier_freq_hz;
    for (int e = 0; e < n_ant; ++e) {
      cplx sum = 0.0;
      for (int l = 0; l < params.n_taps; ++l) {
        const double phase = -2.0 * M_PI * f_off * (l * tap_spacing_s);
        sum += taps[l][e] * std::polar(1.0, phase);
      }
      // rank-1 all-ones line-of-sight term plus the scattered part
      resp.h[kk * n_ant + e] = los_amp + nlos_amp * sum;
    }
  }
  return resp;
}

ChannelResponse identity_channel(int n_streams, const Numerology& numerology) {
  if (n_streams < 1) throw std::invalid_argument("n_streams must be >= 1");
  ChannelResponse resp;
  resp.freqs_hz = numerology.used_subcarrier_freqs_hz();
  resp.n_rx = n_streams;
  resp.n_tx = n_streams;
  resp.h.assign(resp.freqs_hz.size() * n_streams * n_streams, 0.0);
  for (size_t k = 0; k < resp.freqs_hz.size(); ++k) {
    for (int i = 0; i < n_streams; ++i) resp.at(static_cast<int>(k), i, i) = 1.0;
  }
  resp.provenance = "identity";
  return resp;
}

ApplyResult apply_channel(const FrequencyGrid& grid, const ChannelResponse& chan,
                          const LinkBudget& budget, const CounterRng& noise) {
  const Numerology& num = grid.numerology;
  if (grid.n_ss != chan.n_tx) {
    throw std::invalid_argument("apply_channel: grid has " + std::to_string(grid.n_ss) +
                                " streams but channel expects " + std::to_string(chan.n_tx) +
                                " transmit ports");
  }
  if (chan.n_subcarriers() != static_cast<size_t>(num.n_used())) {
    throw std::invalid_argument("apply_channel: channel covers " +
                                std::to_string(chan.n_subcarriers()) +
                                " subcarriers, grid uses " + std::to_string(num.n_used()));
  }
  if (budget.tx_power_w <= 0.0) throw std::invalid_argument("tx_power_w must be > 0");
  if (budget.noise_power_w < 0.0) throw std::invalid_argument("noise_power_w must be >= 0");

  const int n_used = num.n_used();
  const int n_tx = chan.n_tx;
  const int n_rx = chan.n_rx;
  const double p_sc = budget.tx_power_w / n_used;
  const double stream_scale =
      budget.power_mode == LinkBudget::PowerMode::total ? std::sqrt(p_sc / n_tx)
                                                        : std::sqrt(p_sc);
  const double noise_var = budget.noise_power_w / n_used;

  ApplyResult res;
  res.noise_var = noise_var;
  res.effective = chan;
  for (auto& v : res.effective.h) v *= stream_scale;
  res.effective.provenance = chan.provenance + "+txscale";

  FrequencyGrid& rx = res.received;
  rx.numerology = num;
  rx.n_sym = grid.n_sym;
  rx.n_ss = n_rx;
  rx.data.assign(static_cast<size_t>(grid.n_sym) * n_rx * num.n_sd, 0.0);
  rx.pilots.assign(static_cast<size_t>(grid.n_sym) * n_rx * num.n_sp, 0.0);

  const auto mix = [&](int sym, int used_pos, auto get_tx, cplx* out) {
    for (int r = 0; r < n_rx; ++r) {
      cplx acc = 0.0;
      for (int t = 0; t < n_tx; ++t) acc += res.effective.at(used_pos, r, t) * get_tx(t);
      if (noise_var > 0.0) {
        const uint64_t c = (static_cast<uint64_t>(sym) * n_used + used_pos) * n_rx + r;
        acc += noise.complex_gaussian(c, noise_var);
      }
      out[r] = acc;
    }
  };

  std::vector<cplx> y(n_rx);
  for (int sym = 0; sym < grid.n_sym; ++sym) {
    for (int k = 0; k < num.n_sd; ++k) {
      mix(sym, num.data_used_pos[k], [&](int t) { return grid.data_at(sym, t, k); }, y.data());
      for (int r = 0; r < n_rx; ++r) rx.data_at(sym, r, k) = y[r];
    }
    for (int m = 0; m < num.n_sp; ++m) {
      mix(sym, num.pilot_used_pos[m], [&](int t) { return grid.pilot_at(sym, t, m); }, y.data());
      for (int r = 0; r < n_rx; ++r) rx.pilot_at(sym, r, m) = y[r];
    }
  }
  return res;
}

LinkBudgetReport link_budget_report(const ChannelResponse& chan, const LinkBudget& budget) {
  const int n_sc = static_cast<int>(chan.n_subcarriers());
  const double p_sc = budget.tx_power_w / n_sc;
  const double per_stream =
      budget.power_mode == LinkBudget::PowerMode::total ? p_sc / chan.n_tx : p_sc;
  const double noise_sc = budget.noise_power_w / n_sc;

  LinkBudgetReport rep;
  rep.per_subcarrier_rx_w.resize(n_sc);
  rep.per_subcarrier_snr_db.resize(n_sc);

  double total = 0.0;
  for (int k = 0; k < n_sc; ++k) {
    double frob = 0.0;
    for (int r = 0; r < chan.n_rx; ++r) {
      for (int t = 0; t < chan.n_tx; ++t) frob += std::norm(chan.at(k, r, t));
    }
    const double p_rx = per_stream * frob;
    rep.per_subcarrier_rx_w[k] = p_rx;
    rep.per_subcarrier_snr_db[k] =
        p_rx > 0.0 && noise_sc > 0.0 ? 10.0 * std::log10(p_rx / noise_sc)
                                     : (p_rx > 0.0 ? std::numeric_limits<double>::infinity()
                                                   : -std::numeric_limits<double>::infinity());
    total += p_rx;
  }
  rep.band_rx_dbm = total > 0.0 ? watts_to_dbm(total) : -std::numeric_limits<double>::infinity();
  rep.band_snr_db = total > 0.0 && budget.noise_power_w > 0.0
                        ? 10.0 * std::log10(total / budget.noise_power_w)
                        : (total > 0.0 ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity());
  return rep;
}

}  // namespace vivolink
