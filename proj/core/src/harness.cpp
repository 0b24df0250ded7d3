/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vivolink/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>
#include <tuple>

#include "vivolink/coding.hpp"

namespace vivolink {

namespace {

struct FrameTally {
  int64_t bits = 0;
  int64_t bit_errors = 0;
  int64_t frame_errors = 0;
};

// Everything that is constant across the frames of one run.
struct RunContext {
  SimConfig cfg;
  Numerology numerology;
  McsEntry mcs;
  int n_sym = 0;
  int data_len = 0;  // scrambled/encoded bits per frame (incl. service/tail/pad)
  ChannelRegen regen = ChannelRegen::fixed;
  ChannelResponse fixed_channel;  // valid when regen == fixed
  SParamNetwork touchstone;       // loaded once when the source is a file
  bool have_touchstone = false;
};

std::string substitute_distance(const std::string& pattern, double distance_mm) {
  const std::string key = "{distance_mm}";
  const auto pos = pattern.find(key);
  if (pos == std::string::npos) return pattern;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", distance_mm);
  std::string out = pattern;
  out.replace(pos, key.size(), buf);
  return out;
}

ChannelResponse resolve_channel(const RunContext& ctx, uint64_t channel_seed) {
  const SimConfig& cfg = ctx.cfg;
  const int n_ss = ctx.mcs.n_ss;
  switch (cfg.channel.kind) {
    case ChannelKind::identity:
      return identity_channel(n_ss, ctx.numerology);
    case ChannelKind::synthetic: {
      SyntheticChannelParams p = cfg.channel.synthetic;
      p.n_tx = n_ss;
      if (n_ss == 1) p.n_rx = 1;
      return synthetic_channel(p, ctx.numerology, channel_seed);
    }
    case ChannelKind::touchstone: {
      PortMap ports = n_ss == 1 ? cfg.channel.siso_ports : cfg.channel.mimo_ports;
      if (ports.tx_ports.empty()) {
        // auto map: 2-port file is a plain through link, larger exports
        // follow the TX = low ports / RX = high ports convention
        ports = n_ss == 1 ? (ctx.touchstone.n_ports == 2 ? PortMap{{1}, {2}} : PortMap{{1}, {3}})
                          : PortMap::mimo_default();
      }
      return to_channel_response(ctx.touchstone, ports,
                                 ctx.numerology.used_subcarrier_freqs_hz());
    }
  }
  throw std::logic_error("unreachable channel kind");
}

BitVec frame_payload(const SimConfig& cfg, int64_t frame) {
  CounterRng rng(cfg.seed, RngStream::payload, static_cast<uint64_t>(frame));
  const size_t n_bits = static_cast<size_t>(cfg.psdu_bytes) * 8;
  BitVec bits(n_bits);
  for (size_t i = 0; i < n_bits; ++i) {
    bits[i] = static_cast<uint8_t>(rng.bits(i / 64) >> (i % 64) & 1u);
  }
  return bits;
}

FrameTally simulate_coded_frame(const RunContext& ctx, int64_t frame,
                                const ChannelResponse& chan) {
  const SimConfig& cfg = ctx.cfg;
  const McsEntry& mcs = ctx.mcs;
  const Numerology& num = ctx.numerology;
  const size_t payload_bits = static_cast<size_t>(cfg.psdu_bytes) * 8;

  const BitVec payload = frame_payload(cfg, frame);
  const uint8_t scr_seed = static_cast<uint8_t>(
      CounterRng(cfg.seed, RngStream::scrambler, static_cast<uint64_t>(frame)).bits(0) % 127 + 1);

  // service + payload + tail + pad, scrambled, tail re-zeroed for termination
  BitVec data(ctx.data_len, 0);
  std::copy(payload.begin(), payload.end(), data.begin() + 16);
  BitVec scrambled = scramble(data, scr_seed);
  for (size_t i = 16 + payload_bits; i < 16 + payload_bits + 6; ++i) scrambled[i] = 0;

  const BitVec punctured = puncture(bcc_encode(scrambled), mcs.code_rate);
  const std::vector<BitVec> streams = stream_parse(punctured, mcs.n_ss, mcs.n_bpscs);

  const size_t n_cbpss = static_cast<size_t>(num.n_sd) * mcs.n_bpscs;
  std::vector<std::vector<cplx>> tx_symbols(mcs.n_ss);
  BitVec chunk(n_cbpss);
  for (int ss = 0; ss < mcs.n_ss; ++ss) {
    tx_symbols[ss].reserve(static_cast<size_t>(num.n_sd) * ctx.n_sym);
    for (int t = 0; t < ctx.n_sym; ++t) {
      std::copy_n(streams[ss].begin() + static_cast<size_t>(t) * n_cbpss, n_cbpss, chunk.begin());
      const BitVec inter = interleave(chunk, mcs.n_bpscs, ss, num);
      const auto symbols = map_symbols(inter, mcs.modulation);
      tx_symbols[ss].insert(tx_symbols[ss].end(), symbols.begin(), symbols.end());
    }
  }

  const FrequencyGrid grid = assemble_grid(tx_symbols, num, ctx.n_sym);
  const CounterRng noise(cfg.seed, RngStream::noise, static_cast<uint64_t>(frame));
  const ApplyResult link = apply_channel(grid, chan, cfg.budget, noise);
  const EqualizedGrid eq = equalize(link.received, link.effective, link.noise_var, cfg.detector);

  std::vector<LlrVec> stream_llrs(mcs.n_ss);
  LlrVec symbol_llrs;
  symbol_llrs.reserve(n_cbpss);
  for (int ss = 0; ss < mcs.n_ss; ++ss) {
    stream_llrs[ss].reserve(static_cast<size_t>(ctx.n_sym) * n_cbpss);
    for (int t = 0; t < ctx.n_sym; ++t) {
      symbol_llrs.clear();
      for (int k = 0; k < num.n_sd; ++k) {
        demap_llr(eq.est_at(t, ss, k), eq.snr_at(t, ss, k), mcs.modulation, symbol_llrs);
      }
      const LlrVec deinter = deinterleave(symbol_llrs, mcs.n_bpscs, ss, num);
      stream_llrs[ss].insert(stream_llrs[ss].end(), deinter.begin(), deinter.end());
    }
  }

  const LlrVec merged = stream_deparse(stream_llrs, mcs.n_bpscs);
  const LlrVec soft = depuncture(merged, mcs.code_rate);
  const BitVec decoded = viterbi_decode(soft, /*terminated=*/true);
  const BitVec descrambled = descramble(decoded, scr_seed);

  FrameTally tally;
  tally.bits = static_cast<int64_t>(payload_bits);
  for (size_t i = 0; i < payload_bits; ++i) {
    tally.bit_errors += descrambled[16 + i] != payload[i];
  }
  tally.frame_errors = tally.bit_errors > 0 ? 1 : 0;
  return tally;
}

FrameTally simulate_uncoded_frame(const RunContext& ctx, int64_t frame,
                                  const ChannelResponse& chan) {
  const SimConfig& cfg = ctx.cfg;
  const Numerology& num = ctx.numerology;
  const size_t payload_bits = static_cast<size_t>(cfg.psdu_bytes) * 8;

  const BitVec payload = frame_payload(cfg, frame);
  BitVec padded = payload;
  padded.resize(static_cast<size_t>(ctx.n_sym) * num.n_sd, 0);

  std::vector<std::vector<cplx>> tx_symbols(1);
  tx_symbols[0] = map_symbols(padded, Modulation::bpsk);

  const FrequencyGrid grid = assemble_grid(tx_symbols, num, ctx.n_sym);
  const CounterRng noise(cfg.seed, RngStream::noise, static_cast<uint64_t>(frame));
  const ApplyResult link = apply_channel(grid, chan, cfg.budget, noise);
  const EqualizedGrid eq = equalize(link.received, link.effective, link.noise_var, cfg.detector);

  FrameTally tally;
  tally.bits = static_cast<int64_t>(payload_bits);
  for (size_t i = 0; i < payload_bits; ++i) {
    const int t = static_cast<int>(i / num.n_sd);
    const int k = static_cast<int>(i % num.n_sd);
    const uint8_t bit = eq.est_at(t, 0, k).real() < 0.0 ? 0 : 1;  // BPSK: 0 -> -1
    tally.bit_errors += bit != payload[i];
  }
  tally.frame_errors = tally.bit_errors > 0 ? 1 : 0;
  return tally;
}

FrameTally simulate_frame(const RunContext& ctx, int64_t frame) {
  ChannelResponse per_frame;
  const ChannelResponse* chan = &ctx.fixed_channel;
  if (ctx.regen == ChannelRegen::per_frame) {
    const uint64_t chan_seed =
        CounterRng(ctx.cfg.seed, RngStream::channel, static_cast<uint64_t>(frame)).bits(0);
    per_frame = resolve_channel(ctx, chan_seed);
    chan = &per_frame;
  }
  try {
    return ctx.cfg.uncoded_bpsk ? simulate_uncoded_frame(ctx, frame, *chan)
                                : simulate_coded_frame(ctx, frame, *chan);
  } catch (const std::exception& e) {
    throw std::runtime_error("frame " + std::to_string(frame) + ": " + e.what());
  }
}

}  // namespace

const char* link_mode_name(LinkMode m) { return m == LinkMode::siso ? "siso" : "mimo"; }

LinkMode mode_for_mcs(int mcs_index) {
  return mcs_index < 8 ? LinkMode::siso : LinkMode::mimo;
}

ChannelRegen SimConfig::effective_regen() const {
  if (regen) return *regen;
  return channel.kind == ChannelKind::synthetic ? ChannelRegen::per_frame : ChannelRegen::fixed;
}

void validate_config(const SimConfig& config) {
  mcs_lookup(config.mcs, config.bandwidth_mhz);  // throws on bad mcs/bandwidth
  make_numerology(config.bandwidth_mhz).symbol_duration_us(config.guard_interval_ns);
  if (config.psdu_bytes < 1) throw std::invalid_argument("psdu_bytes must be >= 1");
  if (config.n_frames < 1) throw std::invalid_argument("n_frames must be >= 1");
  if (config.frame_offset < 0) throw std::invalid_argument("frame_offset must be >= 0");
  if (config.workers < 0) throw std::invalid_argument("workers must be >= 0");
  if (config.budget.tx_power_w <= 0.0) throw std::invalid_argument("tx power must be > 0");
  if (config.budget.noise_power_w < 0.0) throw std::invalid_argument("noise power must be >= 0");
  if (config.channel.kind == ChannelKind::touchstone && config.channel.touchstone_path.empty()) {
    throw std::invalid_argument("touchstone channel needs a file path");
  }
  if (config.uncoded_bpsk && mcs_lookup(config.mcs, config.bandwidth_mhz).n_ss != 1) {
    throw std::invalid_argument("uncoded BPSK bypass runs single-stream only (MCS 0-7)");
  }
  if (config.scenario_id) scenario_lookup(*config.scenario_id);
}

SimResult run_link(const SimConfig& config) {
  validate_config(config);
  const auto t0 = std::chrono::steady_clock::now();

  RunContext ctx;
  ctx.cfg = config;
  ctx.numerology = make_numerology(config.bandwidth_mhz);
  ctx.mcs = mcs_lookup(config.mcs, config.bandwidth_mhz);
  ctx.regen = config.effective_regen();
  if (config.uncoded_bpsk) {
    ctx.n_sym = static_cast<int>((static_cast<int64_t>(config.psdu_bytes) * 8 +
                                  ctx.numerology.n_sd - 1) /
                                 ctx.numerology.n_sd);
  } else {
    ctx.n_sym = num_symbols(ctx.mcs, config.psdu_bytes);
    ctx.data_len = ctx.n_sym * ctx.mcs.n_dbps;
  }

  if (config.channel.kind == ChannelKind::touchstone) {
    const std::string path =
        substitute_distance(config.channel.touchstone_path, config.channel.synthetic.distance_mm);
    int ports = ports_from_filename(path);
    if (ports == 0) ports = ctx.mcs.n_ss == 1 ? 2 : 4;
    ctx.touchstone = load_touchstone(path, ports);
    ctx.have_touchstone = true;
  }
  if (ctx.regen == ChannelRegen::fixed) {
    ctx.fixed_channel = resolve_channel(ctx, config.seed);
  }

  const int64_t first = config.frame_offset;
  const int64_t last = config.frame_offset + config.n_frames;
  int n_workers = config.workers == 0
                      ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))
                      : config.workers;
  n_workers = static_cast<int>(std::min<int64_t>(n_workers, config.n_frames));

  std::vector<FrameTally> tallies(n_workers);
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto work = [&](int w) {
    FrameTally local;
    try {
      for (int64_t f = first + w; f < last; f += n_workers) {
        const FrameTally ft = simulate_frame(ctx, f);
        local.bits += ft.bits;
        local.bit_errors += ft.bit_errors;
        local.frame_errors += ft.frame_errors;
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
    tallies[w] = local;
  };

  if (n_workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  SimResult res;
  res.config = config;
  res.frames_sent = config.n_frames;
  for (const auto& t : tallies) {
    res.bits_sent += t.bits;
    res.bit_errors += t.bit_errors;
    res.frame_errors += t.frame_errors;
  }
  res.ber = static_cast<double>(res.bit_errors) / static_cast<double>(res.bits_sent);
  res.fer = static_cast<double>(res.frame_errors) / static_cast<double>(res.frames_sent);
  std::tie(res.ber_ci_low, res.ber_ci_high) = ber_confidence(res.bit_errors, res.bits_sent);
  res.rate_mbps = data_rate_mbps(ctx.mcs, config.bandwidth_mhz, config.guard_interval_ns);
  res.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::vector<SimResult> sweep_mcs(const SimConfig& base, const std::vector<int>& mcs_list,
                                 LinkMode mode) {
  for (int m : mcs_list) {
    if (m < 0 || m > 15) throw std::invalid_argument("MCS index out of range: " + std::to_string(m));
    if (mode_for_mcs(m) != mode) {
      throw std::invalid_argument(std::string("MCS ") + std::to_string(m) + " carries " +
                                  (m < 8 ? "1 stream" : "2 streams") + ", not valid in " +
                                  link_mode_name(mode) + " mode");
    }
  }
  std::vector<SimResult> rows;
  rows.reserve(mcs_list.size());
  for (int m : mcs_list) {
    SimConfig cfg = base;
    cfg.mcs = m;  // same seed on every row: paired channel/noise realizations
    rows.push_back(run_link(cfg));
  }
  return rows;
}

std::vector<SimResult> sweep_distance(const SimConfig& base,
                                      const std::vector<double>& distances_mm,
                                      const std::vector<int>& mcs_list) {
  if (base.channel.kind == ChannelKind::identity) {
    throw std::invalid_argument("distance sweeps need a synthetic or touchstone channel source");
  }
  if (base.channel.kind == ChannelKind::touchstone &&
      base.channel.touchstone_path.find("{distance_mm}") == std::string::npos) {
    throw std::invalid_argument(
        "touchstone distance sweeps need a '{distance_mm}' placeholder in the path");
  }

  std::vector<SimResult> rows;
  rows.reserve(distances_mm.size() * mcs_list.size());
  for (double d : distances_mm) {
    for (int m : mcs_list) {
      SimConfig cfg = base;
      cfg.mcs = m;
      cfg.channel.synthetic.distance_mm = d;
      if (cfg.channel.kind == ChannelKind::touchstone) {
        const std::string path = substitute_distance(cfg.channel.touchstone_path, d);
        if (!std::filesystem::exists(path)) {
          char msg[160];
          std::snprintf(msg, sizeof msg, "distance %g mm: no touchstone file at %s", d,
                        path.c_str());
          throw std::runtime_error(msg);
        }
      }
      rows.push_back(run_link(cfg));
    }
  }
  return rows;
}

std::pair<double, double> ber_confidence(int64_t errors, int64_t bits) {
  if (bits < 1) throw std::invalid_argument("bits must be >= 1");
  if (errors < 0 || errors > bits) throw std::invalid_argument("errors must be in [0, bits]");
  constexpr double z = 1.96;  // 95%
  const double n = static_cast<double>(bits);
  const double p = static_cast<double>(errors) / n;
  const double z2n = z * z / n;
  const double center = (p + z2n / 2.0) / (1.0 + z2n);
  const double half =
      z / (1.0 + z2n) * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace vivolink
