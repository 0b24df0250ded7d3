/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef VIVOLINK_HARNESS_HPP
#define VIVOLINK_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vivolink/channel.hpp"
#include "vivolink/modem.hpp"
#include "vivolink/phy_params.hpp"

namespace vivolink {

enum class ChannelKind { identity, synthetic, touchstone };
enum class ChannelRegen { per_frame, fixed };
enum class LinkMode { siso, mimo };

const char* link_mode_name(LinkMode m);

/// Where the channel matrices come from. For touchstone sources the path may
/// contain "{distance_mm}", substituted per distance-sweep point. Empty port
/// lists mean auto: {1,2}/{3,4} for MIMO, {1}/{2} for a 2-port file and
/// {1}/{3} for larger ones in SISO mode.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::synthetic;
  SyntheticChannelParams synthetic;
  std::string touchstone_path;
  PortMap mimo_ports{{}, {}};
  PortMap siso_ports{{}, {}};
};

struct SimConfig {
  int mcs = 13;
  int bandwidth_mhz = 20;
  int guard_interval_ns = 800;
  int psdu_bytes = 1000;
  int64_t n_frames = 10000;
  int64_t frame_offset = 0;  // first frame index (restartable runs)
  uint64_t seed = 1;
  Detector detector = Detector::mmse;
  ChannelSpec channel;
  LinkBudget budget;
  /// Default policy: per_frame for synthetic channels, fixed otherwise.
  std::optional<ChannelRegen> regen;
  int workers = 1;                 // 0 = hardware concurrency
  bool uncoded_bpsk = false;       // bypass FEC/interleaving, raw BPSK (diagnostics)
  std::optional<int> scenario_id;  // bundled placement scenario, echoed in outputs

  ChannelRegen effective_regen() const;
};

struct SimResult {
  int64_t bits_sent = 0;
  int64_t bit_errors = 0;
  int64_t frames_sent = 0;
  int64_t frame_errors = 0;
  double ber = 0.0;
  double fer = 0.0;
  double ber_ci_low = 0.0;
  double ber_ci_high = 0.0;
  double rate_mbps = 0.0;  // bookkeeping echo of data_rate_mbps(mcs)
  double elapsed_s = 0.0;
  SimConfig config;
};

/// Validate a configuration; throws std::invalid_argument with the reason.
void validate_config(const SimConfig& config);

/// Monte-Carlo link run: per frame draw payload -> TX chain -> channel ->
/// RX chain -> compare payload bits. Deterministic in (seed, frame range)
/// for any worker count. Channel/file errors carry the frame index.
SimResult run_link(const SimConfig& config);

/// One row per MCS, shared channel seeds across rows. SISO restricts to
/// MCS 0-7 over the 1x1 channel slice; MIMO to MCS 8-15 over 2x2.
/// Mode/stream mismatches throw std::invalid_argument.
std::vector<SimResult> sweep_mcs(const SimConfig& base, const std::vector<int>& mcs_list,
                                 LinkMode mode);

/// One row per (distance, mcs), distances echoed in the results. Requires a
/// synthetic source (distance feeds the path-gain law) or a touchstone path
/// pattern with a "{distance_mm}" placeholder.
std::vector<SimResult> sweep_distance(const SimConfig& base,
                                      const std::vector<double>& distances_mm,
                                      const std::vector<int>& mcs_list);

/// 95% Wilson score interval for `errors` successes in `bits` trials.
std::pair<double, double> ber_confidence(int64_t errors, int64_t bits);

/// Stream count implied by the MCS, as a link mode.
LinkMode mode_for_mcs(int mcs_index);

}  // namespace vivolink

#endif  // VIVOLINK_HARNESS_HPP
