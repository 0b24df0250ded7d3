/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vivolink/csv.hpp"

#include <cmath>
#include <cstdio>

namespace vivolink {

std::string csv_header() {
  return "mode,mcs,rate_mbps,bandwidth_mhz,gi_ns,distance_mm,tx_power_dbm,noise_dbm,"
         "frames,bits,bit_errors,ber,ber_ci_low,ber_ci_high,frame_errors,fer,seed";
}

std::string csv_row(const SimResult& r) {
  const SimConfig& c = r.config;
  const LinkMode mode = mode_for_mcs(c.mcs);

  char distance[32] = "";
  if (c.channel.kind == ChannelKind::synthetic) {
    std::snprintf(distance, sizeof distance, "%.1f", c.channel.synthetic.distance_mm);
  }

  char noise[32];
  if (c.budget.noise_power_w > 0.0) {
    std::snprintf(noise, sizeof noise, "%.4f", watts_to_dbm(c.budget.noise_power_w));
  } else {
    std::snprintf(noise, sizeof noise, "-inf");
  }

  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%s,%d,%.1f,%d,%d,%s,%.4f,%s,%lld,%lld,%lld,%.6e,%.6e,%.6e,%lld,%.6e,%llu",
                link_mode_name(mode), c.mcs, r.rate_mbps, c.bandwidth_mhz, c.guard_interval_ns,
                distance, watts_to_dbm(c.budget.tx_power_w), noise,
                static_cast<long long>(r.frames_sent), static_cast<long long>(r.bits_sent),
                static_cast<long long>(r.bit_errors), r.ber, r.ber_ci_low, r.ber_ci_high,
                static_cast<long long>(r.frame_errors), r.fer,
                static_cast<unsigned long long>(c.seed));
  return buf;
}

}  // namespace vivolink
