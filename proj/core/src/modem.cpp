/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vivolink/modem.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vivolink/errors.hpp"

namespace vivolink {

namespace {

constexpr double kMaxPostSnr = 1e30;  // finite stand-in when noise_var == 0

int parser_group(int n_bpscs) { return std::max(1, n_bpscs / 2); }

struct InterleaverDims {
  int n_col;
  int n_row;
  int n_rot;
};

InterleaverDims interleaver_dims(const Numerology& num, int n_bpscs) {
  if (num.bandwidth_mhz == 20) return {13, 4 * n_bpscs, 11};
  if (num.bandwidth_mhz == 40) return {18, 6 * n_bpscs, 29};
  throw std::invalid_argument("no interleaver for bandwidth " +
                              std::to_string(num.bandwidth_mhz));
}

// Destination position of input bit k: block permutation, bit rotation within
// column groups, then the per-stream frequency rotation.
std::vector<int> interleave_map(const Numerology& num, int n_bpscs, int stream_index) {
  const auto [n_col, n_row, n_rot] = interleaver_dims(num, n_bpscs);
  const int n = num.n_sd * n_bpscs;
  const int s = parser_group(n_bpscs);
  const int rot = ((stream_index * 2) % 3 + 3 * (stream_index / 3)) * n_rot * n_bpscs;

  std::vector<int> map(n);
  for (int k = 0; k < n; ++k) {
    const int i = n_row * (k % n_col) + k / n_col;
    const int j = s * (i / s) + (i + n - (n_col * i) / n) % s;
    map[k] = ((j - rot) % n + n) % n;
  }
  return map;
}

template <typename Vec>
Vec apply_perm_forward(const Vec& in, const std::vector<int>& map) {
  Vec out(in.size());
  for (size_t k = 0; k < in.size(); ++k) out[map[k]] = in[k];
  return out;
}

template <typename Vec>
Vec apply_perm_inverse(const Vec& in, const std::vector<int>& map) {
  Vec out(in.size());
  for (size_t k = 0; k < in.size(); ++k) out[k] = in[map[k]];
  return out;
}

void check_interleave_len(size_t got, const Numerology& num, int n_bpscs) {
  const size_t want = static_cast<size_t>(num.n_sd) * n_bpscs;
  if (got != want) {
    throw std::invalid_argument("interleaver expects " + std::to_string(want) +
                                " bits per OFDM symbol, got " + std::to_string(got));
  }
}

// Gray-coded PAM levels per axis, indexed by the axis bits (first bit = MSB).
const std::array<double, 2> kPam2 = {-1.0, 1.0};
const std::array<double, 4> kPam4 = {-3.0, -1.0, 3.0, 1.0};
const std::array<double, 8> kPam8 = {-7.0, -5.0, -1.0, -3.0, 7.0, 5.0, 1.0, 3.0};

struct AxisSpec {
  const double* levels;
  int n_levels;
  int bits;     // bits per axis
  double norm;  // scale for unit average symbol energy
};

AxisSpec axis_spec(Modulation mod) {
  switch (mod) {
    case Modulation::bpsk: return {kPam2.data(), 2, 1, 1.0};
    case Modulation::qpsk: return {kPam2.data(), 2, 1, 1.0 / std::sqrt(2.0)};
    case Modulation::qam16: return {kPam4.data(), 4, 2, 1.0 / std::sqrt(10.0)};
    case Modulation::qam64: return {kPam8.data(), 8, 3, 1.0 / std::sqrt(42.0)};
  }
  throw std::invalid_argument("bad modulation");
}

// 127-periodic pilot polarity sequence (x^7 + x^4 + 1 sequence mapped
// 0 -> +1, 1 -> -1 from the all-ones state).
std::array<int, 127> polarity_table() {
  std::array<int, 127> p{};
  uint32_t lfsr = 0x7f;
  for (int i = 0; i < 127; ++i) {
    const uint32_t fb = ((lfsr >> 6) ^ (lfsr >> 3)) & 1u;
    p[i] = fb ? -1 : 1;
    lfsr = ((lfsr << 1) | fb) & 0x7f;
  }
  return p;
}

int pilot_pattern(int n_sp, int n_ss, int stream, int slot) {
  static const int k20_1[4] = {1, 1, 1, -1};
  static const int k20_2[2][4] = {{1, 1, -1, -1}, {1, -1, -1, 1}};
  static const int k40_1[6] = {1, 1, 1, -1, -1, 1};
  static const int k40_2[2][6] = {{1, 1, 1, -1, -1, 1}, {1, 1, -1, 1, 1, -1}};
  if (n_sp == 4) return n_ss == 1 ? k20_1[slot] : k20_2[stream][slot];
  return n_ss == 1 ? k40_1[slot] : k40_2[stream][slot];
}

}  // namespace

const char* detector_name(Detector d) { return d == Detector::zf ? "zf" : "mmse"; }

std::vector<BitVec> stream_parse(const BitVec& bits, int n_ss, int n_bpscs) {
  const int s = parser_group(n_bpscs);
  const size_t round = static_cast<size_t>(n_ss) * s;
  if (n_ss < 1 || bits.size() % round != 0) {
    throw std::invalid_argument("stream parser: length " + std::to_string(bits.size()) +
                                " does not divide into " + std::to_string(round) +
                                "-bit rounds");
  }
  std::vector<BitVec> streams(n_ss);
  for (auto& st : streams) st.reserve(bits.size() / n_ss);
  size_t pos = 0;
  while (pos < bits.size()) {
    for (int ss = 0; ss < n_ss; ++ss) {
      for (int b = 0; b < s; ++b) streams[ss].push_back(bits[pos++]);
    }
  }
  return streams;
}

namespace {

template <typename Vec>
Vec deparse_impl(const std::vector<Vec>& streams, int n_bpscs) {
  const int s = parser_group(n_bpscs);
  const size_t n_ss = streams.size();
  if (n_ss == 0) throw std::invalid_argument("stream deparser: no streams");
  const size_t len = streams[0].size();
  for (const auto& st : streams) {
    if (st.size() != len) throw std::invalid_argument("stream deparser: unequal lengths");
  }
  if (len % s != 0) throw std::invalid_argument("stream deparser: length not a multiple of s");

  Vec out;
  out.reserve(len * n_ss);
  for (size_t g = 0; g < len / s; ++g) {
    for (size_t ss = 0; ss < n_ss; ++ss) {
      for (int b = 0; b < s; ++b) out.push_back(streams[ss][g * s + b]);
    }
  }
  return out;
}

}  // namespace

BitVec stream_deparse(const std::vector<BitVec>& streams, int n_bpscs) {
  return deparse_impl(streams, n_bpscs);
}

LlrVec stream_deparse(const std::vector<LlrVec>& streams, int n_bpscs) {
  return deparse_impl(streams, n_bpscs);
}

BitVec interleave(const BitVec& stream_bits, int n_bpscs, int stream_index,
                  const Numerology& numerology) {
  check_interleave_len(stream_bits.size(), numerology, n_bpscs);
  return apply_perm_forward(stream_bits, interleave_map(numerology, n_bpscs, stream_index));
}

BitVec deinterleave(const BitVec& stream_bits, int n_bpscs, int stream_index,
                    const Numerology& numerology) {
  check_interleave_len(stream_bits.size(), numerology, n_bpscs);
  return apply_perm_inverse(stream_bits, interleave_map(numerology, n_bpscs, stream_index));
}

LlrVec deinterleave(const LlrVec& soft, int n_bpscs, int stream_index,
                    const Numerology& numerology) {
  check_interleave_len(soft.size(), numerology, n_bpscs);
  return apply_perm_inverse(soft, interleave_map(numerology, n_bpscs, stream_index));
}

std::vector<cplx> map_symbols(const BitVec& bits, Modulation mod) {
  const AxisSpec ax = axis_spec(mod);
  const int bps = bits_per_symbol(mod);
  if (bits.size() % bps != 0) {
    throw std::invalid_argument("mapper: bit count " + std::to_string(bits.size()) +
                                " not a multiple of " + std::to_string(bps));
  }
  std::vector<cplx> out;
  out.reserve(bits.size() / bps);
  for (size_t i = 0; i < bits.size(); i += bps) {
    int ii = 0;
    for (int b = 0; b < ax.bits; ++b) ii = (ii << 1) | bits[i + b];
    double q_lvl = 0.0;
    if (mod != Modulation::bpsk) {
      int qi = 0;
      for (int b = 0; b < ax.bits; ++b) qi = (qi << 1) | bits[i + ax.bits + b];
      q_lvl = ax.levels[qi];
    }
    out.emplace_back(ax.levels[ii] * ax.norm, q_lvl * ax.norm);
  }
  return out;
}

void demap_llr(cplx estimate, double post_snr, Modulation mod, LlrVec& out) {
  const AxisSpec ax = axis_spec(mod);
  const double snr = std::min(std::max(post_snr, 0.0), kMaxPostSnr);

  const auto axis_llrs = [&](double u) {
    for (int b = 0; b < ax.bits; ++b) {
      double d0 = 1e300;
      double d1 = 1e300;
      for (int lv = 0; lv < ax.n_levels; ++lv) {
        const double d = u - ax.levels[lv] * ax.norm;
        const double dd = d * d;
        if (lv >> (ax.bits - 1 - b) & 1) {
          d1 = std::min(d1, dd);
        } else {
          d0 = std::min(d0, dd);
        }
      }
      out.push_back(snr * (d1 - d0));
    }
  };

  axis_llrs(estimate.real());
  if (mod != Modulation::bpsk) axis_llrs(estimate.imag());
}

FrequencyGrid assemble_grid(const std::vector<std::vector<cplx>>& per_stream_symbols,
                            const Numerology& numerology, int n_sym) {
  const int n_ss = static_cast<int>(per_stream_symbols.size());
  if (n_ss < 1) throw std::invalid_argument("assemble_grid: no streams");
  const size_t want = static_cast<size_t>(numerology.n_sd) * n_sym;
  for (const auto& st : per_stream_symbols) {
    if (st.size() != want) {
      throw std::invalid_argument("assemble_grid: stream has " + std::to_string(st.size()) +
                                  " symbols, expected " + std::to_string(want));
    }
  }

  FrequencyGrid grid;
  grid.numerology = numerology;
  grid.n_sym = n_sym;
  grid.n_ss = n_ss;
  grid.data.resize(static_cast<size_t>(n_sym) * n_ss * numerology.n_sd);
  grid.pilots.resize(static_cast<size_t>(n_sym) * n_ss * numerology.n_sp);

  for (int t = 0; t < n_sym; ++t) {
    for (int ss = 0; ss < n_ss; ++ss) {
      for (int k = 0; k < numerology.n_sd; ++k) {
        grid.data_at(t, ss, k) = per_stream_symbols[ss][static_cast<size_t>(t) * numerology.n_sd + k];
      }
      for (int m = 0; m < numerology.n_sp; ++m) {
        grid.pilot_at(t, ss, m) = pilot_value(numerology, n_ss, ss, t, m);
      }
    }
  }
  return grid;
}

cplx pilot_value(const Numerology& numerology, int n_ss, int stream, int sym, int pilot_pos) {
  static const std::array<int, 127> kPolarity = polarity_table();
  const int slot = (pilot_pos + sym) % numerology.n_sp;
  const int v = pilot_pattern(numerology.n_sp, n_ss, stream, slot) * kPolarity[sym % 127];
  return {static_cast<double>(v), 0.0};
}

EqualizedGrid equalize(const FrequencyGrid& received, const ChannelResponse& chan,
                       double noise_var, Detector method) {
  const Numerology& num = received.numerology;
  if (received.n_ss != chan.n_rx) {
    throw std::invalid_argument("equalize: received grid carries " +
                                std::to_string(received.n_ss) + " antennas, channel has " +
                                std::to_string(chan.n_rx));
  }
  if (chan.n_subcarriers() != static_cast<size_t>(num.n_used())) {
    throw std::invalid_argument("equalize: channel response covers " +
                                std::to_string(chan.n_subcarriers()) +
                                " subcarriers, numerology uses " + std::to_string(num.n_used()));
  }
  if (noise_var < 0.0) throw std::invalid_argument("equalize: negative noise variance");

  const int n_rx = chan.n_rx;
  const int n_tx = chan.n_tx;

  EqualizedGrid eq;
  eq.numerology = num;
  eq.n_sym = received.n_sym;
  eq.n_ss = n_tx;
  eq.estimates.resize(static_cast<size_t>(received.n_sym) * n_tx * num.n_sd);
  eq.post_snr.resize(eq.estimates.size());

  Eigen::MatrixXcd h(n_rx, n_tx);
  Eigen::MatrixXcd w(n_tx, n_rx);
  Eigen::VectorXcd y(n_rx);
  std::vector<double> snr(n_tx);
  std::vector<double> bias(n_tx);

  for (int k = 0; k < num.n_sd; ++k) {
    const int u = num.data_used_pos[k];
    for (int r = 0; r < n_rx; ++r) {
      for (int t = 0; t < n_tx; ++t) h(r, t) = chan.at(u, r, t);
    }
    const Eigen::MatrixXcd gram = h.adjoint() * h;

    if (method == Detector::zf || noise_var == 0.0) {
      Eigen::FullPivLU<Eigen::MatrixXcd> lu(gram);
      if (!lu.isInvertible()) {
        throw SingularChannelError("zero-forcing on a rank-deficient channel at subcarrier index " +
                                   std::to_string(num.data_indices[k]));
      }
      const Eigen::MatrixXcd gram_inv = lu.inverse();
      w = gram_inv * h.adjoint();
      for (int i = 0; i < n_tx; ++i) {
        const double diag = gram_inv(i, i).real();
        snr[i] = noise_var > 0.0 ? std::min(1.0 / (noise_var * diag), kMaxPostSnr)
                                 : kMaxPostSnr;
        bias[i] = 1.0;
      }
    } else {
      Eigen::MatrixXcd reg = gram;
      for (int i = 0; i < n_tx; ++i) reg(i, i) += noise_var;
      const Eigen::MatrixXcd inv = reg.inverse();
      w = inv * h.adjoint();
      const Eigen::MatrixXcd wh = w * h;
      for (int i = 0; i < n_tx; ++i) {
        const double b = wh(i, i).real();
        bias[i] = b;
        // post-detection SINR of the unbiased estimate
        snr[i] = b > 1e-300 && b < 1.0 ? b / (1.0 - b) : (b >= 1.0 ? kMaxPostSnr : 0.0);
        snr[i] = std::min(snr[i], kMaxPostSnr);
      }
    }

    for (int t = 0; t < received.n_sym; ++t) {
      for (int r = 0; r < n_rx; ++r) y(r) = received.data_at(t, r, k);
      const Eigen::VectorXcd x = w * y;
      for (int i = 0; i < n_tx; ++i) {
        const size_t idx = (static_cast<size_t>(t) * n_tx + i) * num.n_sd + k;
        if (bias[i] > 1e-300) {
          eq.estimates[idx] = x(i) / bias[i];
        } else {
          eq.estimates[idx] = 0.0;
        }
        eq.post_snr[idx] = snr[i];
      }
    }
  }
  return eq;
}

}  // namespace vivolink
