/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef VIVOLINK_MODEM_HPP
#define VIVOLINK_MODEM_HPP

#include <complex>
#include <vector>

#include "vivolink/bits.hpp"
#include "vivolink/channel_response.hpp"
#include "vivolink/phy_params.hpp"

namespace vivolink {

using cplx = std::complex<double>;

/// Frequency-domain signal: data symbols indexed (ofdm_symbol, stream,
/// data subcarrier) plus the pilot values carried alongside. Constellations
/// are unit average energy at the transmitter.
struct FrequencyGrid {
  Numerology numerology;
  int n_sym = 0;
  int n_ss = 1;
  std::vector<cplx> data;    // n_sym * n_ss * n_sd
  std::vector<cplx> pilots;  // n_sym * n_ss * n_sp

  cplx& data_at(int sym, int stream, int k) {
    return data[(static_cast<size_t>(sym) * n_ss + stream) * numerology.n_sd + k];
  }
  const cplx& data_at(int sym, int stream, int k) const {
    return data[(static_cast<size_t>(sym) * n_ss + stream) * numerology.n_sd + k];
  }
  cplx& pilot_at(int sym, int stream, int m) {
    return pilots[(static_cast<size_t>(sym) * n_ss + stream) * numerology.n_sp + m];
  }
  const cplx& pilot_at(int sym, int stream, int m) const {
    return pilots[(static_cast<size_t>(sym) * n_ss + stream) * numerology.n_sp + m];
  }
};

/// equalize() output: symbol estimates plus the per-estimate effective SNR
/// (linear) that scales the demapper LLRs.
struct EqualizedGrid {
  Numerology numerology;
  int n_sym = 0;
  int n_ss = 1;
  std::vector<cplx> estimates;   // same layout as FrequencyGrid::data
  std::vector<double> post_snr;  // parallel to estimates

  const cplx& est_at(int sym, int stream, int k) const {
    return estimates[(static_cast<size_t>(sym) * n_ss + stream) * numerology.n_sd + k];
  }
  double snr_at(int sym, int stream, int k) const {
    return post_snr[(static_cast<size_t>(sym) * n_ss + stream) * numerology.n_sd + k];
  }
};

enum class Detector { zf, mmse };

const char* detector_name(Detector d);

/// Round-robin split of coded bits into n_ss streams, s = max(1, n_bpscs/2)
/// consecutive bits per stream per turn. |bits| must divide evenly.
std::vector<BitVec> stream_parse(const BitVec& bits, int n_ss, int n_bpscs);

/// Exact inverse of stream_parse. All streams must have equal length.
BitVec stream_deparse(const std::vector<BitVec>& streams, int n_bpscs);
/// Same merge on receiver soft values.
LlrVec stream_deparse(const std::vector<LlrVec>& streams, int n_bpscs);

/// Two-permutation block interleaver plus the per-stream frequency rotation,
/// applied to one OFDM symbol's worth of bits (n_sd * n_bpscs).
BitVec interleave(const BitVec& stream_bits, int n_bpscs, int stream_index,
                  const Numerology& numerology);
BitVec deinterleave(const BitVec& stream_bits, int n_bpscs, int stream_index,
                    const Numerology& numerology);
/// Receiver-side deinterleave of soft values (same permutation).
LlrVec deinterleave(const LlrVec& soft, int n_bpscs, int stream_index,
                    const Numerology& numerology);

/// Gray-mapped BPSK/QPSK/16-QAM/64-QAM with unit average energy
/// (normalizations 1, 1/sqrt(2), 1/sqrt(10), 1/sqrt(42)).
std::vector<cplx> map_symbols(const BitVec& bits, Modulation mod);

/// Max-log LLRs for the bits of one symbol estimate; post_snr (linear) scales
/// the LLR magnitudes. Appends bits_per_symbol(mod) values to `out`.
void demap_llr(cplx estimate, double post_snr, Modulation mod, LlrVec& out);

/// Place per-stream data symbols onto the data subcarriers and fill the known
/// pilot values. Each stream must supply exactly n_sd * n_sym symbols.
FrequencyGrid assemble_grid(const std::vector<std::vector<cplx>>& per_stream_symbols,
                            const Numerology& numerology, int n_sym);

/// Pilot value for (symbol, stream, pilot position): fixed per-stream pattern
/// cycled over symbols, times the 127-periodic polarity sequence.
cplx pilot_value(const Numerology& numerology, int n_ss, int stream, int sym, int pilot_pos);

/// Linear MIMO detection per subcarrier. `chan` is the effective channel the
/// receiver sees (power scaling included); noise_var is the per-receive-antenna
/// complex noise variance. MMSE estimates are bias-corrected so a clean
/// constellation comes out unbiased; post_snr is the post-detection SINR.
/// ZF throws SingularChannelError when H^H H is rank deficient.
EqualizedGrid equalize(const FrequencyGrid& received, const ChannelResponse& chan,
                       double noise_var, Detector method);

}  // namespace vivolink

#endif  // VIVOLINK_MODEM_HPP
