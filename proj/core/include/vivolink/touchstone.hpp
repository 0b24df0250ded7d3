/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef VIVOLINK_TOUCHSTONE_HPP
#define VIVOLINK_TOUCHSTONE_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "vivolink/errors.hpp"

namespace vivolink {

/// Multi-port S-parameter network sampled on an ascending frequency grid.
struct SParamNetwork {
  int n_ports = 2;
  std::vector<double> freqs_hz;                      // strictly increasing
  std::vector<std::vector<std::complex<double>>> s;  // per freq, n_ports^2 row-major
  double reference_ohms = 50.0;

  std::complex<double> at(size_t freq_idx, int out_port, int in_port) const {
    return s[freq_idx][(out_port - 1) * n_ports + (in_port - 1)];
  }
};

/// Parse Touchstone v1 text (.s2p/.s4p style). Option line
/// `# <unit> S <RI|MA|DB> R <ohms>`; `!` comments; values normalized to
/// complex. Two-port files use the standard S11 S21 S12 S22 column order,
/// larger networks are row-major. Throws ParseError (with line number) on
/// malformed content, wrong port count, non-S data, or non-monotone
/// frequencies.
SParamNetwork parse_touchstone(std::istream& text, int expected_ports);
SParamNetwork parse_touchstone(const std::string& text, int expected_ports);
SParamNetwork load_touchstone(const std::string& path, int expected_ports);

/// Infer the port count from a .sNp filename suffix; returns 0 if the name
/// does not say.
int ports_from_filename(const std::string& path);

/// Serialize in RI format (GHz). parse(serialize(net)) is value-identical.
void write_touchstone(std::ostream& out, const SParamNetwork& net);
std::string touchstone_to_string(const SParamNetwork& net);

}  // namespace vivolink

#endif  // VIVOLINK_TOUCHSTONE_HPP
