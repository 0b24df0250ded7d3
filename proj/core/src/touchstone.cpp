/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vivolink/touchstone.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vivolink {

namespace {

enum class Format { ri, ma, db };

struct Options {
  double freq_scale = 1e9;  // GHz default
  Format format = Format::ma;
  double reference_ohms = 50.0;
};

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

Options parse_option_line(const std::string& line, int line_no) {
  Options opt;
  std::istringstream in(line.substr(1));  // skip '#'
  std::string tok;
  bool want_r_value = false;
  while (in >> tok) {
    const std::string t = upper(tok);
    if (want_r_value) {
      try {
        opt.reference_ohms = std::stod(t);
      } catch (const std::exception&) {
        throw ParseError("bad reference resistance '" + tok + "'", line_no);
      }
      want_r_value = false;
    } else if (t == "HZ") {
      opt.freq_scale = 1.0;
    } else if (t == "KHZ") {
      opt.freq_scale = 1e3;
    } else if (t == "MHZ") {
      opt.freq_scale = 1e6;
    } else if (t == "GHZ") {
      opt.freq_scale = 1e9;
    } else if (t == "S") {
      // S-parameters, the only supported network parameter type
    } else if (t == "Y" || t == "Z" || t == "H" || t == "G") {
      throw ParseError("unsupported parameter type '" + tok + "' (only S-parameters)", line_no);
    } else if (t == "RI") {
      opt.format = Format::ri;
    } else if (t == "MA") {
      opt.format = Format::ma;
    } else if (t == "DB") {
      opt.format = Format::db;
    } else if (t == "R") {
      want_r_value = true;
    } else {
      throw ParseError("unrecognized option token '" + tok + "'", line_no);
    }
  }
  if (want_r_value) throw ParseError("option 'R' missing its resistance value", line_no);
  return opt;
}

std::complex<double> to_complex(double a, double b, Format fmt) {
  switch (fmt) {
    case Format::ri: return {a, b};
    case Format::ma: return std::polar(a, b * M_PI / 180.0);
    case Format::db: return std::polar(std::pow(10.0, a / 20.0), b * M_PI / 180.0);
  }
  return {};
}

}  // namespace

SParamNetwork parse_touchstone(std::istream& text, int expected_ports) {
  if (expected_ports < 1) throw std::invalid_argument("expected_ports must be >= 1");

  Options opt;
  bool saw_option = false;
  std::vector<std::pair<double, int>> tokens;  // value, source line

  std::string line;
  int line_no = 0;
  while (std::getline(text, line)) {
    ++line_no;
    const auto bang = line.find('!');
    if (bang != std::string::npos) line = line.substr(0, bang);
    size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;

    if (line[pos] == '#') {
      if (saw_option) throw ParseError("duplicate option line", line_no);
      opt = parse_option_line(line.substr(pos), line_no);
      saw_option = true;
      continue;
    }

    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0') {
        throw ParseError("expected a number, got '" + tok + "'", line_no);
      }
      tokens.emplace_back(v, line_no);
    }
  }

  const size_t record = 1 + 2 * static_cast<size_t>(expected_ports) * expected_ports;
  if (tokens.empty()) throw ParseError("no data rows", line_no);
  if (tokens.size() % record != 0) {
    throw ParseError("data does not divide into " + std::to_string(expected_ports) +
                         "-port records (" + std::to_string(tokens.size()) + " values, " +
                         std::to_string(record) + " per record); wrong port count?",
                     tokens.back().second);
  }

  SParamNetwork net;
  net.n_ports = expected_ports;
  net.reference_ohms = opt.reference_ohms;

  const size_t n_records = tokens.size() / record;
  net.freqs_hz.reserve(n_records);
  net.s.reserve(n_records);

  for (size_t rec = 0; rec < n_records; ++rec) {
    const size_t base = rec * record;
    const double freq = tokens[base].first * opt.freq_scale;
    const int freq_line = tokens[base].second;
    if (!net.freqs_hz.empty() && freq <= net.freqs_hz.back()) {
      throw ParseError("frequencies must be strictly increasing", freq_line);
    }
    net.freqs_hz.push_back(freq);

    std::vector<std::complex<double>> m(static_cast<size_t>(expected_ports) * expected_ports);
    for (size_t e = 0; e < m.size(); ++e) {
      const double a = tokens[base + 1 + 2 * e].first;
      const double b = tokens[base + 2 + 2 * e].first;
      // 2-port files use the S11 S21 S12 S22 order; larger ones are row-major.
      size_t dst = e;
      if (expected_ports == 2) {
        static const size_t k2PortOrder[4] = {0, 2, 1, 3};  // -> S11 S12 S21 S22 storage
        dst = k2PortOrder[e];
      }
      m[dst] = to_complex(a, b, opt.format);
    }
    net.s.push_back(std::move(m));
  }
  return net;
}

SParamNetwork parse_touchstone(const std::string& text, int expected_ports) {
  std::istringstream in(text);
  return parse_touchstone(in, expected_ports);
}

SParamNetwork load_touchstone(const std::string& path, int expected_ports) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open touchstone file: " + path);
  return parse_touchstone(in, expected_ports);
}

int ports_from_filename(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos) return 0;
  std::string ext = upper(path.substr(dot + 1));
  if (ext.size() < 3 || ext.front() != 'S' || ext.back() != 'P') return 0;
  const std::string digits = ext.substr(1, ext.size() - 2);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
    return 0;
  }
  return std::stoi(digits);
}

void write_touchstone(std::ostream& out, const SParamNetwork& net) {
  char buf[64];
  out << "# GHz S RI R ";
  std::snprintf(buf, sizeof buf, "%.17g", net.reference_ohms);
  out << buf << "\n";

  const int n = net.n_ports;
  for (size_t i = 0; i < net.freqs_hz.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", net.freqs_hz[i] / 1e9);
    out << buf;
    auto emit = [&](std::complex<double> v) {
      std::snprintf(buf, sizeof buf, " %.17g %.17g", v.real(), v.imag());
      out << buf;
    };
    if (n == 2) {
      emit(net.s[i][0]);  // S11
      emit(net.s[i][2]);  // S21
      emit(net.s[i][1]);  // S12
      emit(net.s[i][3]);  // S22
      out << "\n";
    } else {
      for (int r = 0; r < n; ++r) {
        if (r > 0) out << " ";
        for (int c = 0; c < n; ++c) emit(net.s[i][static_cast<size_t>(r) * n + c]);
        out << "\n";
      }
    }
  }
}

std::string touchstone_to_string(const SParamNetwork& net) {
  std::ostringstream out;
  write_touchstone(out, net);
  return out.str();
}

}  // namespace vivolink
