/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "vivolink/phy_params.hpp"

using namespace vivolink;

TEST_CASE("numerology: subcarrier plans") {
  const Numerology n20 = make_numerology(20);
  CHECK(n20.n_sd == 52);
  CHECK(n20.n_sp == 4);
  CHECK(n20.fft_size == 64);
  CHECK(static_cast<int>(n20.data_indices.size()) == 52);
  CHECK(static_cast<int>(n20.pilot_indices.size()) == 4);
  CHECK(n20.symbol_duration_us(800) == doctest::Approx(4.0));
  CHECK(n20.symbol_duration_us(400) == doctest::Approx(3.6));

  const Numerology n40 = make_numerology(40);
  CHECK(n40.n_sd == 108);
  CHECK(n40.n_sp == 6);
  CHECK(n40.fft_size == 128);

  for (const Numerology& n : {n20, n40}) {
    std::set<int> data(n.data_indices.begin(), n.data_indices.end());
    std::set<int> pilot(n.pilot_indices.begin(), n.pilot_indices.end());
    CHECK(data.count(0) == 0);  // DC never carries data
    CHECK(pilot.count(0) == 0);
    std::vector<int> overlap;
    std::set_intersection(data.begin(), data.end(), pilot.begin(), pilot.end(),
                          std::back_inserter(overlap));
    CHECK(overlap.empty());
    CHECK(static_cast<int>(n.used_indices.size()) == n.n_used());
    // positions map back to the correct indices
    for (size_t i = 0; i < n.data_indices.size(); ++i) {
      CHECK(n.used_indices[n.data_used_pos[i]] == n.data_indices[i]);
    }
    for (size_t i = 0; i < n.pilot_indices.size(); ++i) {
      CHECK(n.used_indices[n.pilot_used_pos[i]] == n.pilot_indices[i]);
    }
  }

  CHECK_THROWS_AS(make_numerology(15), std::invalid_argument);
  CHECK_THROWS_AS(n20.symbol_duration_us(200), std::invalid_argument);
}

TEST_CASE("mcs_lookup: table entries and invariants") {
  const McsEntry m13 = mcs_lookup(13, 20);
  CHECK(m13.n_ss == 2);
  CHECK(m13.modulation == Modulation::qam64);
  CHECK(m13.code_rate == CodeRate{2, 3});
  CHECK(m13.n_dbps == 416);

  const McsEntry m2 = mcs_lookup(2, 20);
  CHECK(m2.n_ss == 1);
  CHECK(m2.modulation == Modulation::qpsk);
  CHECK(m2.code_rate == CodeRate{3, 4});
  CHECK(m2.n_dbps == 78);

  CHECK_THROWS_AS(mcs_lookup(16, 20), std::invalid_argument);
  CHECK_THROWS_AS(mcs_lookup(-1, 20), std::invalid_argument);
  CHECK_THROWS_AS(mcs_lookup(3, 30), std::invalid_argument);

  for (int bw : {20, 40}) {
    const Numerology num = make_numerology(bw);
    for (int i = 0; i <= 15; ++i) {
      const McsEntry e = mcs_lookup(i, bw);
      CHECK(e.n_ss == (i < 8 ? 1 : 2));
      CHECK(e.n_cbps == num.n_sd * e.n_bpscs * e.n_ss);
      CHECK(e.n_dbps * e.code_rate.den == e.n_cbps * e.code_rate.num);  // exact rational
    }
  }
}

TEST_CASE("data_rate: 20 MHz / 800 ns table") {
  const double expected[16] = {6.5, 13, 19.5, 26,  39, 52, 58.5, 65,
                               13,  26, 39,   52, 78, 104, 117, 130};
  for (int i = 0; i <= 15; ++i) {
    CHECK(data_rate_mbps(mcs_lookup(i, 20), 20, 800) == doctest::Approx(expected[i]));
  }
  // two-stream doubling
  for (int k = 0; k <= 7; ++k) {
    CHECK(data_rate_mbps(mcs_lookup(k + 8, 20), 20, 800) ==
          doctest::Approx(2.0 * data_rate_mbps(mcs_lookup(k, 20), 20, 800)));
  }
  // 40 MHz rows always differ from 20 MHz rows
  for (int i = 0; i <= 15; ++i) {
    CHECK(data_rate_mbps(mcs_lookup(i, 40), 40, 800) !=
          data_rate_mbps(mcs_lookup(i, 20), 20, 800));
  }
  // short guard interval speeds every row up
  for (int i = 0; i <= 15; ++i) {
    CHECK(data_rate_mbps(mcs_lookup(i, 20), 20, 400) >
          data_rate_mbps(mcs_lookup(i, 20), 20, 800));
  }
}

TEST_CASE("num_symbols: frame length arithmetic") {
  CHECK(num_symbols(mcs_lookup(0, 20), 100) == 32);    // ceil(822/26)
  CHECK(num_symbols(mcs_lookup(13, 20), 1000) == 20);  // ceil(8022/416)

  // exact fit: 16 + 8L + 6 == n_dbps -> one symbol
  const McsEntry m2 = mcs_lookup(2, 20);  // n_dbps = 78 -> L = 7
  CHECK(num_symbols(m2, 7) == 1);

  CHECK_THROWS_AS(num_symbols(m2, 0), std::invalid_argument);

  // monotone in psdu length, antitone in n_dbps
  std::mt19937 gen(42);
  std::uniform_int_distribution<int> psdu(1, 4000);
  for (int trial = 0; trial < 200; ++trial) {
    const int a = psdu(gen);
    const int b = a + psdu(gen) % 100;
    for (int i = 0; i <= 15; ++i) {
      const McsEntry e = mcs_lookup(i, 20);
      CHECK(num_symbols(e, a) <= num_symbols(e, b));
    }
    for (int i = 0; i < 15; ++i) {
      const McsEntry lo = mcs_lookup(i, 20);
      const McsEntry hi = mcs_lookup(i + 1, 20);
      if (lo.n_dbps <= hi.n_dbps) {
        CHECK(num_symbols(lo, a) >= num_symbols(hi, a));
      }
    }
  }
}
