/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef VIVOLINK_CSV_HPP
#define VIVOLINK_CSV_HPP

#include <string>

#include "vivolink/harness.hpp"

namespace vivolink {

/// Stable result-table schema. Rows are pure functions of the result counts
/// and configuration (no timestamps), so a rerun with the same manifest
/// reproduces the file byte for byte.
std::string csv_header();
std::string csv_row(const SimResult& result);

}  // namespace vivolink

#endif  // VIVOLINK_CSV_HPP
