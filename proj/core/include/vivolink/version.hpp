/*
 * Copyright (c) 2026 the vivolink authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef VIVOLINK_VERSION_HPP
#define VIVOLINK_VERSION_HPP

namespace vivolink {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vivolink

#endif  // VIVOLINK_VERSION_HPP
