// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace sojourn {

inline constexpr const char* kVersion = "v0.1.0";

}  // namespace sojourn
