#pragma once

#include <string_view>

namespace dplr {

// git-describe-style version string captured at configure time.
std::string_view version() noexcept;

}  // namespace dplr
