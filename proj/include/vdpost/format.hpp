#pragma once

#include <optional>
#include <string>

namespace vdpost {

/// Six significant digits, '.' decimal separator regardless of locale.
std::string format_real(double v);

/// Empty string for an absent value.
std::string format_real(const std::optional<double>& v);

}  // namespace vdpost
