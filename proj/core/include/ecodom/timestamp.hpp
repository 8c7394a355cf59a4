#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace ecodom {

using Timestamp = std::chrono::sys_seconds;

/// Accepts `YYYY-MM-DDTHH:MM[:SS]` followed by `Z`, `+HH:MM`, `-HH:MM` or
/// nothing (UTC assumed). A space may replace the `T`.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Always `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_timestamp(Timestamp t);

/// Fractional hours since 00:00 UTC of the same day.
double utc_hour_of_day(Timestamp t);

}  // namespace ecodom
