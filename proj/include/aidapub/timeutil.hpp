#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace aidapub {

using Timestamp = std::chrono::sys_seconds;
using Clock = std::function<Timestamp()>;

Timestamp now_utc();

/// "2012-11-05T14:07:00Z"
std::string format_timestamp(Timestamp t);

/// Accepts "YYYY-MM-DD", "YYYY-MM-DD HH:MM", "YYYY-MM-DDTHH:MM[:SS][Z]".
std::optional<Timestamp> parse_timestamp(std::string_view text);

}  // namespace aidapub
