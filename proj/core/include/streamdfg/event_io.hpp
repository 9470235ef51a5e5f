#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "streamdfg/errors.hpp"
#include "streamdfg/event.hpp"

namespace streamdfg {

/// Optional first line of a log file; replay skips it when present.
inline constexpr std::string_view csv_header = "case,activity,timestamp";

/// Parse one `case,activity,timestamp` record. Fields follow standard CSV
/// quoting: a field is either quote-free, or wrapped in double quotes with
/// embedded quotes doubled. The timestamp is ISO-8601 with seconds
/// precision (`2017-04-19T14:00:00`, optional `Z` or `+HH:MM`/`-HH:MM`
/// offset, `T` or space separator, no zone means UTC) or a plain
/// epoch-milliseconds integer.
///
/// Throws parse_error carrying `line_number` and the 1-based byte column of
/// the offending position.
event parse_event(std::string_view line, std::size_t line_number = 1);

/// Timestamp grammar of parse_event on its own. The line/column arguments
/// seed the parse_error location.
std::int64_t parse_timestamp(std::string_view text, std::size_t line_number = 1,
                             std::size_t column = 1);

/// One canonical record: epoch-milliseconds timestamp, fields quoted only
/// when they contain a comma or quote. parse_event(format_event(e)) == e.
/// Throws malformed_event when a field embeds a line break, which the
/// line-oriented format cannot carry.
std::string format_event(const event& e);

} // namespace streamdfg
