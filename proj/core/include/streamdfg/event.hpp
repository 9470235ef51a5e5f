#pragma once

#include <cstdint>
#include <string>

#include "streamdfg/errors.hpp"

namespace streamdfg {

/// A single activity occurrence: which activity happened, in which case,
/// and when (milliseconds since the Unix epoch, UTC).
struct event {
    std::string case_id;
    std::string activity;
    std::int64_t timestamp_ms = 0;

    bool operator==(const event&) const = default;
};

/// Throws malformed_event unless case id and activity are non-empty and the
/// timestamp is non-negative.
inline void validate(const event& e) {
    if (e.case_id.empty())
        throw malformed_event("event has an empty case id");
    if (e.activity.empty())
        throw malformed_event("event has an empty activity name");
    if (e.timestamp_ms < 0)
        throw malformed_event("event timestamp is negative: " + std::to_string(e.timestamp_ms));
}

} // namespace streamdfg
