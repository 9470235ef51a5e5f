#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace streamdfg {

/// Budget precondition broken by the caller. Callers must free space via the
/// deletion mechanism before inserting into a full partition.
class budget_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Arc insertion or update referencing an endpoint that is not in the node set.
class dangling_endpoint : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Lookup of a graph element that is not present.
class element_not_found : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Victim selection requested on a map with no elements.
class empty_map_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Case eviction requested on an empty running-case store.
class empty_store_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Event with an empty case id or activity name, or a negative timestamp.
class malformed_event : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Accuracy is undefined when the complete graph has no relation frequency.
class zero_total_frequency : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Technique name or enum value outside the supported set.
class unknown_technique : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input line. Carries the 1-based line number and byte column.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string message, std::size_t line, std::size_t column)
        : std::runtime_error(std::move(message)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace streamdfg
