#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "streamdfg/errors.hpp"
#include "streamdfg/event.hpp"

namespace streamdfg {

/// Pull-based event stream. next() blocks until an event is available and
/// returns nullopt exactly once, at end of stream. One consumer per source.
class event_source {
public:
    virtual ~event_source() = default;
    virtual std::optional<event> next() = 0;
};

/// Called once per skipped malformed line when parsing leniently.
using parse_error_handler = std::function<void(const parse_error&)>;

/// Replay of an in-memory sequence, mainly for tests and generated logs.
class vector_source final : public event_source {
public:
    explicit vector_source(std::vector<event> events) : events_(std::move(events)) {}
    std::optional<event> next() override {
        if (pos_ >= events_.size()) return std::nullopt;
        return events_[pos_++];
    }

private:
    std::vector<event> events_;
    std::size_t pos_ = 0;
};

/// Newline-delimited records from any istream. A leading canonical header
/// line is skipped. In strict mode a malformed line throws; otherwise it is
/// reported to the handler and skipped.
class line_stream_source final : public event_source {
public:
    explicit line_stream_source(std::istream& in, bool strict = true,
                                parse_error_handler on_error = {})
        : in_(&in), strict_(strict), on_error_(std::move(on_error)) {}

    std::optional<event> next() override;

private:
    std::istream* in_;
    bool strict_;
    parse_error_handler on_error_;
    std::size_t line_no_ = 0;
};

enum class replay_order : std::uint8_t { as_is, by_timestamp };

/// Parse a whole log. Stops at end of input; lenient mode skips bad lines.
std::vector<event> read_log(std::istream& in, bool strict = true,
                            parse_error_handler on_error = {});
/// Same, opening `path`; IO failures surface as std::runtime_error naming
/// the path.
std::vector<event> read_log_file(const std::string& path, bool strict = true,
                                 parse_error_handler on_error = {});

/// Log-file replay. by_timestamp (the default) loads the file up front and
/// stable-sorts it so ties keep file order; as_is streams the file lazily
/// in its own order.
class file_replay_source final : public event_source {
public:
    explicit file_replay_source(const std::string& path,
                                replay_order order = replay_order::by_timestamp,
                                bool strict = true, parse_error_handler on_error = {});

    std::optional<event> next() override;

private:
    std::unique_ptr<std::ifstream> file_;
    std::unique_ptr<line_stream_source> lazy_;
    std::vector<event> sorted_;
    std::size_t pos_ = 0;
};

/// Newline-delimited records from a TCP connection this side opens. Reads
/// block; the stream ends when the peer closes the connection.
class tcp_source final : public event_source {
public:
    tcp_source(const std::string& host, std::uint16_t port, bool strict = true,
               parse_error_handler on_error = {});
    ~tcp_source() override;

    tcp_source(const tcp_source&) = delete;
    tcp_source& operator=(const tcp_source&) = delete;

    std::optional<event> next() override;

private:
    std::optional<std::string> next_line();

    int fd_ = -1;
    std::string pending_;
    std::size_t scan_from_ = 0;
    bool closed_ = false;
    bool strict_;
    parse_error_handler on_error_;
    std::size_t line_no_ = 0;
};

} // namespace streamdfg
