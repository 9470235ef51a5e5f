#include "streamdfg/sources.hpp"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <utility>

#include <netdb.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <unistd.h>

#include "streamdfg/event_io.hpp"

namespace streamdfg {

namespace {

void strip_trailing_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

// Shared lenient/strict handling for one raw line. Returns the parsed event
// or nullopt when the line is skipped (blank, header, or lenient failure).
std::optional<event> handle_line(std::string& line, std::size_t line_no, bool strict,
                                 const parse_error_handler& on_error) {
    strip_trailing_cr(line);
    if (line.empty()) return std::nullopt;
    if (line_no == 1 && line == csv_header) return std::nullopt;
    try {
        return parse_event(line, line_no);
    } catch (const parse_error& err) {
        if (strict) throw;
        if (on_error) on_error(err);
        return std::nullopt;
    }
}

} // namespace

std::optional<event> line_stream_source::next() {
    std::string line;
    while (std::getline(*in_, line)) {
        ++line_no_;
        if (auto ev = handle_line(line, line_no_, strict_, on_error_)) return ev;
    }
    return std::nullopt;
}

std::vector<event> read_log(std::istream& in, bool strict, parse_error_handler on_error) {
    line_stream_source source(in, strict, std::move(on_error));
    std::vector<event> events;
    while (auto ev = source.next()) events.push_back(std::move(*ev));
    return events;
}

std::vector<event> read_log_file(const std::string& path, bool strict,
                                 parse_error_handler on_error) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open log file: " + path);
    return read_log(in, strict, std::move(on_error));
}

file_replay_source::file_replay_source(const std::string& path, replay_order order,
                                       bool strict, parse_error_handler on_error) {
    if (order == replay_order::by_timestamp) {
        sorted_ = read_log_file(path, strict, std::move(on_error));
        std::stable_sort(sorted_.begin(), sorted_.end(),
                         [](const event& a, const event& b) {
                             return a.timestamp_ms < b.timestamp_ms;
                         });
    } else {
        file_ = std::make_unique<std::ifstream>(path);
        if (!*file_) throw std::runtime_error("cannot open log file: " + path);
        lazy_ = std::make_unique<line_stream_source>(*file_, strict, std::move(on_error));
    }
}

std::optional<event> file_replay_source::next() {
    if (lazy_) return lazy_->next();
    if (pos_ >= sorted_.size()) return std::nullopt;
    return sorted_[pos_++];
}

tcp_source::tcp_source(const std::string& host, std::uint16_t port, bool strict,
                       parse_error_handler on_error)
    : strict_(strict), on_error_(std::move(on_error)) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* results = nullptr;
    const std::string service = std::to_string(port);
    if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &results); rc != 0)
        throw std::runtime_error("cannot resolve " + host + ":" + service + ": " +
                                 ::gai_strerror(rc));

    int last_errno = 0;
    for (addrinfo* ai = results; ai; ai = ai->ai_next) {
        const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) {
            last_errno = errno;
            continue;
        }
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
            fd_ = fd;
            break;
        }
        last_errno = errno;
        ::close(fd);
    }
    ::freeaddrinfo(results);
    if (fd_ < 0)
        throw std::runtime_error("cannot connect to " + host + ":" + service + ": " +
                                 std::strerror(last_errno));
}

tcp_source::~tcp_source() {
    if (fd_ >= 0) ::close(fd_);
}

std::optional<std::string> tcp_source::next_line() {
    for (;;) {
        const std::size_t newline = pending_.find('\n', scan_from_);
        if (newline != std::string::npos) {
            std::string line = pending_.substr(0, newline);
            pending_.erase(0, newline + 1);
            scan_from_ = 0;
            return line;
        }
        scan_from_ = pending_.size();
        if (closed_) {
            if (pending_.empty()) return std::nullopt;
            // Final record without a trailing newline.
            return std::exchange(pending_, std::string());
        }
        char buffer[65536];
        const ssize_t got = ::recv(fd_, buffer, sizeof buffer, 0);
        if (got < 0) {
            if (errno == EINTR) continue;
            throw std::runtime_error(std::string("tcp read failed: ") + std::strerror(errno));
        }
        if (got == 0)
            closed_ = true;
        else
            pending_.append(buffer, static_cast<std::size_t>(got));
    }
}

std::optional<event> tcp_source::next() {
    while (auto line = next_line()) {
        ++line_no_;
        if (auto ev = handle_line(*line, line_no_, strict_, on_error_)) return ev;
    }
    return std::nullopt;
}

} // namespace streamdfg
