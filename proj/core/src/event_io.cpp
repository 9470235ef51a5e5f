#include "streamdfg/event_io.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <vector>

namespace streamdfg {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

// Days between 1970-01-01 and the given civil date, proleptic Gregorian.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<std::uint64_t>(y - era * 400);
    const std::uint64_t doy = (153 * (m + (m > 2 ? -3u : 9u)) + 2) / 5 + d - 1;
    const std::uint64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

unsigned days_in_month(std::int64_t y, unsigned m) {
    static constexpr std::array<unsigned, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                         31, 31, 30, 31, 30, 31};
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    return (m == 2 && leap) ? 29 : lengths[m - 1];
}

struct field_cursor {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line;

    [[noreturn]] void fail(const std::string& what, std::size_t column) const {
        throw parse_error(what, line, column);
    }

    // One CSV field; leaves pos on the separator or at end.
    std::string take_field() {
        std::string out;
        if (pos < text.size() && text[pos] == '"') {
            const std::size_t open = pos++;
            for (;;) {
                if (pos >= text.size()) fail("unterminated quoted field", open + 1);
                const char c = text[pos++];
                if (c != '"') {
                    out.push_back(c);
                } else if (pos < text.size() && text[pos] == '"') {
                    out.push_back('"');
                    ++pos;
                } else {
                    break;
                }
            }
            if (pos < text.size() && text[pos] != ',')
                fail("text after closing quote", pos + 1);
        } else {
            while (pos < text.size() && text[pos] != ',') {
                if (text[pos] == '"')
                    fail("quote inside unquoted field", pos + 1);
                out.push_back(text[pos++]);
            }
        }
        return out;
    }

    bool take_separator() {
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            return true;
        }
        return false;
    }
};

struct number_reader {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line;
    std::size_t base_column;

    [[noreturn]] void fail(const std::string& what) const {
        throw parse_error(what, line, base_column + pos);
    }

    // Exactly `digits` decimal digits.
    std::int64_t fixed(int digits, const char* what) {
        std::int64_t value = 0;
        for (int i = 0; i < digits; ++i) {
            if (pos >= text.size() || text[pos] < '0' || text[pos] > '9')
                fail(std::string("expected digit in ") + what);
            value = value * 10 + (text[pos++] - '0');
        }
        return value;
    }

    void literal(char expected, const char* what) {
        if (pos >= text.size() || text[pos] != expected)
            fail(std::string("expected '") + expected + "' " + what);
        ++pos;
    }
};

} // namespace

std::int64_t parse_timestamp(std::string_view text, std::size_t line_number,
                             std::size_t column) {
    if (text.empty()) throw parse_error("empty timestamp", line_number, column);

    if (all_digits(text)) {
        std::int64_t ms = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), ms);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw parse_error("epoch milliseconds out of range", line_number, column);
        return ms;
    }

    number_reader r{text, 0, line_number, column};
    const std::int64_t year = r.fixed(4, "year");
    r.literal('-', "after year");
    const auto month = static_cast<unsigned>(r.fixed(2, "month"));
    r.literal('-', "after month");
    const auto day = static_cast<unsigned>(r.fixed(2, "day"));
    if (r.pos >= text.size() || (text[r.pos] != 'T' && text[r.pos] != ' '))
        r.fail("expected 'T' or space between date and time");
    ++r.pos;
    const std::int64_t hour = r.fixed(2, "hour");
    r.literal(':', "after hour");
    const std::int64_t minute = r.fixed(2, "minute");
    r.literal(':', "after minute");
    const std::int64_t second = r.fixed(2, "second");

    if (month < 1 || month > 12) r.fail("month out of range");
    if (day < 1 || day > days_in_month(year, month)) r.fail("day out of range");
    if (hour > 23 || minute > 59 || second > 59) r.fail("time of day out of range");

    std::int64_t offset_minutes = 0;
    if (r.pos < text.size()) {
        const char zone = text[r.pos];
        if (zone == 'Z') {
            ++r.pos;
        } else if (zone == '+' || zone == '-') {
            ++r.pos;
            const std::int64_t oh = r.fixed(2, "offset hours");
            r.literal(':', "in zone offset");
            const std::int64_t om = r.fixed(2, "offset minutes");
            if (oh > 23 || om > 59) r.fail("zone offset out of range");
            offset_minutes = (zone == '+' ? 1 : -1) * (oh * 60 + om);
        } else {
            r.fail("unexpected text after seconds");
        }
    }
    if (r.pos != text.size()) r.fail("unexpected trailing text in timestamp");

    const std::int64_t days = days_from_civil(year, month, day);
    const std::int64_t utc_seconds =
        days * 86400 + hour * 3600 + minute * 60 + second - offset_minutes * 60;
    return utc_seconds * 1000;
}

event parse_event(std::string_view line, std::size_t line_number) {
    field_cursor cursor{line, 0, line_number};
    event e;
    e.case_id = cursor.take_field();
    if (!cursor.take_separator())
        cursor.fail("expected 3 fields (case,activity,timestamp)", cursor.pos + 1);
    e.activity = cursor.take_field();
    if (!cursor.take_separator())
        cursor.fail("expected 3 fields (case,activity,timestamp)", cursor.pos + 1);
    const std::size_t ts_column = cursor.pos + 1;
    const std::string ts_text = cursor.take_field();
    if (cursor.pos != line.size())
        cursor.fail("expected 3 fields, found more", cursor.pos + 1);

    e.timestamp_ms = parse_timestamp(ts_text, line_number, ts_column);
    if (e.case_id.empty()) cursor.fail("empty case id", 1);
    if (e.activity.empty()) cursor.fail("empty activity name", 1);
    if (e.timestamp_ms < 0) cursor.fail("timestamp before the epoch", ts_column);
    return e;
}

std::string format_event(const event& e) {
    auto quoted = [](std::string_view field) {
        if (field.find_first_of("\n\r") != std::string_view::npos)
            throw malformed_event("event field embeds a line break");
        if (field.find_first_of(",\"") == std::string_view::npos) return std::string(field);
        std::string out;
        out.reserve(field.size() + 2);
        out.push_back('"');
        for (char c : field) {
            if (c == '"') out.push_back('"');
            out.push_back(c);
        }
        out.push_back('"');
        return out;
    };
    return quoted(e.case_id) + ',' + quoted(e.activity) + ',' + std::to_string(e.timestamp_ms);
}

} // namespace streamdfg
