#pragma once

#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <unicode/errorcode.h>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "errors.hpp"

namespace normforge {

// Lexemes name legal terms, concepts and rule clause parts: [a-z][a-z0-9_]*.
inline bool is_lexeme(std::string_view s) {
    if (s.empty()) return false;
    if (s[0] < 'a' || s[0] > 'z') return false;
    for (char c : s) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

inline std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

inline std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Unicode NFC. Invalid UTF-8 is passed through unchanged; callers treat the
// input bytes as the key in that case.
inline std::string nfc_normalize(std::string_view s) {
    icu::ErrorCode status;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (status.isFailure() || nfc == nullptr) return std::string(s);
    icu::UnicodeString u = icu::UnicodeString::fromUTF8(
        icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
    icu::UnicodeString normalized = nfc->normalize(u, status);
    if (status.isFailure()) return std::string(s);
    std::string out;
    normalized.toUTF8String(out);
    return out;
}

// Dedup key for answer texts: NFC + whitespace trim.
inline std::string canonical_text(std::string_view s) { return nfc_normalize(trim(s)); }

// --- ISO-8601 instants -------------------------------------------------
//
// Accepted forms: YYYY-MM-DD, YYYY-MM-DDTHH:MM, YYYY-MM-DDTHH:MM:SS,
// each optionally suffixed with "Z" or a +HH:MM / -HH:MM offset.
// Stored as seconds since the Unix epoch (UTC).

struct Instant {
    std::int64_t seconds = 0;

    auto operator<=>(const Instant&) const = default;
};

namespace detail {

// Days from 1970-01-01 for a civil date (proleptic Gregorian).
inline std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp < 10 ? mp + 3 : mp - 9;
    y += m <= 2;
}

inline bool is_leap(std::int64_t y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

inline unsigned days_in_month(std::int64_t y, unsigned m) {
    static constexpr unsigned table[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return table[m - 1];
}

inline bool read_digits(std::string_view s, size_t& pos, int count, std::int64_t& out) {
    if (pos + count > s.size()) return false;
    std::int64_t v = 0;
    for (int i = 0; i < count; ++i) {
        char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    pos += static_cast<size_t>(count);
    out = v;
    return true;
}

}  // namespace detail

inline std::optional<Instant> try_parse_instant(std::string_view s) {
    using namespace detail;
    size_t pos = 0;
    std::int64_t year, month, day;
    if (!read_digits(s, pos, 4, year)) return std::nullopt;
    if (pos >= s.size() || s[pos] != '-') return std::nullopt;
    ++pos;
    if (!read_digits(s, pos, 2, month)) return std::nullopt;
    if (pos >= s.size() || s[pos] != '-') return std::nullopt;
    ++pos;
    if (!read_digits(s, pos, 2, day)) return std::nullopt;
    if (month < 1 || month > 12) return std::nullopt;
    if (day < 1 || day > days_in_month(year, static_cast<unsigned>(month))) return std::nullopt;

    std::int64_t hour = 0, minute = 0, second = 0;
    if (pos < s.size() && (s[pos] == 'T' || s[pos] == 't')) {
        ++pos;
        if (!read_digits(s, pos, 2, hour)) return std::nullopt;
        if (pos >= s.size() || s[pos] != ':') return std::nullopt;
        ++pos;
        if (!read_digits(s, pos, 2, minute)) return std::nullopt;
        if (pos < s.size() && s[pos] == ':') {
            ++pos;
            if (!read_digits(s, pos, 2, second)) return std::nullopt;
        }
        if (hour > 23 || minute > 59 || second > 59) return std::nullopt;
    }

    std::int64_t offset = 0;
    if (pos < s.size()) {
        char c = s[pos];
        if (c == 'Z' || c == 'z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            ++pos;
            std::int64_t oh, om;
            if (!read_digits(s, pos, 2, oh)) return std::nullopt;
            if (pos >= s.size() || s[pos] != ':') return std::nullopt;
            ++pos;
            if (!read_digits(s, pos, 2, om)) return std::nullopt;
            if (oh > 23 || om > 59) return std::nullopt;
            offset = (oh * 3600 + om * 60) * (c == '+' ? 1 : -1);
        } else {
            return std::nullopt;
        }
    }
    if (pos != s.size()) return std::nullopt;

    const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                              static_cast<unsigned>(day));
    return Instant{days * 86400 + hour * 3600 + minute * 60 + second - offset};
}

class InvalidInstant : public Error {
public:
    explicit InvalidInstant(std::string_view text)
        : Error("invalid ISO-8601 instant: '" + std::string(text) + "'") {}
};

inline Instant parse_instant(std::string_view s) {
    auto inst = try_parse_instant(s);
    if (!inst) throw InvalidInstant(s);
    return *inst;
}

// Canonical form: YYYY-MM-DDTHH:MM:SSZ.
inline std::string format_instant(Instant t) {
    std::int64_t days = t.seconds / 86400;
    std::int64_t rem = t.seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    std::int64_t y;
    unsigned m, d;
    detail::civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), m, d, static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem % 3600) / 60), static_cast<long long>(rem % 60));
    return buf;
}

}  // namespace normforge
