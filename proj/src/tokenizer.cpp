// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0

#include "ampd/tokenizer.hpp"

#include <algorithm>
#include <iterator>

#include "ampd/unicode_tables.hpp"

namespace ampd {
namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one UTF-8 codepoint at `i`, advancing it. Returns kInvalid for
// malformed sequences (after advancing past the offending byte).
char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i++]);
    if (b0 < 0x80) return b0;

    int extra;
    char32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = b0 & 0x07;
    } else {
        return kInvalid;
    }
    if (i + extra > s.size()) {
        i = s.size();
        return kInvalid;
    }
    for (int k = 0; k < extra; ++k) {
        const auto b = static_cast<unsigned char>(s[i]);
        if ((b & 0xC0) != 0x80) return kInvalid;
        cp = (cp << 6) | (b & 0x3F);
        ++i;
    }
    if (cp > 0x10FFFF) return kInvalid;
    return cp;
}

void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

}  // namespace

namespace detail {

bool is_alnum_codepoint(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
               (cp >= 'A' && cp <= 'Z');
    }
    const auto* begin = std::begin(kAlnumRanges);
    const auto* end = std::end(kAlnumRanges);
    const auto* it = std::upper_bound(
        begin, end, cp, [](char32_t v, const CpRange& r) { return v < r.lo; });
    return it != begin && cp <= (it - 1)->hi;
}

char32_t lower_codepoint(char32_t cp) {
    if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 0x20 : cp;
    const auto* begin = std::begin(kLowerPairs);
    const auto* end = std::end(kLowerPairs);
    const auto* it = std::lower_bound(
        begin, end, cp, [](const CpPair& pr, char32_t v) { return pr.from < v; });
    return (it != end && it->from == cp) ? it->to : cp;
}

}  // namespace detail

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string run;
    std::size_t run_len = 0;

    auto flush = [&] {
        if (run_len >= 2) tokens.push_back(run);
        run.clear();
        run_len = 0;
    };

    std::size_t i = 0;
    while (i < text.size()) {
        const char32_t cp = decode_utf8(text, i);
        if (cp != kInvalid && detail::is_alnum_codepoint(cp)) {
            encode_utf8(detail::lower_codepoint(cp), run);
            ++run_len;
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

std::string lowercase(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const std::size_t start = i;
        const char32_t cp = decode_utf8(text, i);
        if (cp == kInvalid) {
            out.append(text.substr(start, i - start));
        } else {
            encode_utf8(detail::lower_codepoint(cp), out);
        }
    }
    return out;
}

}  // namespace ampd
