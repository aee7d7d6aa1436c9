// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/normalize.hpp>

#include "utf8.hpp"

#include <algorithm>
#include <array>

namespace kgval {

namespace {

// Base-letter replacement for U+00C0..U+017F. Empty entries have no mapping.
constexpr std::array<const char*, 192> kLatinBase = {
    // U+00C0
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    // U+00D0
    "d", "n", "o", "o", "o", "o", "o", "", "o", "u", "u", "u", "u", "y", "th", "ss",
    // U+00E0
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    // U+00F0
    "d", "n", "o", "o", "o", "o", "o", "", "o", "u", "u", "u", "u", "y", "th", "y",
    // U+0100
    "a", "a", "a", "a", "a", "a", "c", "c", "c", "c", "c", "c", "c", "c", "d", "d",
    // U+0110
    "d", "d", "e", "e", "e", "e", "e", "e", "e", "e", "e", "e", "g", "g", "g", "g",
    // U+0120
    "g", "g", "g", "g", "h", "h", "h", "h", "i", "i", "i", "i", "i", "i", "i", "i",
    // U+0130
    "i", "i", "ij", "ij", "j", "j", "k", "k", "k", "l", "l", "l", "l", "l", "l", "l",
    // U+0140
    "l", "l", "l", "n", "n", "n", "n", "n", "n", "n", "n", "n", "o", "o", "o", "o",
    // U+0150
    "o", "o", "oe", "oe", "r", "r", "r", "r", "r", "r", "s", "s", "s", "s", "s", "s",
    // U+0160
    "s", "s", "t", "t", "t", "t", "t", "t", "u", "u", "u", "u", "u", "u", "u", "u",
    // U+0170
    "u", "u", "u", "u", "w", "w", "y", "y", "y", "z", "z", "z", "z", "z", "z", "s",
};

char32_t toLower(char32_t c) {
    if (c < 0x80) {
        return (c >= 'A' && c <= 'Z') ? c + 32 : c;
    }
    if ((c >= 0xC0 && c <= 0xDE && c != 0xD7)) {
        return c + 0x20;
    }
    if (c >= 0x100 && c <= 0x137) {
        return c | 1;
    }
    if ((c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E)) {
        return (c & 1) ? c + 1 : c;
    }
    if (c >= 0x14A && c <= 0x177) {
        return c | 1;
    }
    if (c == 0x178) {
        return 0xFF;
    }
    if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) {
        return c + 0x20;
    }
    if (c == 0x3C2) {
        return 0x3C3; // final sigma folds to sigma
    }
    if (c >= 0x410 && c <= 0x42F) {
        return c + 0x20;
    }
    if (c >= 0x400 && c <= 0x40F) {
        return c + 0x50;
    }
    return c;
}

bool isSpace(char32_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' ||
           c == 0xA0 || c == 0x1680 || (c >= 0x2000 && c <= 0x200A) || c == 0x2028 ||
           c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000;
}

bool isPunct(char32_t c) {
    if (c < 0x80) {
        return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
               (c >= 0x7B && c <= 0x7E);
    }
    return c == 0xA1 || c == 0xA7 || c == 0xAB || c == 0xB6 || c == 0xB7 || c == 0xBB ||
           c == 0xBF || (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E) ||
           (c >= 0x3001 && c <= 0x303F);
}

bool isCombiningMark(char32_t c) {
    return c >= 0x300 && c <= 0x36F;
}

std::u32string foldCase(std::u32string_view in, bool stripDiacritics) {
    std::u32string out;
    out.reserve(in.size());
    for (char32_t c : in) {
        if (stripDiacritics) {
            if (isCombiningMark(c)) {
                continue;
            }
            if (c >= 0xC0 && c <= 0x17F) {
                const char* base = kLatinBase[c - 0xC0];
                if (*base) {
                    for (const char* p = base; *p; ++p) {
                        out += static_cast<char32_t>(*p);
                    }
                    continue;
                }
            }
        } else if (c == 0xDF) {
            out += U"ss";
            continue;
        }
        out += toLower(c);
    }
    return out;
}

// Trims characters matching `strip` at both ends, collapses inner whitespace runs.
template <typename Pred>
std::u32string trimCollapse(std::u32string_view in, Pred strip) {
    std::size_t b = 0;
    std::size_t e = in.size();
    while (b < e && strip(in[b])) {
        ++b;
    }
    while (e > b && strip(in[e - 1])) {
        --e;
    }
    std::u32string out;
    out.reserve(e - b);
    bool pendingSpace = false;
    for (std::size_t i = b; i < e; ++i) {
        if (isSpace(in[i])) {
            pendingSpace = true;
            continue;
        }
        if (pendingSpace) {
            out += U' ';
            pendingSpace = false;
        }
        out += in[i];
    }
    return out;
}

std::string digitsOnly(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c >= '0' && c <= '9') {
            out += c;
        }
    }
    return out;
}

} // namespace

std::string normalize(std::string_view value, NormalizerKind kind) {
    switch (kind) {
        case NormalizerKind::Name:
        case NormalizerKind::Address: {
            auto folded = foldCase(utf8::decode(value), true);
            return utf8::encode(
                trimCollapse(folded, [](char32_t c) { return isSpace(c) || isPunct(c); }));
        }
        case NormalizerKind::Generic: {
            auto folded = foldCase(utf8::decode(value), false);
            return utf8::encode(trimCollapse(folded, isSpace));
        }
        case NormalizerKind::Phone: {
            auto digits = digitsOnly(value);
            auto nz = digits.find_first_not_of('0');
            return nz == std::string::npos ? std::string{} : digits.substr(nz);
        }
        case NormalizerKind::Year: {
            std::size_t i = 0;
            while (i < value.size()) {
                if (value[i] >= '0' && value[i] <= '9') {
                    std::size_t j = i;
                    while (j < value.size() && value[j] >= '0' && value[j] <= '9') {
                        ++j;
                    }
                    if (j - i >= 4) {
                        return std::string(value.substr(i, 4));
                    }
                    i = j;
                } else {
                    ++i;
                }
            }
            return {};
        }
    }
    return std::string(value);
}

const char* toString(NormalizerKind kind) noexcept {
    switch (kind) {
        case NormalizerKind::Name: return "name";
        case NormalizerKind::Phone: return "phone";
        case NormalizerKind::Address: return "address";
        case NormalizerKind::Year: return "year";
        case NormalizerKind::Generic: return "generic";
    }
    return "generic";
}

std::optional<NormalizerKind> normalizerFromString(std::string_view name) noexcept {
    for (auto k : {NormalizerKind::Name, NormalizerKind::Phone, NormalizerKind::Address,
                   NormalizerKind::Year, NormalizerKind::Generic}) {
        if (name == toString(k)) {
            return k;
        }
    }
    return std::nullopt;
}

NormalizerKind inferNormalizer(std::string_view property) noexcept {
    std::string p(property);
    std::transform(p.begin(), p.end(), p.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    auto has = [&](std::string_view s) { return p.find(s) != std::string::npos; };
    if (has("phone")) {
        return NormalizerKind::Phone;
    }
    if (has("address")) {
        return NormalizerKind::Address;
    }
    if (has("year") || has("birth")) {
        return NormalizerKind::Year;
    }
    if (has("name") || has("label")) {
        return NormalizerKind::Name;
    }
    return NormalizerKind::Generic;
}

NormalizerKind normalizerFor(const NormalizerTable& table, std::string_view property) noexcept {
    if (auto it = table.find(property); it != table.end()) {
        return it->second;
    }
    return inferNormalizer(property);
}

} // namespace kgval
