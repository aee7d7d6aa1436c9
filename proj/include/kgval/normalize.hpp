// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace kgval {

enum class NormalizerKind { Name, Phone, Address, Year, Generic };

/// Deterministic and idempotent canonical form of an attribute value.
///  - Name, Address: case-folded, diacritics removed, leading/trailing
///    punctuation and whitespace stripped, inner whitespace collapsed.
///  - Phone: digits only, leading zeros removed.
///  - Year: the first four digits of the first run of at least four digits.
///  - Generic: case-folded, whitespace trimmed and collapsed.
std::string normalize(std::string_view value, NormalizerKind kind);

const char* toString(NormalizerKind kind) noexcept;
std::optional<NormalizerKind> normalizerFromString(std::string_view name) noexcept;

/// Guess from a property name: *phone* -> Phone, *address* -> Address,
/// *year*/*birth* -> Year, *name*/*label* -> Name, anything else Generic.
NormalizerKind inferNormalizer(std::string_view property) noexcept;

/// Per-property overrides, falling back to inferNormalizer.
using NormalizerTable = std::map<std::string, NormalizerKind, std::less<>>;
NormalizerKind normalizerFor(const NormalizerTable& table, std::string_view property) noexcept;

} // namespace kgval
