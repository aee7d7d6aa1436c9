// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace kgval::detail {

std::string sha256Hex(std::string_view data);

std::optional<std::string> readFile(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over the target.
void writeFileAtomic(const std::filesystem::path& path, std::string_view content);

std::string isoTimestamp(std::chrono::system_clock::time_point tp);

} // namespace kgval::detail
