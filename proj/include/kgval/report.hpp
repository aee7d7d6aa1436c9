// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <kgval/pipeline.hpp>

#include <json.hpp>

#include <filesystem>
#include <string>

namespace kgval {

enum class ReportFormat { Json, CsvSummary };

/// Half-up rounding to 4 decimals, as used in every serialized score.
double round4(double x) noexcept;

/// The deterministic part of a report: configuration echo, sources with
/// weights, instances, skipped subjects, summary counts and metrics. Run id,
/// timestamps and timings are left out.
nlohmann::json reportToJson(const ValidationReport& report);

/// reportToJson plus runId, started, finished and timingMs.
nlohmann::json reportWithRunInfo(const ValidationReport& report);

nlohmann::json metricsToJson(const EvaluationSummary& summary);

/// Sorted keys, two-space indent, trailing newline.
std::string canonicalJson(const ValidationReport& report);

/// `subject,confidence,valid`, one row per scored instance.
std::string csvSummary(const ValidationReport& report);

/// Throws std::runtime_error (from the filesystem layer) on I/O failure.
void writeReport(const ValidationReport& report, const std::filesystem::path& path,
                 ReportFormat format);

} // namespace kgval
