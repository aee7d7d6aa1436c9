// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <kgval/confidence.hpp>
#include <kgval/domain.hpp>
#include <kgval/evaluation.hpp>
#include <kgval/matching.hpp>
#include <kgval/similarity.hpp>
#include <kgval/source.hpp>

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kgval {

inline constexpr std::string_view kCacheDirEnv = "VALIDATOR_CACHE_DIR";
inline constexpr std::string_view kDefaultCacheDir = ".validator-cache";

struct InputSpec {
    enum class Kind { Turtle, Sparql };
    Kind kind = Kind::Turtle;
    std::string location; // turtle path or endpoint URL, as written
    std::size_t limit = 1000;
};

struct RunConfig {
    InputSpec input;
    std::string domainSpecPath;
    DomainSpecification ds;
    std::vector<SourceHandle> sources;
    std::optional<std::vector<double>> weights;
    double threshold = kDefaultThreshold;
    std::optional<double> tripleThreshold; // defaults to threshold
    double radiusM = kDefaultRadiusMeters;
    std::map<std::string, SimilarityKind> similarity;
    NormalizerTable normalizers;
    unsigned concurrency = 0; // 0: hardware threads
    std::optional<std::filesystem::path> cacheDir;
    std::optional<std::string> baselinePath;
    std::filesystem::path baseDir; // relative paths resolve against this

    std::filesystem::path resolve(const std::string& path) const;
    double effectiveTripleThreshold() const { return tripleThreshold.value_or(threshold); }
    SimilarityFunction similarityFor(const std::string& property) const;
    unsigned effectiveConcurrency() const;

    /// Throws ConfigError when an invariant does not hold.
    void validate() const;
};

/// Reads the run configuration document. The domain specification may be a
/// path (relative to baseDir) or an inline object. VALIDATOR_CACHE_DIR, when
/// set, overrides "cacheDir". Throws ConfigError.
RunConfig parseRunConfig(const nlohmann::json& doc, const std::filesystem::path& baseDir);
RunConfig loadRunConfig(const std::filesystem::path& path);

/// The configured sources without secrets.
nlohmann::json describeSources(const RunConfig& config);

struct MatchSummary {
    std::string sourceId;
    bool matched = false;
    std::optional<std::string> recordId;
    std::optional<double> distanceM;
    std::size_t candidatesConsidered = 0;
    std::optional<std::string> error;
};

struct InstanceResult {
    InstanceScore score;
    std::vector<MatchSummary> matches;
};

struct ValidationReport {
    std::string runId;
    std::chrono::system_clock::time_point started;
    std::chrono::system_clock::time_point finished;
    nlohmann::json configEcho; // static part of the configuration
    std::vector<std::string> sourceIds;
    std::vector<std::string> sourceKinds;
    std::vector<double> rawWeights;
    double threshold = kDefaultThreshold;
    double tripleThreshold = kDefaultThreshold;
    bool tripleThresholdFollowsThreshold = true;
    std::vector<InstanceResult> instances; // ordered by subject
    std::vector<ExcludedSubject> skipped;  // ordered by subject
    std::optional<EvaluationSummary> metrics;
    std::map<std::string, double> timingMs;
    std::shared_ptr<const Baseline> baseline;

    SourceRegistry registry() const;
    std::vector<InstanceScore> scores() const;
};

/// Full pipeline with sources built from the configuration.
ValidationReport validateKg(const RunConfig& config);

/// Full pipeline against already constructed sources (one per configured
/// source, same order). Per-source and per-instance failures are recorded in
/// the report; only ingestion and configuration errors throw.
ValidationReport validateKg(const RunConfig& config,
                            std::vector<std::shared_ptr<KnowledgeSource>> sources);

/// Scores instances against the sources; the ingestion-free core of validateKg.
ValidationReport validateInstances(const RunConfig& config, const Extraction& extraction,
                                   std::vector<std::shared_ptr<KnowledgeSource>> sources);

/// Recomputes weighted triple scores, instance confidences, classification
/// and metrics from the similarities stored in the report. No source is queried.
ValidationReport rescore(const ValidationReport& report,
                         const std::optional<std::vector<double>>& weights,
                         const std::optional<double>& threshold);

} // namespace kgval
