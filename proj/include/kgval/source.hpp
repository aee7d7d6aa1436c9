// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <kgval/domain.hpp>
#include <kgval/geo.hpp>

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kgval {

inline constexpr double kDefaultRadiusMeters = 500.0;
inline constexpr double kDefaultRateLimit = 5.0;

/// Query sent to every knowledge source for one KG instance. All values are
/// already normalized.
struct MatchQuery {
    std::string name;
    std::optional<GeoPoint> geo;
    double radiusM = kDefaultRadiusMeters;
    std::map<std::string, std::string> extra;

    /// Populated fields among name, geo, and the extra entries.
    std::size_t populatedFields() const;
    /// Throws PreconditionError unless at least two fields are populated and
    /// the radius is positive.
    void validate() const;
    /// Stable serialization, used for cache keys.
    std::string canonical() const;
};

/// One instance of an external source, with properties already mapped to
/// domain specification names.
struct SourceRecord {
    std::string recordId;
    std::string name;
    std::string normalizedName;
    std::optional<GeoPoint> geo;
    AttributeMap properties;

    /// Values for a domain property. The record name stands in for the
    /// specification's name property when the source did not list it.
    std::vector<std::string> values(const std::string& property,
                                    const DomainSpecification& ds) const;

    bool operator==(const SourceRecord&) const = default;
};

nlohmann::json recordToJson(const SourceRecord& record);
SourceRecord recordFromJson(const nlohmann::json& doc);

/// Orders by distance to `origin` (records without coordinates last), then by record id.
void sortByDistance(std::vector<SourceRecord>& records, const std::optional<GeoPoint>& origin);

class KnowledgeSource {
public:
    virtual ~KnowledgeSource() = default;
    virtual const std::string& id() const = 0;
    /// Throws SourceError on failure.
    virtual std::vector<SourceRecord> search(const MatchQuery& query) = 0;
};

enum class SourceKind { Fixture, PlacesHttp, SparqlHttp };

const char* toString(SourceKind kind) noexcept;
std::optional<SourceKind> sourceKindFromString(std::string_view name) noexcept;

/// Configuration of one knowledge source.
struct SourceHandle {
    std::string id;
    SourceKind kind = SourceKind::Fixture;
    std::string endpoint; // URL, or fixture path
    std::optional<std::string> apiKeyEnv;
    double rateLimit = kDefaultRateLimit; // requests per second
    std::optional<std::filesystem::path> cacheDir;
    std::optional<std::string> queryTemplate; // sparql-http only
    std::chrono::milliseconds timeout{15000};
};

/// Builds a ready-to-use source. HTTP kinds are wrapped in the on-disk cache
/// when handle.cacheDir is set. Relative fixture paths resolve against baseDir.
std::shared_ptr<KnowledgeSource> makeSource(const SourceHandle& handle,
                                            const DomainSpecification& ds,
                                            const std::filesystem::path& baseDir = {});

} // namespace kgval
