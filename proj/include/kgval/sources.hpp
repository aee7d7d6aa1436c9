// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <kgval/source.hpp>

#include <chrono>
#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace kgval {

// --- fixture snapshots -----------------------------------------------------

struct FixtureSnapshot {
    std::string sourceId;
    std::vector<SourceRecord> records; // properties hold the raw (pre-alias) keys
};

/// Reads {"sourceId", "records": [{"id", "name", "lat"?, "lon"?, "properties"?}]}.
/// Throws FixtureFormatError on any schema violation.
FixtureSnapshot loadFixture(const std::filesystem::path& path);
FixtureSnapshot parseFixture(const nlohmann::json& doc, const std::string& origin);

/// Immutable in-memory source backed by a fixture snapshot.
class FixtureSource final : public KnowledgeSource {
public:
    /// `id` overrides the snapshot's sourceId when non-empty. Record
    /// properties are alias-mapped with the effective id.
    FixtureSource(FixtureSnapshot snapshot, const DomainSpecification& ds, std::string id = {});

    const std::string& id() const override { return id_; }
    std::size_t size() const noexcept { return records_.size(); }

    /// Records whose normalized name equals the query name and, when both
    /// sides have coordinates, lie within the query radius.
    std::vector<SourceRecord> search(const MatchQuery& query) override;

private:
    std::string id_;
    std::vector<SourceRecord> records_;
    std::unordered_map<std::string, std::vector<std::size_t>> byName_;
};

// --- request pacing --------------------------------------------------------

class Clock {
public:
    using TimePoint = std::chrono::steady_clock::time_point;
    virtual ~Clock() = default;
    virtual TimePoint now() = 0;
    virtual void sleepUntil(TimePoint t) = 0;
};

std::shared_ptr<Clock> systemClock();

/// Sliding-window limiter: within any window of one second (or 1/rate seconds
/// for rates below one) at most max(1, floor(rate)) requests pass.
class RateLimiter {
public:
    explicit RateLimiter(double perSecond, std::shared_ptr<Clock> clock = systemClock());

    /// Blocks until a request may be issued and records it.
    void acquire();

    Clock& clock() noexcept { return *clock_; }

private:
    std::shared_ptr<Clock> clock_;
    std::chrono::nanoseconds window_;
    std::size_t capacity_;
    std::deque<Clock::TimePoint> issued_;
    std::mutex mutex_;
};

// --- HTTP connectors -------------------------------------------------------

/// Parses the generic places payload {results: [{id, name, lat, lon, ...}]}.
/// Every other field becomes a raw property and is alias-mapped for sourceId.
std::vector<SourceRecord> parsePlacesResponse(const std::string& body, const std::string& sourceId,
                                              const DomainSpecification& ds,
                                              const MatchQuery& query);

/// Groups SPARQL-JSON rows by ?id. ?name, ?lat, ?lon fill the record fields,
/// ?p/?o pairs and any other variables become raw properties.
std::vector<SourceRecord> parseSparqlRecords(const std::string& body, const std::string& sourceId,
                                             const DomainSpecification& ds,
                                             const MatchQuery& query);

/// Nearby-search style JSON API: GET endpoint?name=&lat=&lon=&radius=[&key=].
class PlacesHttpSource final : public KnowledgeSource {
public:
    PlacesHttpSource(SourceHandle handle, const DomainSpecification& ds,
                     std::shared_ptr<Clock> clock = systemClock());

    const std::string& id() const override { return handle_.id; }
    std::vector<SourceRecord> search(const MatchQuery& query) override;

private:
    SourceHandle handle_;
    DomainSpecification ds_;
    RateLimiter limiter_;
    std::mutex requestMutex_;
};

inline constexpr std::string_view kDefaultSparqlTemplate =
    "PREFIX rdfs: <http://www.w3.org/2000/01/rdf-schema#>\n"
    "SELECT ?id ?name ?p ?o WHERE {\n"
    "  ?id rdfs:label ?name .\n"
    "  FILTER(LCASE(STR(?name)) = \"{{name}}\")\n"
    "  ?id ?p ?o .\n"
    "} LIMIT 500";

/// SPARQL endpoint queried with a template. Placeholders: {{name}}, {{lat}},
/// {{lon}}, {{radius}}, and {{extra:<property>}}; all are escaped for use in
/// string literals.
class SparqlHttpSource final : public KnowledgeSource {
public:
    SparqlHttpSource(SourceHandle handle, const DomainSpecification& ds,
                     std::shared_ptr<Clock> clock = systemClock());

    const std::string& id() const override { return handle_.id; }
    std::vector<SourceRecord> search(const MatchQuery& query) override;

    std::string renderQuery(const MatchQuery& query) const;

private:
    SourceHandle handle_;
    DomainSpecification ds_;
    RateLimiter limiter_;
    std::mutex requestMutex_;
};

// --- response cache --------------------------------------------------------

/// Memoizes another source on disk: one JSON file per (source id, query).
/// Unreadable entries are re-fetched and overwritten; cache I/O failures fall
/// back to the wrapped source with a warning.
class CachedSource final : public KnowledgeSource {
public:
    CachedSource(std::shared_ptr<KnowledgeSource> inner, std::filesystem::path dir);

    const std::string& id() const override { return inner_->id(); }
    std::vector<SourceRecord> search(const MatchQuery& query) override;

    std::filesystem::path entryPath(const MatchQuery& query) const;

private:
    std::shared_ptr<KnowledgeSource> inner_;
    std::filesystem::path dir_;
};

} // namespace kgval
