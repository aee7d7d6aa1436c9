// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/source.hpp>

#include <kgval/errors.hpp>
#include <kgval/normalize.hpp>
#include <kgval/sources.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace kgval {

std::size_t MatchQuery::populatedFields() const {
    std::size_t n = name.empty() ? 0 : 1;
    n += geo ? 1 : 0;
    for (const auto& [k, v] : extra) {
        n += v.empty() ? 0 : 1;
    }
    return n;
}

void MatchQuery::validate() const {
    if (!(radiusM > 0.0)) {
        throw PreconditionError("match radius must be positive");
    }
    if (populatedFields() < 2) {
        throw PreconditionError("a match query needs at least two populated fields");
    }
}

std::string MatchQuery::canonical() const {
    nlohmann::json doc;
    doc["name"] = name;
    doc["radiusM"] = radiusM;
    doc["extra"] = extra;
    if (geo) {
        doc["lat"] = geo->lat;
        doc["lon"] = geo->lon;
    } else {
        doc["lat"] = nullptr;
        doc["lon"] = nullptr;
    }
    return doc.dump();
}

std::vector<std::string> SourceRecord::values(const std::string& property,
                                              const DomainSpecification& ds) const {
    if (auto it = properties.find(property); it != properties.end() && !it->second.empty()) {
        return it->second;
    }
    if (property == ds.nameProperty && !name.empty()) {
        return {name};
    }
    return {};
}

nlohmann::json recordToJson(const SourceRecord& record) {
    nlohmann::json doc{{"id", record.recordId},
                       {"name", record.name},
                       {"properties", record.properties}};
    if (record.geo) {
        doc["lat"] = record.geo->lat;
        doc["lon"] = record.geo->lon;
    }
    return doc;
}

SourceRecord recordFromJson(const nlohmann::json& doc) {
    SourceRecord r;
    r.recordId = doc.at("id").get<std::string>();
    r.name = doc.at("name").get<std::string>();
    r.normalizedName = normalize(r.name, NormalizerKind::Name);
    if (doc.contains("lat") && doc.contains("lon")) {
        r.geo = GeoPoint{doc.at("lat").get<double>(), doc.at("lon").get<double>()};
    }
    if (doc.contains("properties")) {
        r.properties = doc.at("properties").get<AttributeMap>();
    }
    return r;
}

void sortByDistance(std::vector<SourceRecord>& records, const std::optional<GeoPoint>& origin) {
    auto distance = [&](const SourceRecord& r) {
        if (!origin || !r.geo || !isValidGeo(*r.geo)) {
            return std::numeric_limits<double>::infinity();
        }
        return haversineMeters(*origin, *r.geo);
    };
    std::vector<std::pair<double, std::size_t>> keys;
    keys.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        keys.emplace_back(distance(records[i]), i);
    }
    std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return records[a.second].recordId < records[b.second].recordId;
    });
    std::vector<SourceRecord> out;
    out.reserve(records.size());
    for (const auto& [d, i] : keys) {
        out.push_back(std::move(records[i]));
    }
    records = std::move(out);
}

const char* toString(SourceKind kind) noexcept {
    switch (kind) {
        case SourceKind::Fixture: return "fixture";
        case SourceKind::PlacesHttp: return "places-http";
        case SourceKind::SparqlHttp: return "sparql-http";
    }
    return "fixture";
}

std::optional<SourceKind> sourceKindFromString(std::string_view name) noexcept {
    for (auto k : {SourceKind::Fixture, SourceKind::PlacesHttp, SourceKind::SparqlHttp}) {
        if (name == toString(k)) {
            return k;
        }
    }
    return std::nullopt;
}

std::shared_ptr<KnowledgeSource> makeSource(const SourceHandle& handle,
                                            const DomainSpecification& ds,
                                            const std::filesystem::path& baseDir) {
    switch (handle.kind) {
        case SourceKind::Fixture: {
            std::filesystem::path path = handle.endpoint;
            if (path.is_relative() && !baseDir.empty()) {
                path = baseDir / path;
            }
            auto snapshot = loadFixture(path);
            return std::make_shared<FixtureSource>(std::move(snapshot), ds, handle.id);
        }
        case SourceKind::PlacesHttp:
        case SourceKind::SparqlHttp: {
            if (!(handle.rateLimit > 0.0)) {
                throw PreconditionError("rate limit of source '" + handle.id +
                                        "' must be positive");
            }
            std::shared_ptr<KnowledgeSource> source;
            if (handle.kind == SourceKind::PlacesHttp) {
                source = std::make_shared<PlacesHttpSource>(handle, ds);
            } else {
                source = std::make_shared<SparqlHttpSource>(handle, ds);
            }
            if (handle.cacheDir) {
                source = std::make_shared<CachedSource>(std::move(source), *handle.cacheDir);
            }
            return source;
        }
    }
    throw PreconditionError("unknown source kind");
}

} // namespace kgval
