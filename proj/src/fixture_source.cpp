// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/sources.hpp>

#include <kgval/errors.hpp>
#include <kgval/normalize.hpp>

#include "util.hpp"

namespace kgval {

FixtureSnapshot parseFixture(const nlohmann::json& doc, const std::string& origin) {
    auto fail = [&](const std::string& detail) -> FixtureFormatError {
        return FixtureFormatError(origin, detail);
    };
    if (!doc.is_object()) {
        throw fail("top level must be an object");
    }
    FixtureSnapshot snap;
    if (!doc.contains("sourceId") || !doc["sourceId"].is_string()) {
        throw fail("missing string 'sourceId'");
    }
    snap.sourceId = doc["sourceId"].get<std::string>();
    if (!doc.contains("records") || !doc["records"].is_array()) {
        throw fail("missing array 'records'");
    }
    std::size_t index = 0;
    for (const auto& rec : doc["records"]) {
        const std::string where = "record " + std::to_string(index++);
        if (!rec.is_object()) {
            throw fail(where + " is not an object");
        }
        SourceRecord r;
        if (!rec.contains("id") || !rec["id"].is_string() || rec["id"].get<std::string>().empty()) {
            throw fail(where + ": missing non-empty string 'id'");
        }
        r.recordId = rec["id"].get<std::string>();
        if (!rec.contains("name") || !rec["name"].is_string()) {
            throw fail(where + " (" + r.recordId + "): missing string 'name'");
        }
        r.name = rec["name"].get<std::string>();
        r.normalizedName = normalize(r.name, NormalizerKind::Name);
        const bool hasLat = rec.contains("lat") && !rec["lat"].is_null();
        const bool hasLon = rec.contains("lon") && !rec["lon"].is_null();
        if (hasLat != hasLon) {
            throw fail(where + " (" + r.recordId + "): 'lat' and 'lon' must appear together");
        }
        if (hasLat) {
            if (!rec["lat"].is_number() || !rec["lon"].is_number()) {
                throw fail(where + " (" + r.recordId + "): coordinates must be numbers");
            }
            GeoPoint p{rec["lat"].get<double>(), rec["lon"].get<double>()};
            if (!isValidGeo(p)) {
                throw fail(where + " (" + r.recordId + "): coordinates out of range");
            }
            r.geo = p;
        }
        if (rec.contains("properties")) {
            const auto& props = rec["properties"];
            if (!props.is_object()) {
                throw fail(where + " (" + r.recordId + "): 'properties' must be an object");
            }
            for (const auto& [key, values] : props.items()) {
                if (!values.is_array()) {
                    throw fail(where + " (" + r.recordId + "): property '" + key +
                               "' must be an array of strings");
                }
                auto& dst = r.properties[key];
                for (const auto& v : values) {
                    if (!v.is_string()) {
                        throw fail(where + " (" + r.recordId + "): property '" + key +
                                   "' must be an array of strings");
                    }
                    dst.push_back(v.get<std::string>());
                }
            }
        }
        snap.records.push_back(std::move(r));
    }
    return snap;
}

FixtureSnapshot loadFixture(const std::filesystem::path& path) {
    auto text = detail::readFile(path);
    if (!text) {
        throw FixtureFormatError(path.string(), "cannot read file");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(*text);
    } catch (const nlohmann::json::exception& e) {
        throw FixtureFormatError(path.string(), e.what());
    }
    return parseFixture(doc, path.string());
}

FixtureSource::FixtureSource(FixtureSnapshot snapshot, const DomainSpecification& ds,
                             std::string id)
    : id_(id.empty() ? snapshot.sourceId : std::move(id)), records_(std::move(snapshot.records)) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
        auto& r = records_[i];
        r.properties = applyAliases(r.properties, id_, ds);
        byName_[r.normalizedName].push_back(i);
    }
}

std::vector<SourceRecord> FixtureSource::search(const MatchQuery& query) {
    std::vector<SourceRecord> out;
    auto consider = [&](const SourceRecord& r) {
        if (query.geo && r.geo && haversineMeters(*query.geo, *r.geo) > query.radiusM) {
            return;
        }
        out.push_back(r);
    };
    if (query.name.empty()) {
        for (const auto& r : records_) {
            consider(r);
        }
    } else if (auto it = byName_.find(query.name); it != byName_.end()) {
        for (auto i : it->second) {
            consider(records_[i]);
        }
    }
    sortByDistance(out, query.geo);
    return out;
}

} // namespace kgval
