// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/sources.hpp>

#include <kgval/errors.hpp>
#include <kgval/http.hpp>
#include <kgval/normalize.hpp>
#include <kgval/sparql.hpp>

#include <spdlog/spdlog.h>

#include <cstdlib>
#include <map>
#include <sstream>

namespace kgval {

namespace {

constexpr auto kRateLimitBackoff = std::chrono::seconds(1);

void appendScalar(std::vector<std::string>& out, const nlohmann::json& v) {
    if (v.is_string()) {
        if (!v.get_ref<const std::string&>().empty()) {
            out.push_back(v.get<std::string>());
        }
    } else if (v.is_number() || v.is_boolean()) {
        out.push_back(v.dump());
    }
}

std::string formatDouble(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

std::optional<double> numberOf(const nlohmann::json& v) {
    if (v.is_number()) {
        return v.get<double>();
    }
    if (v.is_string()) {
        try {
            std::size_t used = 0;
            double d = std::stod(v.get<std::string>(), &used);
            if (used == v.get_ref<const std::string&>().size()) {
                return d;
            }
        } catch (const std::exception&) {
        }
    }
    return std::nullopt;
}

// Runs one HTTP exchange with the error mapping shared by both connectors.
std::string fetch(const SourceHandle& handle, RateLimiter& limiter, const http::Pairs& params,
                  const http::Pairs& headers) {
    for (int attempt = 0;; ++attempt) {
        limiter.acquire();
        http::Response response;
        try {
            response = http::get(handle.endpoint, params, headers, handle.timeout);
        } catch (const Error& e) {
            throw SourceError(handle.id, SourceError::Kind::Network, e.what());
        }
        if (response.status == 200) {
            return response.body;
        }
        if (response.status == 401 || response.status == 403) {
            throw SourceError(handle.id, SourceError::Kind::Auth,
                              "HTTP " + std::to_string(response.status));
        }
        if (response.status == 429) {
            if (attempt == 0) {
                spdlog::warn("source {} is rate limiting, retrying once", handle.id);
                limiter.clock().sleepUntil(limiter.clock().now() + kRateLimitBackoff);
                continue;
            }
            throw SourceError(handle.id, SourceError::Kind::RateLimited, "HTTP 429");
        }
        throw SourceError(handle.id, SourceError::Kind::Network,
                          "HTTP " + std::to_string(response.status));
    }
}

std::optional<std::string> apiKey(const SourceHandle& handle) {
    if (!handle.apiKeyEnv) {
        return std::nullopt;
    }
    const char* value = std::getenv(handle.apiKeyEnv->c_str());
    if (!value || !*value) {
        throw SourceError(handle.id, SourceError::Kind::Auth,
                          "environment variable " + *handle.apiKeyEnv + " is not set");
    }
    return std::string(value);
}

void replaceAll(std::string& text, std::string_view from, std::string_view to) {
    std::size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
        text.replace(pos, from.size(), to);
        pos += to.size();
    }
}

} // namespace

std::vector<SourceRecord> parsePlacesResponse(const std::string& body, const std::string& sourceId,
                                              const DomainSpecification& ds,
                                              const MatchQuery& query) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw SourceError(sourceId, SourceError::Kind::Parse, e.what());
    }
    if (!doc.is_object() || !doc.contains("results") || !doc["results"].is_array()) {
        throw SourceError(sourceId, SourceError::Kind::Parse, "expected {\"results\": [...]}");
    }
    std::vector<SourceRecord> out;
    for (const auto& item : doc["results"]) {
        if (!item.is_object() || !item.contains("name") || !item["name"].is_string()) {
            throw SourceError(sourceId, SourceError::Kind::Parse, "result without a name");
        }
        SourceRecord r;
        if (item.contains("id") && item["id"].is_string()) {
            r.recordId = item["id"].get<std::string>();
        } else if (item.contains("id") && item["id"].is_number()) {
            r.recordId = item["id"].dump();
        } else {
            throw SourceError(sourceId, SourceError::Kind::Parse, "result without an id");
        }
        r.name = item["name"].get<std::string>();
        r.normalizedName = normalize(r.name, NormalizerKind::Name);
        if (item.contains("lat") && item.contains("lon")) {
            auto lat = numberOf(item["lat"]);
            auto lon = numberOf(item["lon"]);
            if (lat && lon && isValidGeo({*lat, *lon})) {
                r.geo = GeoPoint{*lat, *lon};
            }
        }
        AttributeMap raw;
        for (const auto& [key, value] : item.items()) {
            if (key == "id" || key == "lat" || key == "lon") {
                continue;
            }
            auto& dst = raw[key];
            if (value.is_array()) {
                for (const auto& v : value) {
                    appendScalar(dst, v);
                }
            } else {
                appendScalar(dst, value);
            }
        }
        r.properties = applyAliases(raw, sourceId, ds);
        out.push_back(std::move(r));
    }
    sortByDistance(out, query.geo);
    return out;
}

std::vector<SourceRecord> parseSparqlRecords(const std::string& body, const std::string& sourceId,
                                             const DomainSpecification& ds,
                                             const MatchQuery& query) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        throw SourceError(sourceId, SourceError::Kind::Parse, e.what());
    }
    if (!doc.contains("results") || !doc["results"].contains("bindings") ||
        !doc["results"]["bindings"].is_array()) {
        throw SourceError(sourceId, SourceError::Kind::Parse, "no results.bindings");
    }
    std::map<std::string, SourceRecord> byId;
    std::map<std::string, AttributeMap> raw;
    std::vector<std::string> order;
    for (const auto& row : doc["results"]["bindings"]) {
        if (!row.contains("id")) {
            continue;
        }
        auto id = row["id"].value("value", "");
        if (id.empty()) {
            continue;
        }
        auto [it, inserted] = byId.try_emplace(id);
        SourceRecord& r = it->second;
        if (inserted) {
            r.recordId = id;
            order.push_back(id);
        }
        AttributeMap& props = raw[id];
        std::optional<double> lat, lon;
        std::string p, o;
        for (const auto& [var, binding] : row.items()) {
            auto value = binding.value("value", "");
            if (var == "id" || value.empty()) {
                continue;
            }
            if (var == "name") {
                if (r.name.empty()) {
                    r.name = value;
                }
            } else if (var == "lat") {
                lat = numberOf(nlohmann::json(value));
            } else if (var == "lon") {
                lon = numberOf(nlohmann::json(value));
            } else if (var == "p") {
                p = std::string(localName(value));
            } else if (var == "o") {
                o = value;
            } else {
                auto& dst = props[var];
                if (std::find(dst.begin(), dst.end(), value) == dst.end()) {
                    dst.push_back(value);
                }
            }
        }
        if (!p.empty() && !o.empty()) {
            auto& dst = props[p];
            if (std::find(dst.begin(), dst.end(), o) == dst.end()) {
                dst.push_back(o);
            }
        }
        if (lat && lon && !r.geo && isValidGeo({*lat, *lon})) {
            r.geo = GeoPoint{*lat, *lon};
        }
    }
    std::vector<SourceRecord> out;
    for (const auto& id : order) {
        SourceRecord r = std::move(byId[id]);
        r.normalizedName = normalize(r.name, NormalizerKind::Name);
        r.properties = applyAliases(raw[id], sourceId, ds);
        out.push_back(std::move(r));
    }
    sortByDistance(out, query.geo);
    return out;
}

PlacesHttpSource::PlacesHttpSource(SourceHandle handle, const DomainSpecification& ds,
                                   std::shared_ptr<Clock> clock)
    : handle_(std::move(handle)), ds_(ds), limiter_(handle_.rateLimit, std::move(clock)) {}

std::vector<SourceRecord> PlacesHttpSource::search(const MatchQuery& query) {
    http::Pairs params{{"name", query.name}, {"radius", formatDouble(query.radiusM)}};
    if (query.geo) {
        params.emplace_back("lat", formatDouble(query.geo->lat));
        params.emplace_back("lon", formatDouble(query.geo->lon));
    }
    if (auto key = apiKey(handle_)) {
        params.emplace_back("key", *key);
    }
    std::lock_guard lock(requestMutex_);
    auto body = fetch(handle_, limiter_, params, {{"Accept", "application/json"}});
    return parsePlacesResponse(body, handle_.id, ds_, query);
}

SparqlHttpSource::SparqlHttpSource(SourceHandle handle, const DomainSpecification& ds,
                                   std::shared_ptr<Clock> clock)
    : handle_(std::move(handle)), ds_(ds), limiter_(handle_.rateLimit, std::move(clock)) {}

std::string SparqlHttpSource::renderQuery(const MatchQuery& query) const {
    std::string q(handle_.queryTemplate.value_or(std::string(kDefaultSparqlTemplate)));
    replaceAll(q, "{{name}}", sparqlEscape(query.name));
    replaceAll(q, "{{radius}}", formatDouble(query.radiusM));
    replaceAll(q, "{{lat}}", query.geo ? formatDouble(query.geo->lat) : "");
    replaceAll(q, "{{lon}}", query.geo ? formatDouble(query.geo->lon) : "");
    for (const auto& [property, value] : query.extra) {
        replaceAll(q, "{{extra:" + property + "}}", sparqlEscape(value));
    }
    return q;
}

std::vector<SourceRecord> SparqlHttpSource::search(const MatchQuery& query) {
    http::Pairs params{{"query", renderQuery(query)}};
    if (auto key = apiKey(handle_)) {
        params.emplace_back("key", *key);
    }
    std::lock_guard lock(requestMutex_);
    auto body = fetch(handle_, limiter_, params, {{"Accept", "application/sparql-results+json"}});
    return parseSparqlRecords(body, handle_.id, ds_, query);
}

} // namespace kgval
