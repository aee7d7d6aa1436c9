// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/matching.hpp>

#include <kgval/errors.hpp>

#include <limits>

namespace kgval {

MatchQuery buildMatchQuery(const Instance& instance, const DomainSpecification& ds,
                           double radiusM, const NormalizerTable& normalizers) {
    MatchQuery q;
    q.radiusM = radiusM;
    for (const auto& property : ds.matchingProperties) {
        if (property == kGeoProperty) {
            q.geo = instance.geo;
            continue;
        }
        auto it = instance.attributes.find(property);
        if (it == instance.attributes.end() || it->second.empty()) {
            continue;
        }
        if (property == ds.nameProperty) {
            q.name = normalize(it->second.front(), NormalizerKind::Name);
        } else {
            auto value = normalize(it->second.front(), normalizerFor(normalizers, property));
            if (!value.empty()) {
                q.extra[property] = std::move(value);
            }
        }
    }
    return q;
}

MatchResult selectMatch(const MatchQuery& query, const std::string& sourceId,
                        const std::vector<SourceRecord>& candidates,
                        const NormalizerTable& normalizers) {
    MatchResult result;
    result.sourceId = sourceId;
    result.candidatesConsidered = candidates.size();

    const SourceRecord* best = nullptr;
    std::optional<double> bestDistance;
    auto rank = [](const std::optional<double>& d) {
        return d ? *d : std::numeric_limits<double>::infinity();
    };

    for (const auto& c : candidates) {
        if (!query.name.empty() && c.normalizedName != query.name) {
            continue;
        }
        std::optional<double> distance;
        if (query.geo && c.geo) {
            distance = haversineMeters(*query.geo, *c.geo);
            if (*distance > query.radiusM) {
                continue;
            }
        }
        bool extrasOk = true;
        for (const auto& [property, expected] : query.extra) {
            auto kind = normalizerFor(normalizers, property);
            bool found = false;
            if (auto it = c.properties.find(property); it != c.properties.end()) {
                for (const auto& v : it->second) {
                    if (normalize(v, kind) == expected) {
                        found = true;
                        break;
                    }
                }
            }
            if (!found) {
                extrasOk = false;
                break;
            }
        }
        if (!extrasOk) {
            continue;
        }
        if (!best || rank(distance) < rank(bestDistance) ||
            (rank(distance) == rank(bestDistance) && c.recordId < best->recordId)) {
            best = &c;
            bestDistance = distance;
        }
    }

    if (best) {
        result.matched = true;
        result.candidate = *best;
        result.distanceM = bestDistance;
    }
    return result;
}

MatchResult matchInstance(const MatchQuery& query, KnowledgeSource& source,
                          const NormalizerTable& normalizers) {
    query.validate();
    std::vector<SourceRecord> candidates;
    try {
        candidates = source.search(query);
    } catch (const std::exception& e) {
        MatchResult failed;
        failed.sourceId = source.id();
        failed.error = e.what();
        return failed;
    }
    return selectMatch(query, source.id(), candidates, normalizers);
}

} // namespace kgval
