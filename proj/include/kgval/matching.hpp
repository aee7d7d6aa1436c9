// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <kgval/domain.hpp>
#include <kgval/normalize.hpp>
#include <kgval/source.hpp>

#include <optional>
#include <string>
#include <vector>

namespace kgval {

struct MatchResult {
    std::string sourceId;
    bool matched = false;
    std::optional<SourceRecord> candidate;
    std::optional<double> distanceM; // set iff query and candidate both carry coordinates
    std::size_t candidatesConsidered = 0;
    std::optional<std::string> error;
};

/// Builds the query for one instance from the specification's matching
/// properties. The name is normalized with the name normalizer; other
/// properties use `normalizers`. Only the first value of each property is used.
MatchQuery buildMatchQuery(const Instance& instance, const DomainSpecification& ds,
                           double radiusM, const NormalizerTable& normalizers = {});

/// Picks the strict match among already retrieved candidates: equal normalized
/// name, distance within the radius when both sides have coordinates, and
/// every extra property equal after normalization. Nearest wins, then the
/// smallest record id.
MatchResult selectMatch(const MatchQuery& query, const std::string& sourceId,
                        const std::vector<SourceRecord>& candidates,
                        const NormalizerTable& normalizers = {});

/// Searches the source and selects the strict match. Source failures are
/// reported as matched=false with the error text; they never propagate.
MatchResult matchInstance(const MatchQuery& query, KnowledgeSource& source,
                          const NormalizerTable& normalizers = {});

} // namespace kgval
