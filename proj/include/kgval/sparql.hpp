// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <kgval/domain.hpp>
#include <kgval/rdf.hpp>

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>

namespace kgval {

struct SparqlFetchOptions {
    std::chrono::milliseconds timeout{30000};
    // When set, raw endpoint responses are stored here and reused on re-runs.
    std::optional<std::filesystem::path> cacheDir;
};

/// SELECT query returning (?s ?p ?o) for at most `limit` subjects of the
/// target type, plus the outgoing edges of their linked geo nodes.
std::string buildInstanceQuery(const DomainSpecification& ds, std::size_t limit);

/// Converts a SPARQL-JSON result with s/p/o bindings. Blank-node rows are skipped.
KnowledgeGraph triplesFromSparqlJson(const nlohmann::json& results);

/// Throws PreconditionError for limit == 0, EndpointTimeout when the endpoint
/// does not answer in time, NetworkError for any other transport or HTTP failure.
KnowledgeGraph fetchSparql(const std::string& endpoint, const DomainSpecification& ds,
                           std::size_t limit, const SparqlFetchOptions& options = {});

/// Escapes a value for use inside a double-quoted SPARQL string literal.
std::string sparqlEscape(std::string_view value);

} // namespace kgval
