// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/sparql.hpp>

#include <kgval/errors.hpp>
#include <kgval/http.hpp>

#include "util.hpp"

#include <spdlog/spdlog.h>

namespace kgval {

std::string sparqlEscape(std::string_view value) {
    std::string out;
    out.reserve(value.size());
    for (char c : value) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

std::string buildInstanceQuery(const DomainSpecification& ds, std::size_t limit) {
    const std::string type = "<" + ds.targetTypeIri() + ">";
    const std::string geo = "<" + ds.vocabulary + std::string(kGeoProperty) + ">";
    std::string q;
    q += "SELECT ?s ?p ?o WHERE {\n";
    q += "  { SELECT DISTINCT ?i WHERE { ?i a " + type + " } ORDER BY ?i LIMIT " +
         std::to_string(limit) + " }\n";
    q += "  { ?i ?p ?o . BIND(?i AS ?s) }\n";
    q += "  UNION\n";
    q += "  { ?i " + geo + " ?s . ?s ?p ?o }\n";
    q += "}";
    return q;
}

KnowledgeGraph triplesFromSparqlJson(const nlohmann::json& results) {
    KnowledgeGraph kg;
    kg.origin = KnowledgeGraph::Origin::SparqlEndpoint;
    if (!results.contains("results") || !results["results"].contains("bindings")) {
        throw NetworkError("malformed SPARQL-JSON response: no results.bindings");
    }
    for (const auto& row : results["results"]["bindings"]) {
        if (!row.contains("s") || !row.contains("p") || !row.contains("o")) {
            continue;
        }
        const auto& s = row["s"];
        const auto& p = row["p"];
        const auto& o = row["o"];
        if (s.value("type", "") != "uri" || p.value("type", "") != "uri") {
            continue;
        }
        auto otype = o.value("type", "");
        Term object;
        if (otype == "uri") {
            object = Term::iri(o.value("value", ""));
        } else if (otype == "literal" || otype == "typed-literal") {
            object = Term::literal(o.value("value", ""));
        } else {
            continue;
        }
        if (object.value.empty()) {
            continue;
        }
        kg.triples.push_back(
            Triple{Iri{s.value("value", "")}, Iri{p.value("value", "")}, std::move(object)});
    }
    dedupTriples(kg.triples);
    return kg;
}

KnowledgeGraph fetchSparql(const std::string& endpoint, const DomainSpecification& ds,
                           std::size_t limit, const SparqlFetchOptions& options) {
    if (limit == 0) {
        throw PreconditionError("SPARQL fetch limit must be positive");
    }
    const auto query = buildInstanceQuery(ds, limit);

    std::optional<std::filesystem::path> cacheFile;
    if (options.cacheDir) {
        cacheFile = *options.cacheDir / ("sparql-" + detail::sha256Hex(endpoint + "\n" + query) +
                                         ".json");
        if (auto cached = detail::readFile(*cacheFile)) {
            try {
                return triplesFromSparqlJson(nlohmann::json::parse(*cached));
            } catch (const std::exception& e) {
                spdlog::warn("ignoring unreadable SPARQL cache entry {}: {}", cacheFile->string(),
                             e.what());
            }
        }
    }

    auto response = http::get(endpoint, {{"query", query}},
                              {{"Accept", "application/sparql-results+json"}}, options.timeout);
    if (response.status == 408 || response.status == 504) {
        throw EndpointTimeout("endpoint " + endpoint + " timed out (HTTP " +
                              std::to_string(response.status) + ")");
    }
    if (response.status != 200) {
        throw NetworkError("endpoint " + endpoint + " answered HTTP " +
                           std::to_string(response.status));
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(response.body);
    } catch (const nlohmann::json::exception& e) {
        throw NetworkError("endpoint " + endpoint + " returned invalid JSON: " + e.what());
    }
    auto kg = triplesFromSparqlJson(doc);

    if (cacheFile) {
        try {
            std::filesystem::create_directories(cacheFile->parent_path());
            detail::writeFileAtomic(*cacheFile, response.body);
        } catch (const std::exception& e) {
            spdlog::warn("cannot cache SPARQL response: {}", e.what());
        }
    }
    return kg;
}

} // namespace kgval
