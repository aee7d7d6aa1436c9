// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <kgval/geo.hpp>
#include <kgval/rdf.hpp>

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kgval {

using AttributeMap = std::map<std::string, std::vector<std::string>>;

/// Reserved property name. Listing it in a domain specification makes the
/// coordinates available for matching; it is never scored as an attribute.
inline constexpr std::string_view kGeoProperty = "geo";

/// Alias table key used for the input KG's own predicate names.
inline constexpr std::string_view kKgSourceId = "kg";

struct DomainSpecification {
    std::string name;
    std::string targetType;
    std::vector<std::string> properties;
    std::vector<std::string> matchingProperties;
    // source-id -> (alias -> property)
    std::map<std::string, std::map<std::string, std::string>> aliases;
    // Namespace used to build full IRIs for targetType when it is not absolute.
    std::string vocabulary = "http://schema.org/";
    std::string nameProperty = "name";

    bool hasProperty(std::string_view property) const;
    bool isMatchingProperty(std::string_view property) const;
    /// Properties that are scored (everything except geo), in declaration order.
    std::vector<std::string> scoredProperties() const;
    std::string targetTypeIri() const;

    /// Throws DomainSpecError when an invariant does not hold.
    void validate() const;
};

DomainSpecification parseDomainSpec(const nlohmann::json& doc);
DomainSpecification loadDomainSpec(const std::filesystem::path& path);
nlohmann::json domainSpecToJson(const DomainSpecification& ds);

struct Instance {
    Iri id;
    std::string type;
    AttributeMap attributes;
    std::optional<GeoPoint> geo;

    /// Number of distinct properties with at least one value (M).
    std::size_t attributeCount() const;
    /// Count of matching properties with a value, geo included.
    std::size_t populatedMatchingProperties(const DomainSpecification& ds) const;
};

struct ExcludedSubject {
    Iri subject;
    std::string reason;
};

struct Extraction {
    std::vector<Instance> instances;
    std::vector<ExcludedSubject> excluded;
};

inline constexpr std::string_view kReasonInsufficientMatching = "insufficient matching properties";
inline constexpr std::string_view kReasonEmptyAttributes = "empty attribute space";

/// Projects the KG onto the domain specification. Subjects are typed by the
/// local name or full IRI of their rdf:type. Predicates are mapped through the
/// "kg" alias table. Coordinates are read from flat latitude/longitude
/// predicates or from a node linked by a `geo` predicate. Output is ordered by
/// subject IRI.
Extraction extractInstances(const KnowledgeGraph& kg, const DomainSpecification& ds);

/// Renames alias keys to their canonical properties and drops keys that are
/// neither a property nor a known alias. Values are never modified; values
/// landing on the same property are concatenated without duplicates.
AttributeMap applyAliases(const AttributeMap& raw, std::string_view sourceId,
                          const DomainSpecification& ds);

} // namespace kgval
