// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/domain.hpp>

#include <kgval/errors.hpp>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <unordered_map>

namespace kgval {

namespace {

std::string trim(std::string_view s) {
    const char* ws = " \t\r\n\f\v";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

void addUnique(std::vector<std::string>& values, std::string v) {
    if (std::find(values.begin(), values.end(), v) == values.end()) {
        values.push_back(std::move(v));
    }
}

std::optional<double> toDouble(std::string_view s) {
    double v = 0;
    auto t = trim(s);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        return std::nullopt;
    }
    return v;
}

std::vector<std::string> stringArray(const nlohmann::json& doc, const char* key, bool required) {
    std::vector<std::string> out;
    if (!doc.contains(key)) {
        if (required) {
            throw DomainSpecError(std::string("missing '") + key + "'");
        }
        return out;
    }
    const auto& arr = doc.at(key);
    if (!arr.is_array()) {
        throw DomainSpecError(std::string("'") + key + "' must be an array of strings");
    }
    for (const auto& v : arr) {
        if (!v.is_string()) {
            throw DomainSpecError(std::string("'") + key + "' must be an array of strings");
        }
        out.push_back(v.get<std::string>());
    }
    return out;
}

} // namespace

bool DomainSpecification::hasProperty(std::string_view property) const {
    return std::find(properties.begin(), properties.end(), property) != properties.end();
}

bool DomainSpecification::isMatchingProperty(std::string_view property) const {
    return std::find(matchingProperties.begin(), matchingProperties.end(), property) !=
           matchingProperties.end();
}

std::vector<std::string> DomainSpecification::scoredProperties() const {
    std::vector<std::string> out;
    for (const auto& p : properties) {
        if (p != kGeoProperty) {
            out.push_back(p);
        }
    }
    return out;
}

std::string DomainSpecification::targetTypeIri() const {
    if (targetType.find("://") != std::string::npos) {
        return targetType;
    }
    return vocabulary + targetType;
}

void DomainSpecification::validate() const {
    if (targetType.empty()) {
        throw DomainSpecError("targetType must not be empty");
    }
    if (properties.empty()) {
        throw DomainSpecError("properties must not be empty");
    }
    std::set<std::string> seen;
    for (const auto& p : properties) {
        if (p.empty() || !seen.insert(p).second) {
            throw DomainSpecError("properties must be non-empty and unique: '" + p + "'");
        }
    }
    std::set<std::string> matching(matchingProperties.begin(), matchingProperties.end());
    if (matching.size() < 2) {
        throw DomainSpecError("at least two distinct matching properties are required");
    }
    for (const auto& p : matchingProperties) {
        if (!hasProperty(p)) {
            throw DomainSpecError("matching property '" + p + "' is not a declared property");
        }
    }
    for (const auto& [source, table] : aliases) {
        std::set<std::string> targets;
        for (const auto& [alias, property] : table) {
            if (!hasProperty(property)) {
                throw DomainSpecError("alias '" + alias + "' of source '" + source +
                                      "' maps to undeclared property '" + property + "'");
            }
            if (!targets.insert(property).second) {
                throw DomainSpecError("alias table of source '" + source +
                                      "' is not injective on '" + property + "'");
            }
        }
    }
}

DomainSpecification parseDomainSpec(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw DomainSpecError("domain specification must be a JSON object");
    }
    DomainSpecification ds;
    try {
        ds.name = doc.value("name", std::string{});
        ds.targetType = doc.at("targetType").get<std::string>();
        ds.vocabulary = doc.value("vocabulary", ds.vocabulary);
        ds.nameProperty = doc.value("nameProperty", ds.nameProperty);
    } catch (const nlohmann::json::exception& e) {
        throw DomainSpecError(std::string("invalid domain specification: ") + e.what());
    }
    ds.properties = stringArray(doc, "properties", true);
    ds.matchingProperties = stringArray(doc, "matchingProperties", true);
    if (doc.contains("aliases")) {
        const auto& aliases = doc.at("aliases");
        if (!aliases.is_object()) {
            throw DomainSpecError("'aliases' must be an object");
        }
        for (const auto& [source, table] : aliases.items()) {
            if (!table.is_object()) {
                throw DomainSpecError("aliases of '" + source + "' must be an object");
            }
            auto& dst = ds.aliases[source];
            for (const auto& [alias, property] : table.items()) {
                if (!property.is_string()) {
                    throw DomainSpecError("alias '" + alias + "' must map to a string");
                }
                dst[alias] = property.get<std::string>();
            }
        }
    }
    ds.validate();
    return ds;
}

DomainSpecification loadDomainSpec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainSpecError("cannot open domain specification " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DomainSpecError(path.string() + ": " + e.what());
    }
    return parseDomainSpec(doc);
}

nlohmann::json domainSpecToJson(const DomainSpecification& ds) {
    return {{"name", ds.name},
            {"targetType", ds.targetType},
            {"properties", ds.properties},
            {"matchingProperties", ds.matchingProperties},
            {"aliases", ds.aliases},
            {"vocabulary", ds.vocabulary},
            {"nameProperty", ds.nameProperty}};
}

std::size_t Instance::attributeCount() const {
    return static_cast<std::size_t>(std::count_if(
        attributes.begin(), attributes.end(), [](const auto& kv) { return !kv.second.empty(); }));
}

std::size_t Instance::populatedMatchingProperties(const DomainSpecification& ds) const {
    std::size_t n = 0;
    for (const auto& p : ds.matchingProperties) {
        if (p == kGeoProperty) {
            n += geo.has_value() ? 1 : 0;
        } else if (auto it = attributes.find(p); it != attributes.end() && !it->second.empty()) {
            ++n;
        }
    }
    return n;
}

AttributeMap applyAliases(const AttributeMap& raw, std::string_view sourceId,
                          const DomainSpecification& ds) {
    const std::map<std::string, std::string>* table = nullptr;
    if (auto it = ds.aliases.find(std::string(sourceId)); it != ds.aliases.end()) {
        table = &it->second;
    }
    AttributeMap out;
    for (const auto& [key, values] : raw) {
        std::string target;
        if (ds.hasProperty(key)) {
            target = key;
        } else if (table) {
            if (auto a = table->find(key); a != table->end()) {
                target = a->second;
            }
        }
        if (target.empty()) {
            continue;
        }
        auto& dst = out[target];
        for (const auto& v : values) {
            addUnique(dst, v);
        }
    }
    return out;
}

Extraction extractInstances(const KnowledgeGraph& kg, const DomainSpecification& ds) {
    // Group outgoing edges per subject.
    std::unordered_map<std::string, std::vector<const Triple*>> bySubject;
    for (const auto& t : kg.triples) {
        bySubject[t.subject.value].push_back(&t);
    }

    const std::string typeIri = ds.targetTypeIri();
    auto isTarget = [&](const Term& type) {
        return type.isIri() && (type.value == typeIri || localName(type.value) == ds.targetType);
    };

    std::vector<std::string> subjects;
    for (const auto& [subject, edges] : bySubject) {
        bool typed = std::any_of(edges.begin(), edges.end(), [&](const Triple* t) {
            return t->predicate.value == kRdfType && isTarget(t->object);
        });
        if (typed) {
            subjects.push_back(subject);
        }
    }
    std::sort(subjects.begin(), subjects.end());

    auto readGeo = [&](const std::vector<const Triple*>& edges) -> std::optional<GeoPoint> {
        std::optional<double> lat, lon;
        for (const Triple* t : edges) {
            if (t->object.isIri()) {
                continue;
            }
            auto name = localName(t->predicate.value);
            if (name == "latitude" && !lat) {
                lat = toDouble(t->object.value);
            } else if (name == "longitude" && !lon) {
                lon = toDouble(t->object.value);
            }
        }
        if (lat && lon) {
            GeoPoint p{*lat, *lon};
            if (isValidGeo(p)) {
                return p;
            }
        }
        return std::nullopt;
    };

    Extraction result;
    for (const auto& subject : subjects) {
        const auto& edges = bySubject.at(subject);
        Instance inst;
        inst.id = Iri{subject};
        inst.type = ds.targetType;

        AttributeMap raw;
        for (const Triple* t : edges) {
            if (t->predicate.value == kRdfType || t->object.isIri()) {
                continue;
            }
            auto value = trim(t->object.value);
            if (!value.empty()) {
                addUnique(raw[std::string(localName(t->predicate.value))], std::move(value));
            }
        }
        inst.attributes = applyAliases(raw, kKgSourceId, ds);
        inst.attributes.erase(std::string(kGeoProperty));

        inst.geo = readGeo(edges);
        if (!inst.geo) {
            for (const Triple* t : edges) {
                if (t->object.isIri() && localName(t->predicate.value) == kGeoProperty) {
                    if (auto node = bySubject.find(t->object.value); node != bySubject.end()) {
                        inst.geo = readGeo(node->second);
                        if (inst.geo) {
                            break;
                        }
                    }
                }
            }
        }

        if (inst.populatedMatchingProperties(ds) == 0) {
            spdlog::debug("excluding {}: no matching property populated", subject);
            result.excluded.push_back({inst.id, std::string(kReasonInsufficientMatching)});
            continue;
        }
        result.instances.push_back(std::move(inst));
    }
    return result;
}

} // namespace kgval
