// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/pipeline.hpp>

#include <kgval/errors.hpp>

#include "util.hpp"

#include <cstdlib>
#include <set>
#include <thread>

namespace kgval {

namespace {

template <typename T>
T require(const nlohmann::json& doc, const char* key, const char* what) {
    if (!doc.contains(key)) {
        throw ConfigError(std::string("missing '") + key + "' (" + what + ")");
    }
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("'") + key + "' has the wrong type (" + what + ")");
    }
}

template <typename T>
std::optional<T> optionalField(const nlohmann::json& doc, const char* key) {
    if (!doc.contains(key) || doc.at(key).is_null()) {
        return std::nullopt;
    }
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("'") + key + "' has the wrong type");
    }
}

SourceHandle parseSource(const nlohmann::json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("each source must be an object");
    }
    SourceHandle h;
    h.id = require<std::string>(doc, "id", "source id");
    auto kind = require<std::string>(doc, "kind", "source kind");
    auto parsed = sourceKindFromString(kind);
    if (!parsed) {
        throw ConfigError("source '" + h.id + "': unknown kind '" + kind + "'");
    }
    h.kind = *parsed;
    if (auto endpoint = optionalField<std::string>(doc, "endpoint")) {
        h.endpoint = *endpoint;
    } else if (auto path = optionalField<std::string>(doc, "path")) {
        h.endpoint = *path;
    } else {
        throw ConfigError("source '" + h.id + "': missing 'endpoint' or 'path'");
    }
    if (doc.contains("apiKey")) {
        throw ConfigError("source '" + h.id +
                          "': API keys are not accepted in config files, use 'apiKeyEnv'");
    }
    h.apiKeyEnv = optionalField<std::string>(doc, "apiKeyEnv");
    h.rateLimit = optionalField<double>(doc, "rateLimit").value_or(kDefaultRateLimit);
    h.queryTemplate = optionalField<std::string>(doc, "queryTemplate");
    if (auto ms = optionalField<long long>(doc, "timeoutMs")) {
        h.timeout = std::chrono::milliseconds(*ms);
    }
    return h;
}

} // namespace

std::filesystem::path RunConfig::resolve(const std::string& path) const {
    std::filesystem::path p(path);
    if (p.is_relative() && !baseDir.empty()) {
        return baseDir / p;
    }
    return p;
}

SimilarityFunction RunConfig::similarityFor(const std::string& property) const {
    SimilarityFunction f;
    if (auto it = similarity.find(property); it != similarity.end()) {
        f.kind = it->second;
    }
    f.normalizer = normalizerFor(normalizers, property);
    return f;
}

unsigned RunConfig::effectiveConcurrency() const {
    if (concurrency > 0) {
        return concurrency;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void RunConfig::validate() const {
    if (input.location.empty()) {
        throw ConfigError("no input KG configured");
    }
    if (input.kind == InputSpec::Kind::Sparql && input.limit == 0) {
        throw ConfigError("SPARQL input limit must be positive");
    }
    if (sources.empty()) {
        throw ConfigError("at least one knowledge source is required");
    }
    std::set<std::string> ids;
    for (const auto& s : sources) {
        if (s.id.empty() || !ids.insert(s.id).second) {
            throw ConfigError("source ids must be non-empty and unique ('" + s.id + "')");
        }
        if (s.kind != SourceKind::Fixture && !(s.rateLimit > 0.0)) {
            throw ConfigError("source '" + s.id + "': rateLimit must be positive");
        }
    }
    if (weights) {
        if (weights->size() != sources.size()) {
            throw ConfigError("expected " + std::to_string(sources.size()) + " weights, got " +
                              std::to_string(weights->size()));
        }
        for (double w : *weights) {
            if (!(w >= 0.0)) {
                throw ConfigError("weights must be non-negative");
            }
        }
    }
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw ConfigError("threshold must lie in [0, 1]");
    }
    if (tripleThreshold && !(*tripleThreshold >= 0.0 && *tripleThreshold <= 1.0)) {
        throw ConfigError("tripleThreshold must lie in [0, 1]");
    }
    if (!(radiusM > 0.0)) {
        throw ConfigError("radiusM must be positive");
    }
    try {
        ds.validate();
    } catch (const DomainSpecError& e) {
        throw ConfigError(std::string("domain specification: ") + e.what());
    }
}

RunConfig parseRunConfig(const nlohmann::json& doc, const std::filesystem::path& baseDir) {
    if (!doc.is_object()) {
        throw ConfigError("configuration must be a JSON object");
    }
    RunConfig cfg;
    cfg.baseDir = baseDir;

    if (doc.contains("input")) {
        const auto& in = doc.at("input");
        if (in.is_string()) {
            cfg.input.location = in.get<std::string>();
        } else if (in.is_object()) {
            if (auto ttl = optionalField<std::string>(in, "turtle")) {
                cfg.input.location = *ttl;
            } else if (auto endpoint = optionalField<std::string>(in, "sparql")) {
                cfg.input.kind = InputSpec::Kind::Sparql;
                cfg.input.location = *endpoint;
                cfg.input.limit = optionalField<std::size_t>(in, "limit").value_or(1000);
            } else {
                throw ConfigError("'input' needs 'turtle' or 'sparql'");
            }
        } else {
            throw ConfigError("'input' must be a path or an object");
        }
    }

    if (doc.contains("domainSpec")) {
        const auto& ds = doc.at("domainSpec");
        try {
            if (ds.is_string()) {
                cfg.domainSpecPath = ds.get<std::string>();
                cfg.ds = loadDomainSpec(cfg.resolve(cfg.domainSpecPath));
            } else {
                cfg.ds = parseDomainSpec(ds);
            }
        } catch (const DomainSpecError& e) {
            throw ConfigError(std::string("domain specification: ") + e.what());
        }
    }

    if (doc.contains("sources")) {
        if (!doc.at("sources").is_array()) {
            throw ConfigError("'sources' must be an array");
        }
        for (const auto& s : doc.at("sources")) {
            cfg.sources.push_back(parseSource(s));
        }
    }

    cfg.weights = optionalField<std::vector<double>>(doc, "weights");
    cfg.threshold = optionalField<double>(doc, "threshold").value_or(kDefaultThreshold);
    cfg.tripleThreshold = optionalField<double>(doc, "tripleThreshold");
    cfg.radiusM = optionalField<double>(doc, "radiusM").value_or(kDefaultRadiusMeters);
    cfg.concurrency = optionalField<unsigned>(doc, "concurrency").value_or(0);
    cfg.baselinePath = optionalField<std::string>(doc, "baseline");

    if (auto sim = optionalField<std::map<std::string, std::string>>(doc, "similarity")) {
        for (const auto& [property, kind] : *sim) {
            auto parsed = similarityFromString(kind);
            if (!parsed) {
                throw ConfigError("unknown similarity kind '" + kind + "' for " + property);
            }
            cfg.similarity[property] = *parsed;
        }
    }
    if (auto norms = optionalField<std::map<std::string, std::string>>(doc, "normalizers")) {
        for (const auto& [property, kind] : *norms) {
            auto parsed = normalizerFromString(kind);
            if (!parsed) {
                throw ConfigError("unknown normalizer '" + kind + "' for " + property);
            }
            cfg.normalizers[property] = *parsed;
        }
    }

    if (const char* env = std::getenv(std::string(kCacheDirEnv).c_str()); env && *env) {
        cfg.cacheDir = std::filesystem::path(env);
    } else if (auto dir = optionalField<std::string>(doc, "cacheDir")) {
        cfg.cacheDir = cfg.resolve(*dir);
    }
    return cfg;
}

RunConfig loadRunConfig(const std::filesystem::path& path) {
    auto text = detail::readFile(path);
    if (!text) {
        throw ConfigError("cannot read configuration " + path.string());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(*text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parseRunConfig(doc, path.parent_path());
}

nlohmann::json describeSources(const RunConfig& config) {
    auto out = nlohmann::json::array();
    for (const auto& s : config.sources) {
        nlohmann::json entry{{"id", s.id},
                             {"kind", toString(s.kind)},
                             {"endpoint", s.endpoint},
                             {"rateLimit", s.rateLimit},
                             {"auth", s.apiKeyEnv ? nlohmann::json("<elided>") : nlohmann::json()}};
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace kgval
