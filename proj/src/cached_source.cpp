// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/sources.hpp>

#include "util.hpp"

#include <spdlog/spdlog.h>

namespace kgval {

CachedSource::CachedSource(std::shared_ptr<KnowledgeSource> inner, std::filesystem::path dir)
    : inner_(std::move(inner)), dir_(std::move(dir)) {}

std::filesystem::path CachedSource::entryPath(const MatchQuery& query) const {
    auto key = detail::sha256Hex(inner_->id() + "\n" + query.canonical());
    return dir_ / (key + ".json");
}

std::vector<SourceRecord> CachedSource::search(const MatchQuery& query) {
    const auto path = entryPath(query);
    if (auto text = detail::readFile(path)) {
        try {
            auto doc = nlohmann::json::parse(*text);
            std::vector<SourceRecord> records;
            for (const auto& r : doc.at("records")) {
                records.push_back(recordFromJson(r));
            }
            return records;
        } catch (const std::exception& e) {
            spdlog::warn("cache entry {} is unreadable ({}), fetching again", path.string(),
                         e.what());
        }
    }

    auto records = inner_->search(query);

    try {
        nlohmann::json doc;
        doc["sourceId"] = inner_->id();
        doc["query"] = nlohmann::json::parse(query.canonical());
        doc["snapshot"] = detail::isoTimestamp(std::chrono::system_clock::now());
        doc["records"] = nlohmann::json::array();
        for (const auto& r : records) {
            doc["records"].push_back(recordToJson(r));
        }
        std::filesystem::create_directories(dir_);
        detail::writeFileAtomic(path, doc.dump(2));
    } catch (const std::exception& e) {
        spdlog::warn("cannot write cache entry {}: {}", path.string(), e.what());
    }
    return records;
}

} // namespace kgval
