// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/similarity.hpp>

#include "utf8.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace kgval {

namespace {

std::set<std::string_view> tokens(std::string_view s) {
    std::set<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ') {
            ++j;
        }
        if (j > i) {
            out.insert(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

} // namespace

const char* toString(SimilarityKind kind) noexcept {
    switch (kind) {
        case SimilarityKind::LevenshteinNormalized: return "levenshtein";
        case SimilarityKind::Exact: return "exact";
        case SimilarityKind::TokenJaccard: return "token-jaccard";
    }
    return "levenshtein";
}

std::optional<SimilarityKind> similarityFromString(std::string_view name) noexcept {
    if (name == "levenshtein" || name == "levenshtein-normalized") {
        return SimilarityKind::LevenshteinNormalized;
    }
    if (name == "exact") {
        return SimilarityKind::Exact;
    }
    if (name == "token-jaccard" || name == "jaccard") {
        return SimilarityKind::TokenJaccard;
    }
    return std::nullopt;
}

std::size_t levenshteinDistance(std::u32string_view a, std::u32string_view b) {
    if (a.size() < b.size()) {
        std::swap(a, b);
    }
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) {
        row[j] = j;
    }
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t up = row[j];
            std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
            diag = up;
        }
    }
    return row[b.size()];
}

double similarity(std::string_view a, std::string_view b, const SimilarityFunction& f) {
    const auto na = normalize(a, f.normalizer);
    const auto nb = normalize(b, f.normalizer);
    if (na.empty() && nb.empty()) {
        return 1.0;
    }
    if (na.empty() || nb.empty()) {
        return 0.0;
    }
    switch (f.kind) {
        case SimilarityKind::Exact:
            return na == nb ? 1.0 : 0.0;
        case SimilarityKind::TokenJaccard: {
            auto ta = tokens(na);
            auto tb = tokens(nb);
            std::size_t common = 0;
            for (const auto& t : ta) {
                common += tb.count(t);
            }
            const std::size_t unionSize = ta.size() + tb.size() - common;
            return static_cast<double>(common) / static_cast<double>(unionSize);
        }
        case SimilarityKind::LevenshteinNormalized: {
            const auto ua = utf8::decode(na);
            const auto ub = utf8::decode(nb);
            const auto d = levenshteinDistance(ua, ub);
            const auto longest = std::max(ua.size(), ub.size());
            return 1.0 - static_cast<double>(d) / static_cast<double>(longest);
        }
    }
    return 0.0;
}

BestSimilarity bestSimilarity(std::span<const std::string> left,
                              std::span<const std::string> right, const SimilarityFunction& f) {
    BestSimilarity best;
    bool first = true;
    for (const auto& l : left) {
        for (std::size_t j = 0; j < right.size(); ++j) {
            double s = similarity(l, right[j], f);
            if (first || s > best.sim) {
                best = {s, j};
                first = false;
            }
        }
    }
    return best;
}

} // namespace kgval
