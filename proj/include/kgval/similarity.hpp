// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <kgval/normalize.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace kgval {

enum class SimilarityKind { LevenshteinNormalized, Exact, TokenJaccard };

const char* toString(SimilarityKind kind) noexcept;
std::optional<SimilarityKind> similarityFromString(std::string_view name) noexcept;

struct SimilarityFunction {
    SimilarityKind kind = SimilarityKind::LevenshteinNormalized;
    NormalizerKind normalizer = NormalizerKind::Generic;
};

/// Edit distance over Unicode code points (insert, delete, substitute; unit costs).
std::size_t levenshteinDistance(std::u32string_view a, std::u32string_view b);

/// Similarity in [0, 1] of the normalized forms of a and b. Two empty forms
/// compare as 1, exactly one empty form as 0.
double similarity(std::string_view a, std::string_view b, const SimilarityFunction& f);

struct BestSimilarity {
    double sim = 0.0;
    std::size_t rightIndex = 0; // index into the right-hand value list
};

/// Maximum similarity over the cross product of two value lists. Ties keep the
/// earliest pair. Returns sim 0 when either list is empty.
BestSimilarity bestSimilarity(std::span<const std::string> left,
                              std::span<const std::string> right, const SimilarityFunction& f);

} // namespace kgval
