// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <kgval/rdf.hpp>
#include <kgval/similarity.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kgval {

inline constexpr double kDefaultThreshold = 0.5;

/// Rescales non-negative weights to sum to one. All-zero (or empty-but-sized)
/// input yields the uniform 1/m. Throws NegativeWeight on a negative or NaN entry.
std::vector<double> normalizeWeights(std::span<const double> raw);

std::vector<double> uniformWeights(std::size_t m);

/// The ordered knowledge sources together with their raw weights.
class SourceRegistry {
public:
    /// Missing weights default to 1/m each. Throws PreconditionError when the
    /// weight count differs from the source count or there are no sources.
    SourceRegistry(std::vector<std::string> sources,
                   std::optional<std::vector<double>> rawWeights = std::nullopt);

    std::size_t size() const noexcept { return sources_.size(); }
    const std::vector<std::string>& sources() const noexcept { return sources_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double weightSum() const noexcept { return wsum_; }
    std::vector<double> normalizedWeights() const;

    /// Sum of sim_i * w_i over the sum of weights. Weights are divided by their
    /// maximum first, so equal weights contribute exactly 1 each.
    double weighted(std::span<const double> sims) const;

private:
    std::vector<std::string> sources_;
    std::vector<double> weights_;
    std::vector<double> scaled_;
    double wsum_ = 0.0;
    double scaledSum_ = 0.0;
};

/// One source's contribution to a triple. `value` is empty when the source did
/// not match the instance or matched it without the property.
struct SourceEvidence {
    std::string sourceId;
    bool matched = false;
    std::optional<std::string> value;
    double sim = 0.0;
};

struct TripleScore {
    Iri subject;
    std::string property;
    std::vector<std::string> kgValues;
    std::vector<SourceEvidence> perSource; // registry order, one entry per source
    double unweighted = 0.0;               // sum of sims, in [0, m]
    double weighted = 0.0;                 // in [0, 1]

    const std::string& kgValue() const;
};

struct InstanceScore {
    Iri subject;
    std::vector<TripleScore> triples;
    double confidence = 0.0;
    bool valid = false;
    double threshold = kDefaultThreshold;
};

inline bool exceedsThreshold(double confidence, double threshold) noexcept {
    return confidence > threshold;
}

double sumSimilarities(std::span<const double> sims) noexcept;

/// Unweighted triple confidence: the sum over sources of sim(kg value, source
/// value). A missing source value contributes 0.
double tripleConfidenceUnweighted(std::string_view kgValue,
                                  std::span<const std::optional<std::string>> evidences,
                                  const SimilarityFunction& f);

/// Weighted triple confidence for a single KG value, one optional value per
/// registry source.
TripleScore tripleConfidence(std::string_view kgValue,
                             std::span<const std::optional<std::string>> evidences,
                             const SimilarityFunction& f, const SourceRegistry& registry);

/// Fills unweighted/weighted from the similarities already stored in perSource.
void scoreTriple(TripleScore& triple, const SourceRegistry& registry);

/// Mean of the weighted triple confidences, classified with a strict `> t`.
/// Throws EmptyAttributeSpace when no triples are given.
InstanceScore instanceConfidence(Iri subject, std::vector<TripleScore> triples, double threshold);

} // namespace kgval
