// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/confidence.hpp>

#include <kgval/errors.hpp>

#include <algorithm>
#include <cmath>

namespace kgval {

std::vector<double> uniformWeights(std::size_t m) {
    return std::vector<double>(m, m == 0 ? 0.0 : 1.0 / static_cast<double>(m));
}

std::vector<double> normalizeWeights(std::span<const double> raw) {
    double sum = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!(raw[i] >= 0.0) || !std::isfinite(raw[i])) {
            throw NegativeWeight(i);
        }
        sum += raw[i];
    }
    if (sum == 0.0) {
        return uniformWeights(raw.size());
    }
    std::vector<double> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[i] = raw[i] / sum;
    }
    return out;
}

SourceRegistry::SourceRegistry(std::vector<std::string> sources,
                               std::optional<std::vector<double>> rawWeights)
    : sources_(std::move(sources)) {
    if (sources_.empty()) {
        throw PreconditionError("at least one knowledge source is required");
    }
    if (rawWeights) {
        if (rawWeights->size() != sources_.size()) {
            throw PreconditionError("expected " + std::to_string(sources_.size()) +
                                    " weights, got " + std::to_string(rawWeights->size()));
        }
        // Validates, and turns the all-zero case into the uniform default.
        auto normalized = normalizeWeights(*rawWeights);
        bool allZero = std::all_of(rawWeights->begin(), rawWeights->end(),
                                   [](double w) { return w == 0.0; });
        weights_ = allZero ? normalized : *rawWeights;
    } else {
        weights_ = uniformWeights(sources_.size());
    }
    const double top = *std::max_element(weights_.begin(), weights_.end());
    scaled_.resize(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        wsum_ += weights_[i];
        scaled_[i] = weights_[i] / top;
        scaledSum_ += scaled_[i];
    }
}

std::vector<double> SourceRegistry::normalizedWeights() const {
    return normalizeWeights(weights_);
}

double SourceRegistry::weighted(std::span<const double> sims) const {
    if (sims.size() != scaled_.size()) {
        throw PreconditionError("expected one similarity per source");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < sims.size(); ++i) {
        acc += sims[i] * scaled_[i];
    }
    return acc / scaledSum_;
}

const std::string& TripleScore::kgValue() const {
    static const std::string kEmpty;
    return kgValues.empty() ? kEmpty : kgValues.front();
}

double sumSimilarities(std::span<const double> sims) noexcept {
    double acc = 0.0;
    for (double s : sims) {
        acc += s;
    }
    return acc;
}

double tripleConfidenceUnweighted(std::string_view kgValue,
                                  std::span<const std::optional<std::string>> evidences,
                                  const SimilarityFunction& f) {
    std::vector<double> sims;
    sims.reserve(evidences.size());
    for (const auto& e : evidences) {
        sims.push_back(e ? similarity(kgValue, *e, f) : 0.0);
    }
    return sumSimilarities(sims);
}

TripleScore tripleConfidence(std::string_view kgValue,
                             std::span<const std::optional<std::string>> evidences,
                             const SimilarityFunction& f, const SourceRegistry& registry) {
    if (evidences.size() != registry.size()) {
        throw PreconditionError("expected one evidence entry per source");
    }
    TripleScore score;
    score.kgValues = {std::string(kgValue)};
    for (std::size_t i = 0; i < evidences.size(); ++i) {
        SourceEvidence ev;
        ev.sourceId = registry.sources()[i];
        ev.matched = evidences[i].has_value();
        ev.value = evidences[i];
        ev.sim = evidences[i] ? similarity(kgValue, *evidences[i], f) : 0.0;
        score.perSource.push_back(std::move(ev));
    }
    scoreTriple(score, registry);
    return score;
}

void scoreTriple(TripleScore& triple, const SourceRegistry& registry) {
    std::vector<double> sims;
    sims.reserve(triple.perSource.size());
    for (const auto& ev : triple.perSource) {
        sims.push_back(ev.sim);
    }
    triple.unweighted = sumSimilarities(sims);
    triple.weighted = registry.weighted(sims);
}

InstanceScore instanceConfidence(Iri subject, std::vector<TripleScore> triples, double threshold) {
    if (triples.empty()) {
        throw EmptyAttributeSpace("instance " + subject.value + " has no scored attributes");
    }
    double acc = 0.0;
    for (const auto& t : triples) {
        acc += t.weighted;
    }
    InstanceScore out;
    out.subject = std::move(subject);
    out.confidence = acc / static_cast<double>(triples.size());
    out.triples = std::move(triples);
    out.threshold = threshold;
    out.valid = exceedsThreshold(out.confidence, threshold);
    return out;
}

} // namespace kgval
