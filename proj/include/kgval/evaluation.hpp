// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <kgval/confidence.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kgval {

enum class Outcome { TruePositive, FalsePositive, TrueNegative, FalseNegative };

const char* toString(Outcome o) noexcept;

struct BaselineLabel {
    Iri subject;
    std::string property;
    bool correct = false;
};

/// Human-judged truth of KG triples, keyed by (subject, property).
class Baseline {
public:
    Baseline() = default;
    explicit Baseline(std::vector<BaselineLabel> labels);

    /// CSV with header `subject,property,correct`; correct is true or false.
    static Baseline parseCsv(std::string_view text);
    static Baseline loadCsv(const std::filesystem::path& path);

    const BaselineLabel* find(const std::string& subject, const std::string& property) const;
    /// Throws MissingLabel.
    const BaselineLabel& at(const std::string& subject, const std::string& property) const;
    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<BaselineLabel>& labels() const noexcept { return labels_; }

private:
    std::vector<BaselineLabel> labels_;
    std::map<std::pair<std::string, std::string>, std::size_t> index_;
};

/// Predicted positive iff score > threshold.
Outcome classify(double score, bool correct, double threshold) noexcept;
Outcome classifyTriple(const TripleScore& score, const BaselineLabel& label, double threshold);
Outcome classifyTriple(const TripleScore& score, const Baseline& baseline, double threshold);

struct EvalMetrics {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::vector<std::string> notes; // set when a ratio fell back to 0

    std::size_t total() const noexcept { return tp + fp + tn + fn; }
};

/// Throws EmptyEvaluation on an empty list.
EvalMetrics computeMetrics(std::span<const Outcome> outcomes);
/// Ratios from counts; precision/recall/f1 are 0 when their denominator is 0.
EvalMetrics metricsFromCounts(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn);

struct EvaluationSummary {
    EvalMetrics overall;
    std::map<std::string, EvalMetrics> perProperty;
    std::map<std::string, double> recallBySource;
    std::size_t instancesEvaluated = 0;
    std::size_t instancesAgreeing = 0;
    double instanceAccuracy = 0.0;
    std::vector<std::string> notes;
};

/// Triple-level metrics overall and per property, plus per-source recall and
/// instance-level accuracy (instance validity against the conjunction of its
/// triple labels). Triples without a label are skipped and noted.
EvaluationSummary evaluate(std::span<const InstanceScore> instances, const Baseline& baseline,
                           double tripleThreshold);

/// Recall of each source taken alone: its similarity > threshold predicts a
/// correct triple.
std::map<std::string, double> recallBySource(std::span<const InstanceScore> instances,
                                             const Baseline& baseline, double tripleThreshold);

/// `property,precision,recall,f1` rows (4 decimals), properties sorted, then `overall`.
std::string metricsCsv(const EvaluationSummary& summary);

} // namespace kgval
