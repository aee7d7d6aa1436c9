// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/evaluation.hpp>

#include <kgval/errors.hpp>

#include "util.hpp"

#include <cstdio>
#include <sstream>

namespace kgval {

namespace {

std::string trimField(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r");
    std::string out(s.substr(b, e - b + 1));
    if (out.size() >= 2 && out.front() == '"' && out.back() == '"') {
        out = out.substr(1, out.size() - 2);
    }
    return out;
}

// Minimal CSV split: commas inside double quotes are kept.
std::vector<std::string> splitCsv(std::string_view line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
            field += c;
        } else if (c == ',' && !quoted) {
            out.push_back(trimField(field));
            field.clear();
        } else {
            field += c;
        }
    }
    out.push_back(trimField(field));
    return out;
}

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

const char* toString(Outcome o) noexcept {
    switch (o) {
        case Outcome::TruePositive: return "TP";
        case Outcome::FalsePositive: return "FP";
        case Outcome::TrueNegative: return "TN";
        case Outcome::FalseNegative: return "FN";
    }
    return "?";
}

Baseline::Baseline(std::vector<BaselineLabel> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        auto key = std::make_pair(labels_[i].subject.value, labels_[i].property);
        if (!index_.emplace(key, i).second) {
            throw Error("duplicate baseline label for (" + key.first + ", " + key.second + ")");
        }
    }
}

Baseline Baseline::parseCsv(std::string_view text) {
    std::vector<BaselineLabel> labels;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineNo = 0;
    bool header = true;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        auto fields = splitCsv(line);
        if (header) {
            if (fields.size() != 3 || fields[0] != "subject" || fields[1] != "property" ||
                fields[2] != "correct") {
                throw Error("baseline CSV must start with the header subject,property,correct");
            }
            header = false;
            continue;
        }
        if (fields.size() != 3) {
            throw Error("baseline CSV line " + std::to_string(lineNo) + ": expected 3 fields");
        }
        bool correct;
        if (fields[2] == "true") {
            correct = true;
        } else if (fields[2] == "false") {
            correct = false;
        } else {
            throw Error("baseline CSV line " + std::to_string(lineNo) +
                        ": correct must be true or false");
        }
        labels.push_back({Iri{fields[0]}, fields[1], correct});
    }
    if (header) {
        throw Error("baseline CSV is missing its header row");
    }
    return Baseline(std::move(labels));
}

Baseline Baseline::loadCsv(const std::filesystem::path& path) {
    auto text = detail::readFile(path);
    if (!text) {
        throw Error("cannot read baseline " + path.string());
    }
    return parseCsv(*text);
}

const BaselineLabel* Baseline::find(const std::string& subject, const std::string& property) const {
    auto it = index_.find({subject, property});
    return it == index_.end() ? nullptr : &labels_[it->second];
}

const BaselineLabel& Baseline::at(const std::string& subject, const std::string& property) const {
    if (auto* label = find(subject, property)) {
        return *label;
    }
    throw MissingLabel(subject, property);
}

Outcome classify(double score, bool correct, double threshold) noexcept {
    const bool positive = score > threshold;
    if (positive) {
        return correct ? Outcome::TruePositive : Outcome::FalsePositive;
    }
    return correct ? Outcome::FalseNegative : Outcome::TrueNegative;
}

Outcome classifyTriple(const TripleScore& score, const BaselineLabel& label, double threshold) {
    return classify(score.weighted, label.correct, threshold);
}

Outcome classifyTriple(const TripleScore& score, const Baseline& baseline, double threshold) {
    return classifyTriple(score, baseline.at(score.subject.value, score.property), threshold);
}

EvalMetrics metricsFromCounts(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn) {
    EvalMetrics m;
    m.tp = tp;
    m.fp = fp;
    m.tn = tn;
    m.fn = fn;
    if (tp + fp > 0) {
        m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    } else {
        m.notes.emplace_back("precision undefined (no positive predictions), reported as 0");
    }
    if (tp + fn > 0) {
        m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    } else {
        m.notes.emplace_back("recall undefined (no correct triples), reported as 0");
    }
    if (m.precision + m.recall > 0.0) {
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    return m;
}

EvalMetrics computeMetrics(std::span<const Outcome> outcomes) {
    if (outcomes.empty()) {
        throw EmptyEvaluation();
    }
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (auto o : outcomes) {
        switch (o) {
            case Outcome::TruePositive: ++tp; break;
            case Outcome::FalsePositive: ++fp; break;
            case Outcome::TrueNegative: ++tn; break;
            case Outcome::FalseNegative: ++fn; break;
        }
    }
    return metricsFromCounts(tp, fp, tn, fn);
}

std::map<std::string, double> recallBySource(std::span<const InstanceScore> instances,
                                             const Baseline& baseline, double tripleThreshold) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> counts; // confirmed, correct
    for (const auto& inst : instances) {
        for (const auto& triple : inst.triples) {
            const auto* label = baseline.find(triple.subject.value, triple.property);
            for (const auto& ev : triple.perSource) {
                auto& c = counts[ev.sourceId];
                if (!label || !label->correct) {
                    continue;
                }
                ++c.second;
                if (ev.sim > tripleThreshold) {
                    ++c.first;
                }
            }
        }
    }
    std::map<std::string, double> out;
    for (const auto& [source, c] : counts) {
        out[source] = c.second == 0 ? 0.0
                                    : static_cast<double>(c.first) / static_cast<double>(c.second);
    }
    return out;
}

EvaluationSummary evaluate(std::span<const InstanceScore> instances, const Baseline& baseline,
                           double tripleThreshold) {
    EvaluationSummary summary;
    std::vector<Outcome> all;
    std::map<std::string, std::vector<Outcome>> byProperty;
    std::size_t missing = 0;

    for (const auto& inst : instances) {
        bool labeled = false;
        bool allCorrect = true;
        for (const auto& triple : inst.triples) {
            const auto* label = baseline.find(triple.subject.value, triple.property);
            if (!label) {
                ++missing;
                continue;
            }
            labeled = true;
            allCorrect = allCorrect && label->correct;
            auto o = classifyTriple(triple, *label, tripleThreshold);
            all.push_back(o);
            byProperty[triple.property].push_back(o);
        }
        if (labeled) {
            ++summary.instancesEvaluated;
            if (inst.valid == allCorrect) {
                ++summary.instancesAgreeing;
            }
        }
    }
    if (all.empty()) {
        throw EmptyEvaluation();
    }
    summary.overall = computeMetrics(all);
    for (const auto& [property, outcomes] : byProperty) {
        summary.perProperty[property] = computeMetrics(outcomes);
    }
    summary.recallBySource = recallBySource(instances, baseline, tripleThreshold);
    summary.instanceAccuracy =
        static_cast<double>(summary.instancesAgreeing) / static_cast<double>(summary.instancesEvaluated);
    if (missing > 0) {
        summary.notes.push_back(std::to_string(missing) + " scored triples have no baseline label");
    }
    return summary;
}

std::string metricsCsv(const EvaluationSummary& summary) {
    std::string out = "property,precision,recall,f1\n";
    auto row = [&](const std::string& name, const EvalMetrics& m) {
        out += name + "," + fixed4(m.precision) + "," + fixed4(m.recall) + "," + fixed4(m.f1) + "\n";
    };
    for (const auto& [property, m] : summary.perProperty) {
        row(property, m);
    }
    row("overall", summary.overall);
    return out;
}

} // namespace kgval
