// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/report.hpp>

#include "util.hpp"

#include <cmath>
#include <cstdio>

namespace kgval {

namespace {

nlohmann::json optionalString(const std::optional<std::string>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json();
}

nlohmann::json metricsEntry(const EvalMetrics& m) {
    nlohmann::json doc{{"tp", m.tp},
                       {"fp", m.fp},
                       {"tn", m.tn},
                       {"fn", m.fn},
                       {"precision", round4(m.precision)},
                       {"recall", round4(m.recall)},
                       {"f1", round4(m.f1)}};
    if (!m.notes.empty()) {
        doc["notes"] = m.notes;
    }
    return doc;
}

nlohmann::json tripleToJson(const TripleScore& t) {
    auto perSource = nlohmann::json::array();
    for (const auto& ev : t.perSource) {
        perSource.push_back({{"sourceId", ev.sourceId},
                             {"matched", ev.matched},
                             {"value", optionalString(ev.value)},
                             {"sim", round4(ev.sim)}});
    }
    return {{"property", t.property},
            {"kgValue", t.kgValue()},
            {"kgValues", t.kgValues},
            {"unweighted", round4(t.unweighted)},
            {"weighted", round4(t.weighted)},
            {"perSource", std::move(perSource)}};
}

nlohmann::json matchToJson(const MatchSummary& m) {
    nlohmann::json doc{{"sourceId", m.sourceId},
                       {"matched", m.matched},
                       {"recordId", optionalString(m.recordId)},
                       {"distanceM", m.distanceM ? nlohmann::json(round4(*m.distanceM)) : nlohmann::json()},
                       {"candidatesConsidered", m.candidatesConsidered}};
    if (m.error) {
        doc["error"] = *m.error;
    }
    return doc;
}

std::string fixed4(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", round4(x));
    return buf;
}

} // namespace

double round4(double x) noexcept {
    return std::floor(x * 1e4 + 0.5) / 1e4;
}

nlohmann::json metricsToJson(const EvaluationSummary& summary) {
    nlohmann::json perProperty = nlohmann::json::object();
    for (const auto& [property, m] : summary.perProperty) {
        perProperty[property] = metricsEntry(m);
    }
    nlohmann::json recall = nlohmann::json::object();
    for (const auto& [source, r] : summary.recallBySource) {
        recall[source] = round4(r);
    }
    return {{"overall", metricsEntry(summary.overall)},
            {"perProperty", std::move(perProperty)},
            {"recallBySource", std::move(recall)},
            {"instancesEvaluated", summary.instancesEvaluated},
            {"instancesAgreeing", summary.instancesAgreeing},
            {"instanceAccuracy", round4(summary.instanceAccuracy)},
            {"notes", summary.notes}};
}

nlohmann::json reportToJson(const ValidationReport& report) {
    nlohmann::json config = report.configEcho;
    const auto registry = report.registry();
    const auto normalized = registry.normalizedWeights();
    auto sources = nlohmann::json::array();
    for (std::size_t i = 0; i < report.sourceIds.size(); ++i) {
        sources.push_back({{"id", report.sourceIds[i]},
                           {"kind", report.sourceKinds.at(i)},
                           {"weight", round4(normalized[i])}});
    }
    config["sources"] = std::move(sources);
    config["threshold"] = report.threshold;
    config["tripleThreshold"] = report.tripleThreshold;

    auto instances = nlohmann::json::array();
    std::size_t valid = 0;
    for (const auto& inst : report.instances) {
        auto triples = nlohmann::json::array();
        for (const auto& t : inst.score.triples) {
            triples.push_back(tripleToJson(t));
        }
        auto matches = nlohmann::json::array();
        for (const auto& m : inst.matches) {
            matches.push_back(matchToJson(m));
        }
        valid += inst.score.valid ? 1 : 0;
        instances.push_back({{"subject", inst.score.subject.value},
                             {"confidence", round4(inst.score.confidence)},
                             {"valid", inst.score.valid},
                             {"triples", std::move(triples)},
                             {"matches", std::move(matches)}});
    }

    auto skipped = nlohmann::json::array();
    for (const auto& s : report.skipped) {
        skipped.push_back({{"subject", s.subject.value}, {"reason", s.reason}});
    }

    nlohmann::json doc{{"config", std::move(config)},
                       {"instances", std::move(instances)},
                       {"skipped", std::move(skipped)},
                       {"summary",
                        {{"instances", report.instances.size()},
                         {"valid", valid},
                         {"invalid", report.instances.size() - valid},
                         {"skipped", report.skipped.size()}}}};
    if (report.metrics) {
        doc["metrics"] = metricsToJson(*report.metrics);
    }
    return doc;
}

nlohmann::json reportWithRunInfo(const ValidationReport& report) {
    auto doc = reportToJson(report);
    doc["runId"] = report.runId;
    doc["started"] = detail::isoTimestamp(report.started);
    doc["finished"] = detail::isoTimestamp(report.finished);
    doc["timingMs"] = report.timingMs;
    return doc;
}

std::string canonicalJson(const ValidationReport& report) {
    return reportToJson(report).dump(2) + "\n";
}

std::string csvSummary(const ValidationReport& report) {
    std::string out = "subject,confidence,valid\n";
    for (const auto& inst : report.instances) {
        out += inst.score.subject.value + "," + fixed4(inst.score.confidence) + "," +
               (inst.score.valid ? "true" : "false") + "\n";
    }
    return out;
}

void writeReport(const ValidationReport& report, const std::filesystem::path& path,
                 ReportFormat format) {
    const auto content = format == ReportFormat::Json ? canonicalJson(report) : csvSummary(report);
    detail::writeFileAtomic(path, content);
}

} // namespace kgval
