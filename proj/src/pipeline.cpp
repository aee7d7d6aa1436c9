// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/pipeline.hpp>

#include <kgval/errors.hpp>
#include <kgval/sparql.hpp>

#include <boost/uuid/random_generator.hpp>
#include <boost/uuid/uuid_io.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <thread>
#include <variant>

namespace kgval {

namespace {

using SteadyClock = std::chrono::steady_clock;

double elapsedMs(SteadyClock::time_point since) {
    return std::chrono::duration<double, std::milli>(SteadyClock::now() - since).count();
}

std::string newRunId() {
    static thread_local boost::uuids::random_generator gen;
    return boost::uuids::to_string(gen());
}

nlohmann::json configEcho(const RunConfig& config) {
    nlohmann::json echo;
    echo["domainSpec"] = {{"name", config.ds.name},
                          {"targetType", config.ds.targetType},
                          {"properties", config.ds.properties},
                          {"matchingProperties", config.ds.matchingProperties}};
    echo["input"] = {{"kind", config.input.kind == InputSpec::Kind::Turtle ? "turtle" : "sparql"},
                     {"location", config.input.location}};
    if (config.input.kind == InputSpec::Kind::Sparql) {
        echo["input"]["limit"] = config.input.limit;
    }
    echo["radiusM"] = config.radiusM;
    auto similarity = nlohmann::json::object();
    for (const auto& property : config.ds.scoredProperties()) {
        auto f = config.similarityFor(property);
        similarity[property] = {{"kind", toString(f.kind)}, {"normalizer", toString(f.normalizer)}};
    }
    echo["similarity"] = std::move(similarity);
    return echo;
}

struct Skip {
    std::string reason;
};

using Slot = std::variant<std::monostate, InstanceResult, Skip>;

InstanceResult scoreInstance(const Instance& instance, const MatchQuery& query,
                             const RunConfig& config, const SourceRegistry& registry,
                             const std::vector<std::shared_ptr<KnowledgeSource>>& sources) {
    InstanceResult result;
    std::vector<MatchResult> matches;
    matches.reserve(sources.size());
    for (const auto& source : sources) {
        auto m = matchInstance(query, *source, config.normalizers);
        MatchSummary summary;
        summary.sourceId = m.sourceId;
        summary.matched = m.matched;
        summary.candidatesConsidered = m.candidatesConsidered;
        summary.distanceM = m.distanceM;
        summary.error = m.error;
        if (m.candidate) {
            summary.recordId = m.candidate->recordId;
        }
        result.matches.push_back(std::move(summary));
        matches.push_back(std::move(m));
    }

    std::vector<TripleScore> triples;
    for (const auto& property : config.ds.scoredProperties()) {
        auto it = instance.attributes.find(property);
        if (it == instance.attributes.end() || it->second.empty()) {
            continue;
        }
        const auto f = config.similarityFor(property);
        TripleScore triple;
        triple.subject = instance.id;
        triple.property = property;
        triple.kgValues = it->second;
        for (const auto& m : matches) {
            SourceEvidence ev;
            ev.sourceId = m.sourceId;
            ev.matched = m.matched;
            if (m.matched && m.candidate) {
                auto values = m.candidate->values(property, config.ds);
                if (!values.empty()) {
                    auto best = bestSimilarity(triple.kgValues, values, f);
                    ev.value = values[best.rightIndex];
                    ev.sim = best.sim;
                }
            }
            triple.perSource.push_back(std::move(ev));
        }
        scoreTriple(triple, registry);
        triples.push_back(std::move(triple));
    }
    result.score = instanceConfidence(instance.id, std::move(triples), config.threshold);
    return result;
}

void attachMetrics(ValidationReport& report) {
    if (!report.baseline) {
        report.metrics.reset();
        return;
    }
    auto scores = report.scores();
    try {
        report.metrics = evaluate(scores, *report.baseline, report.tripleThreshold);
    } catch (const EmptyEvaluation&) {
        EvaluationSummary empty;
        empty.notes.emplace_back("no scored triple has a baseline label");
        report.metrics = std::move(empty);
    }
}

} // namespace

SourceRegistry ValidationReport::registry() const {
    return SourceRegistry(sourceIds, rawWeights);
}

std::vector<InstanceScore> ValidationReport::scores() const {
    std::vector<InstanceScore> out;
    out.reserve(instances.size());
    for (const auto& i : instances) {
        out.push_back(i.score);
    }
    return out;
}

ValidationReport validateInstances(const RunConfig& config, const Extraction& extraction,
                                   std::vector<std::shared_ptr<KnowledgeSource>> sources) {
    if (sources.size() != config.sources.size()) {
        throw PreconditionError("expected one source per configured handle");
    }
    ValidationReport report;
    report.runId = newRunId();
    report.started = std::chrono::system_clock::now();
    report.configEcho = configEcho(config);
    for (std::size_t i = 0; i < config.sources.size(); ++i) {
        report.sourceIds.push_back(config.sources[i].id);
        report.sourceKinds.push_back(toString(config.sources[i].kind));
        if (sources[i]->id() != config.sources[i].id) {
            throw PreconditionError("source '" + sources[i]->id() + "' does not match handle '" +
                                    config.sources[i].id + "'");
        }
    }
    SourceRegistry registry(report.sourceIds, config.weights);
    report.rawWeights = registry.weights();
    report.threshold = config.threshold;
    report.tripleThreshold = config.effectiveTripleThreshold();
    report.tripleThresholdFollowsThreshold = !config.tripleThreshold.has_value();

    const auto t0 = SteadyClock::now();
    const auto& instances = extraction.instances;
    std::vector<Slot> slots(instances.size());
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) {
            const auto& instance = instances[i];
            try {
                auto query = buildMatchQuery(instance, config.ds, config.radiusM, config.normalizers);
                if (query.populatedFields() < 2) {
                    slots[i] = Skip{std::string(kReasonInsufficientMatching)};
                    continue;
                }
                bool anyScored = false;
                for (const auto& property : config.ds.scoredProperties()) {
                    auto it = instance.attributes.find(property);
                    anyScored = anyScored || (it != instance.attributes.end() && !it->second.empty());
                }
                if (!anyScored) {
                    slots[i] = Skip{std::string(kReasonEmptyAttributes)};
                    continue;
                }
                slots[i] = scoreInstance(instance, query, config, registry, sources);
            } catch (const std::exception& e) {
                spdlog::warn("instance {} failed: {}", instance.id.value, e.what());
                slots[i] = Skip{std::string("error: ") + e.what()};
            }
        }
    };

    const unsigned workers =
        std::max(1u, std::min<unsigned>(config.effectiveConcurrency(),
                                        static_cast<unsigned>(std::max<std::size_t>(1, instances.size()))));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    report.skipped = extraction.excluded;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (auto* r = std::get_if<InstanceResult>(&slots[i])) {
            report.instances.push_back(std::move(*r));
        } else if (auto* s = std::get_if<Skip>(&slots[i])) {
            report.skipped.push_back({instances[i].id, s->reason});
        }
    }
    std::sort(report.instances.begin(), report.instances.end(),
              [](const auto& a, const auto& b) { return a.score.subject < b.score.subject; });
    std::stable_sort(report.skipped.begin(), report.skipped.end(),
                     [](const auto& a, const auto& b) { return a.subject < b.subject; });
    report.timingMs["matchScoreMs"] = elapsedMs(t0);

    if (config.baselinePath) {
        const auto t1 = SteadyClock::now();
        report.baseline = std::make_shared<Baseline>(Baseline::loadCsv(config.resolve(*config.baselinePath)));
        attachMetrics(report);
        report.timingMs["evaluateMs"] = elapsedMs(t1);
    }
    report.finished = std::chrono::system_clock::now();
    return report;
}

ValidationReport validateKg(const RunConfig& config,
                            std::vector<std::shared_ptr<KnowledgeSource>> sources) {
    config.validate();
    const auto t0 = SteadyClock::now();
    KnowledgeGraph kg;
    if (config.input.kind == InputSpec::Kind::Turtle) {
        kg = loadTurtleFile(config.resolve(config.input.location));
    } else {
        SparqlFetchOptions options;
        options.cacheDir = config.cacheDir;
        kg = fetchSparql(config.input.location, config.ds, config.input.limit, options);
    }
    const double ingestMs = elapsedMs(t0);

    const auto t1 = SteadyClock::now();
    auto extraction = extractInstances(kg, config.ds);
    const double extractMs = elapsedMs(t1);

    auto report = validateInstances(config, extraction, std::move(sources));
    report.timingMs["ingestMs"] = ingestMs;
    report.timingMs["extractMs"] = extractMs;
    report.timingMs["totalMs"] = elapsedMs(t0);
    return report;
}

ValidationReport validateKg(const RunConfig& config) {
    config.validate();
    std::vector<std::shared_ptr<KnowledgeSource>> sources;
    for (auto handle : config.sources) {
        if (handle.kind != SourceKind::Fixture && !handle.cacheDir) {
            handle.cacheDir = config.cacheDir ? *config.cacheDir
                                              : std::filesystem::path(std::string(kDefaultCacheDir));
        }
        sources.push_back(makeSource(handle, config.ds, config.baseDir));
    }
    return validateKg(config, std::move(sources));
}

ValidationReport rescore(const ValidationReport& report,
                         const std::optional<std::vector<double>>& weights,
                         const std::optional<double>& threshold) {
    ValidationReport out = report;
    if (weights) {
        if (weights->size() != report.sourceIds.size()) {
            throw PreconditionError("expected " + std::to_string(report.sourceIds.size()) +
                                    " weights, got " + std::to_string(weights->size()));
        }
        normalizeWeights(*weights); // throws NegativeWeight
        out.rawWeights = SourceRegistry(report.sourceIds, *weights).weights();
    }
    if (threshold) {
        if (!(*threshold >= 0.0 && *threshold <= 1.0)) {
            throw RangeError("threshold must lie in [0, 1]");
        }
        out.threshold = *threshold;
        if (out.tripleThresholdFollowsThreshold) {
            out.tripleThreshold = *threshold;
        }
    }
    const auto registry = out.registry();
    for (auto& inst : out.instances) {
        auto triples = std::move(inst.score.triples);
        for (auto& triple : triples) {
            scoreTriple(triple, registry);
        }
        inst.score = instanceConfidence(inst.score.subject, std::move(triples), out.threshold);
    }
    attachMetrics(out);
    return out;
}

} // namespace kgval
