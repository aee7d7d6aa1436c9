// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/service.hpp>

#include <kgval/errors.hpp>
#include <kgval/report.hpp>

#include <boost/uuid/random_generator.hpp>
#include <boost/uuid/uuid_io.hpp>
#include <httplib.h>
#include <spdlog/spdlog.h>

#include <condition_variable>
#include <map>
#include <mutex>
#include <thread>

namespace kgval {

namespace {

enum class RunStatus { Running, Done, Failed };

const char* toString(RunStatus s) {
    switch (s) {
        case RunStatus::Running: return "running";
        case RunStatus::Done: return "done";
        case RunStatus::Failed: return "failed";
    }
    return "failed";
}

struct Run {
    std::string id;
    RunStatus status = RunStatus::Running;
    std::string error;
    unsigned rescoreVersion = 0;
    std::shared_ptr<const ValidationReport> report;
};

void sendJson(httplib::Response& res, int status, const nlohmann::json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void sendError(httplib::Response& res, int status, const std::string& message) {
    sendJson(res, status, {{"error", message}});
}

} // namespace

struct Service::Impl {
    nlohmann::json baseConfig;
    std::filesystem::path baseDir;
    ServiceOptions options;
    httplib::Server server;
    std::thread listener;
    std::thread job;

    std::mutex mutex;
    std::condition_variable idle;
    std::map<std::string, Run> runs;
    bool busy = false;

    Impl(nlohmann::json base, std::filesystem::path dir, ServiceOptions opts)
        : baseConfig(std::move(base)), baseDir(std::move(dir)), options(std::move(opts)) {
        if (!options.runner) {
            options.runner = [](const RunConfig& c) { return validateKg(c); };
        }
        routes();
    }

    std::string newId() {
        boost::uuids::random_generator gen;
        return boost::uuids::to_string(gen());
    }

    nlohmann::json runJson(const Run& run) {
        nlohmann::json doc{{"runId", run.id},
                           {"status", toString(run.status)},
                           {"rescoreVersion", run.rescoreVersion}};
        if (run.status == RunStatus::Failed) {
            doc["error"] = run.error;
        }
        if (run.report) {
            auto report = reportWithRunInfo(*run.report);
            report["runId"] = run.id;
            doc["report"] = std::move(report);
        }
        return doc;
    }

    void submit(const httplib::Request& req, httplib::Response& res) {
        nlohmann::json patch = nlohmann::json::object();
        if (!req.body.empty()) {
            try {
                patch = nlohmann::json::parse(req.body);
            } catch (const nlohmann::json::exception& e) {
                return sendError(res, 400, std::string("invalid JSON: ") + e.what());
            }
            if (!patch.is_object()) {
                return sendError(res, 400, "run configuration must be a JSON object");
            }
        }
        auto merged = baseConfig;
        merged.merge_patch(patch);
        RunConfig config;
        try {
            config = parseRunConfig(merged, baseDir);
            config.validate();
        } catch (const Error& e) {
            return sendError(res, 400, e.what());
        }

        std::unique_lock lock(mutex);
        if (busy) {
            return sendError(res, 409, "a run is already in progress");
        }
        busy = true;
        const auto id = newId();
        runs[id] = Run{id, RunStatus::Running, {}, 0, nullptr};
        if (job.joinable()) {
            job.join();
        }
        job = std::thread([this, id, config = std::move(config)] { execute(id, config); });
        lock.unlock();
        sendJson(res, 202, {{"runId", id}});
    }

    void execute(const std::string& id, const RunConfig& config) {
        std::shared_ptr<const ValidationReport> report;
        std::string error;
        try {
            auto r = options.runner(config);
            r.runId = id;
            report = std::make_shared<const ValidationReport>(std::move(r));
        } catch (const std::exception& e) {
            error = e.what();
            spdlog::warn("run {} failed: {}", id, error);
        }
        std::lock_guard lock(mutex);
        auto& run = runs[id];
        if (report) {
            run.status = RunStatus::Done;
            run.report = std::move(report);
        } else {
            run.status = RunStatus::Failed;
            run.error = error;
        }
        busy = false;
        idle.notify_all();
    }

    void rescoreRun(const httplib::Request& req, httplib::Response& res) {
        const auto id = req.matches[1].str();
        std::shared_ptr<const ValidationReport> current;
        {
            std::lock_guard lock(mutex);
            auto it = runs.find(id);
            if (it == runs.end()) {
                return sendError(res, 404, "unknown run " + id);
            }
            if (it->second.status != RunStatus::Done) {
                return sendError(res, 409, "run " + id + " has no report");
            }
            current = it->second.report;
        }
        std::optional<std::vector<double>> weights;
        std::optional<double> threshold;
        try {
            auto body = req.body.empty() ? nlohmann::json::object() : nlohmann::json::parse(req.body);
            if (!body.is_object()) {
                return sendError(res, 400, "rescore body must be a JSON object");
            }
            if (body.contains("weights") && !body["weights"].is_null()) {
                weights = body["weights"].get<std::vector<double>>();
            }
            if (body.contains("threshold") && !body["threshold"].is_null()) {
                threshold = body["threshold"].get<double>();
            }
        } catch (const nlohmann::json::exception& e) {
            return sendError(res, 400, std::string("invalid rescore payload: ") + e.what());
        }
        std::shared_ptr<const ValidationReport> updated;
        try {
            updated = std::make_shared<const ValidationReport>(rescore(*current, weights, threshold));
        } catch (const Error& e) {
            return sendError(res, 400, e.what());
        }
        std::lock_guard lock(mutex);
        auto& run = runs[id];
        run.report = updated;
        ++run.rescoreVersion;
        sendJson(res, 200, runJson(run));
    }

    nlohmann::json domainSpecs() {
        auto out = nlohmann::json::array();
        auto add = [&](const DomainSpecification& ds, const std::string& path) {
            auto entry = domainSpecToJson(ds);
            entry["path"] = path;
            out.push_back(std::move(entry));
        };
        try {
            auto config = parseRunConfig(baseConfig, baseDir);
            if (!config.ds.name.empty() || !config.ds.properties.empty()) {
                add(config.ds, config.domainSpecPath);
            }
        } catch (const Error& e) {
            spdlog::warn("base configuration: {}", e.what());
        }
        for (const auto& dir : options.domainSpecDirs) {
            std::error_code ec;
            std::vector<std::filesystem::path> files;
            for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
                if (entry.is_regular_file() && entry.path().extension() == ".json") {
                    files.push_back(entry.path());
                }
            }
            std::sort(files.begin(), files.end());
            for (const auto& file : files) {
                try {
                    auto ds = loadDomainSpec(file);
                    ds.validate();
                    add(ds, file.string());
                } catch (const Error&) {
                    // not a domain specification
                }
            }
        }
        return out;
    }

    void routes() {
        server.Post("/runs", [this](const auto& req, auto& res) { submit(req, res); });

        server.Get("/runs", [this](const auto&, auto& res) {
            std::lock_guard lock(mutex);
            auto out = nlohmann::json::array();
            for (const auto& [id, run] : runs) {
                out.push_back({{"runId", id}, {"status", toString(run.status)}});
            }
            sendJson(res, 200, out);
        });

        server.Get(R"(/runs/([^/]+))", [this](const auto& req, auto& res) {
            std::lock_guard lock(mutex);
            auto it = runs.find(req.matches[1].str());
            if (it == runs.end()) {
                return sendError(res, 404, "unknown run " + req.matches[1].str());
            }
            sendJson(res, 200, runJson(it->second));
        });

        server.Post(R"(/runs/([^/]+)/rescore)",
                    [this](const auto& req, auto& res) { rescoreRun(req, res); });

        server.Get(R"(/runs/([^/]+)/metrics)", [this](const auto& req, auto& res) {
            std::lock_guard lock(mutex);
            auto it = runs.find(req.matches[1].str());
            if (it == runs.end()) {
                return sendError(res, 404, "unknown run " + req.matches[1].str());
            }
            const auto& run = it->second;
            if (!run.report || !run.report->metrics) {
                return sendError(res, 404, "run has no metrics (no baseline supplied)");
            }
            sendJson(res, 200, metricsToJson(*run.report->metrics));
        });

        server.Get("/sources", [this](const auto&, auto& res) {
            try {
                sendJson(res, 200, describeSources(parseRunConfig(baseConfig, baseDir)));
            } catch (const Error& e) {
                sendError(res, 500, e.what());
            }
        });

        server.Get("/domain-specs", [this](const auto&, auto& res) { sendJson(res, 200, domainSpecs()); });

        if (options.webRoot) {
            server.set_mount_point("/", options.webRoot->string());
        }
    }
};

Service::Service(nlohmann::json baseConfig, std::filesystem::path baseDir, ServiceOptions options)
    : impl_(std::make_unique<Impl>(std::move(baseConfig), std::move(baseDir), std::move(options))) {}

Service::~Service() {
    stop();
    if (impl_->job.joinable()) {
        impl_->job.join();
    }
}

int Service::bind(const std::string& host, int port) {
    if (port == 0) {
        return impl_->server.bind_to_any_port(host);
    }
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

void Service::listen() {
    impl_->server.listen_after_bind();
}

void Service::start() {
    impl_->listener = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
}

void Service::stop() {
    impl_->server.stop();
    if (impl_->listener.joinable()) {
        impl_->listener.join();
    }
}

void Service::waitIdle() {
    std::unique_lock lock(impl_->mutex);
    impl_->idle.wait(lock, [this] { return !impl_->busy; });
}

} // namespace kgval
