// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <kgval/pipeline.hpp>

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kgval {

struct ServiceOptions {
    /// Static assets served under "/" when set.
    std::optional<std::filesystem::path> webRoot;
    /// Directories scanned for domain specification files (*.json).
    std::vector<std::filesystem::path> domainSpecDirs;
    /// Executes one run; replaceable in tests.
    std::function<ValidationReport(const RunConfig&)> runner;
};

/// HTTP API over the validation pipeline. One run executes at a time;
/// further submissions are refused with 409 until it finishes.
///
///   POST /runs                 body merged over the base config -> 202 {runId}
///   GET  /runs                 run ids with status
///   GET  /runs/{id}            status, rescoreVersion, report
///   POST /runs/{id}/rescore    {weights?, threshold?} -> updated report
///   GET  /runs/{id}/metrics    evaluation summary (404 without baseline)
///   GET  /sources              configured sources, secrets elided
///   GET  /domain-specs         available domain specifications
class Service {
public:
    Service(nlohmann::json baseConfig, std::filesystem::path baseDir, ServiceOptions options = {});
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Binds the listening socket; port 0 picks a free port. Returns the
    /// bound port, or -1 on failure.
    int bind(const std::string& host, int port);
    /// Serves until stop() is called. Requires a successful bind().
    void listen();
    /// Runs listen() on a background thread.
    void start();
    void stop();
    /// Blocks until the current run, if any, has finished.
    void waitIdle();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace kgval
