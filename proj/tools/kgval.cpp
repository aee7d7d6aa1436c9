// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

// kgval: command line front end for validation runs and the HTTP service.

#include <kgval/errors.hpp>
#include <kgval/pipeline.hpp>
#include <kgval/report.hpp>
#include <kgval/service.hpp>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitConfig = 2;

struct ValidateArgs {
    std::string input;
    std::string sparql;
    std::size_t limit = 0;
    std::string ds;
    std::string config;
    std::string weights;
    std::optional<double> threshold;
    std::optional<double> radius;
    std::string baseline;
    std::string output;
    std::string format = "json";
    std::optional<unsigned> concurrency;
    std::string cacheDir;
    std::string metricsCsv;
};

struct ServeArgs {
    std::string config;
    std::string bind = "127.0.0.1:8080";
    std::string webRoot;
    std::vector<std::string> dsDirs;
};

nlohmann::json readConfig(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw kgval::ConfigError("cannot read configuration " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw kgval::ConfigError(path + ": " + e.what());
    }
}

std::string absolute(const std::string& path) {
    return fs::absolute(path).lexically_normal().string();
}

std::vector<double> parseWeights(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw kgval::ConfigError("invalid weight '" + item + "'");
        }
    }
    return out;
}

kgval::RunConfig buildConfig(const ValidateArgs& args) {
    auto doc = readConfig(args.config);
    if (!args.input.empty() && !args.sparql.empty()) {
        throw kgval::ConfigError("--input and --sparql are mutually exclusive");
    }
    if (!args.input.empty()) {
        doc["input"] = {{"turtle", absolute(args.input)}};
    } else if (!args.sparql.empty()) {
        doc["input"] = {{"sparql", args.sparql}};
        if (args.limit > 0) {
            doc["input"]["limit"] = args.limit;
        }
    }
    if (!args.ds.empty()) {
        doc["domainSpec"] = absolute(args.ds);
    }
    if (!args.weights.empty()) {
        doc["weights"] = parseWeights(args.weights);
    }
    if (args.threshold) {
        doc["threshold"] = *args.threshold;
    }
    if (args.radius) {
        doc["radiusM"] = *args.radius;
    }
    if (!args.baseline.empty()) {
        doc["baseline"] = absolute(args.baseline);
    }
    if (args.concurrency) {
        doc["concurrency"] = *args.concurrency;
    }
    auto config = kgval::parseRunConfig(doc, fs::absolute(args.config).parent_path());
    if (!args.cacheDir.empty()) {
        config.cacheDir = fs::path(args.cacheDir);
    }
    config.validate();
    return config;
}

int runValidate(const ValidateArgs& args) {
    kgval::RunConfig config;
    try {
        config = buildConfig(args);
    } catch (const kgval::ConfigError& e) {
        spdlog::error("{}", e.what());
        return kExitConfig;
    }

    kgval::ValidationReport report;
    try {
        report = kgval::validateKg(config);
    } catch (const kgval::ConfigError& e) {
        spdlog::error("{}", e.what());
        return kExitConfig;
    } catch (const kgval::PreconditionError& e) {
        spdlog::error("{}", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        spdlog::error("validation failed: {}", e.what());
        return kExitFatal;
    }

    const auto format =
        args.format == "csv" ? kgval::ReportFormat::CsvSummary : kgval::ReportFormat::Json;
    try {
        if (args.output.empty()) {
            std::cout << (format == kgval::ReportFormat::Json ? kgval::canonicalJson(report)
                                                              : kgval::csvSummary(report));
        } else {
            kgval::writeReport(report, args.output, format);
        }
        if (!args.metricsCsv.empty()) {
            if (!report.metrics) {
                spdlog::error("--metrics-csv requires a baseline");
                return kExitConfig;
            }
            std::ofstream out(args.metricsCsv, std::ios::binary);
            out << kgval::metricsCsv(*report.metrics);
            if (!out) {
                throw kgval::Error("cannot write " + args.metricsCsv);
            }
        }
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kExitFatal;
    }

    std::size_t valid = 0;
    for (const auto& inst : report.instances) {
        valid += inst.score.valid ? 1 : 0;
    }
    spdlog::info("run {}: {} instances scored, {} valid, {} skipped", report.runId,
                 report.instances.size(), valid, report.skipped.size());
    return kExitOk;
}

kgval::Service* activeService = nullptr;

void onSignal(int) {
    if (activeService) {
        activeService->stop();
    }
}

int runServe(const ServeArgs& args) {
    nlohmann::json base;
    try {
        base = readConfig(args.config);
        kgval::parseRunConfig(base, fs::absolute(args.config).parent_path());
    } catch (const kgval::Error& e) {
        spdlog::error("{}", e.what());
        return kExitConfig;
    }
    const auto colon = args.bind.rfind(':');
    if (colon == std::string::npos) {
        spdlog::error("--bind expects addr:port");
        return kExitConfig;
    }
    const auto host = args.bind.substr(0, colon);
    int port = 0;
    try {
        port = std::stoi(args.bind.substr(colon + 1));
    } catch (const std::exception&) {
        spdlog::error("invalid port in '{}'", args.bind);
        return kExitConfig;
    }

    kgval::ServiceOptions options;
    if (!args.webRoot.empty()) {
        options.webRoot = fs::path(args.webRoot);
    }
    for (const auto& dir : args.dsDirs) {
        options.domainSpecDirs.emplace_back(dir);
    }
    kgval::Service service(base, fs::absolute(args.config).parent_path(), std::move(options));
    const int bound = service.bind(host, port);
    if (bound < 0) {
        spdlog::error("cannot bind {}", args.bind);
        return kExitFatal;
    }
    activeService = &service;
    std::signal(SIGINT, onSignal);
    std::signal(SIGTERM, onSignal);
    spdlog::info("listening on {}:{}", host, bound);
    service.listen();
    activeService = nullptr;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Knowledge graph validation against weighted external sources"};
    app.require_subcommand(1);

    ValidateArgs v;
    auto* validate = app.add_subcommand("validate", "Validate a KG and write the report");
    validate->add_option("--input", v.input, "Turtle file");
    validate->add_option("--sparql", v.sparql, "SPARQL endpoint URL");
    validate->add_option("--limit", v.limit, "Instance limit for SPARQL input");
    validate->add_option("--ds", v.ds, "Domain specification file");
    validate->add_option("--config", v.config, "Run configuration file")->required();
    validate->add_option("--weights", v.weights, "Comma-separated source weights");
    validate->add_option("--threshold", v.threshold, "Instance threshold t");
    validate->add_option("--radius", v.radius, "Geo match radius in meters");
    validate->add_option("--baseline", v.baseline, "Baseline CSV for evaluation");
    validate->add_option("--output", v.output, "Report path (default: stdout)");
    validate->add_option("--format", v.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    validate->add_option("--concurrency", v.concurrency, "Worker threads");
    validate->add_option("--cache-dir", v.cacheDir, "Source response cache directory");
    validate->add_option("--metrics-csv", v.metricsCsv, "Write evaluation metrics as CSV");

    ServeArgs s;
    auto* serve = app.add_subcommand("serve", "Run the HTTP API");
    serve->add_option("--config", s.config, "Base run configuration")->required();
    serve->add_option("--bind", s.bind, "addr:port");
    serve->add_option("--web-root", s.webRoot, "Static UI assets");
    serve->add_option("--ds-dir", s.dsDirs, "Directory of domain specification files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    spdlog::set_default_logger(spdlog::stderr_color_st("kgval"));
    if (*validate) {
        return runValidate(v);
    }
    return runServe(s);
}
