// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <kgval/domain.hpp>
#include <kgval/normalize.hpp>
#include <kgval/sources.hpp>

#include <httplib.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <thread>

namespace kgval::test {

inline std::filesystem::path fixtures() {
    return KGVAL_FIXTURES;
}

class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                ("kgval-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void writeText(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

inline std::string readText(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// httplib server on a free loopback port, served from a background thread.
class StubServer {
public:
    httplib::Server server;

    ~StubServer() { stop(); }

    void start() {
        port_ = server.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    void stop() {
        server.stop();
        if (thread_.joinable()) {
            thread_.join();
        }
    }
    int port() const { return port_; }
    std::string url(const std::string& path = "/") const {
        return "http://127.0.0.1:" + std::to_string(port_) + path;
    }

private:
    int port_ = 0;
    std::thread thread_;
};

/// Manually advanced clock; sleeping jumps straight to the deadline.
class VirtualClock final : public Clock {
public:
    TimePoint now() override { return now_; }
    void sleepUntil(TimePoint t) override {
        if (t > now_) {
            now_ = t;
        }
    }
    void advance(std::chrono::nanoseconds d) { now_ += d; }

private:
    TimePoint now_{};
};

inline DomainSpecification hotelSpec() {
    DomainSpecification ds;
    ds.name = "hotel";
    ds.targetType = "Hotel";
    ds.properties = {"name", "address", "phone", "geo"};
    ds.matchingProperties = {"name", "geo"};
    ds.aliases["kg"] = {{"telephone", "phone"}};
    ds.aliases["places"] = {{"formatted_address", "address"}, {"phone_number", "phone"}};
    return ds;
}

inline SourceRecord record(std::string id, std::string name, std::optional<GeoPoint> geo,
                           AttributeMap props = {}) {
    SourceRecord r;
    r.recordId = std::move(id);
    r.name = std::move(name);
    r.normalizedName = normalize(r.name, NormalizerKind::Name);
    r.geo = geo;
    r.properties = std::move(props);
    return r;
}

} // namespace kgval::test
