// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include "support.hpp"

#include <kgval/errors.hpp>
#include <kgval/sources.hpp>

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>

using namespace kgval;

namespace {

constexpr GeoPoint kOrigin{47.2692, 11.4041};

// Latitude of the point `meters` due north of kOrigin.
double northBy(double meters) {
    return kOrigin.lat + meters / kEarthRadiusMeters * 180.0 / M_PI;
}

SourceHandle handleFor(const test::StubServer& stub, const std::string& path,
                       SourceKind kind = SourceKind::PlacesHttp) {
    SourceHandle h;
    h.id = "places";
    h.kind = kind;
    h.endpoint = stub.url(path);
    h.rateLimit = 1000;
    h.timeout = std::chrono::milliseconds(2000);
    return h;
}

MatchQuery alpenhof() {
    MatchQuery q;
    q.name = "hotel alpenhof";
    q.geo = kOrigin;
    q.radiusM = 500;
    return q;
}

SourceError::Kind errorKind(KnowledgeSource& source) {
    try {
        source.search(alpenhof());
    } catch (const SourceError& e) {
        CHECK(e.sourceId() == "places");
        return e.kind();
    }
    FAIL("expected SourceError");
    return SourceError::Kind::Network;
}

} // namespace

TEST_CASE("places connector parses, maps aliases and orders by distance") {
    test::StubServer stub;
    httplib::Params seen;
    stub.server.Get("/nearby", [&](const httplib::Request& req, httplib::Response& res) {
        seen = req.params;
        nlohmann::json far{{"id", "far"}, {"name", "Hotel Alpenhof"}, {"lat", northBy(200)},
                           {"lon", kOrigin.lon}, {"formatted_address", "Dorf 1"},
                           {"phone_number", "+43 5287 8550"}, {"rating", 4.5}};
        nlohmann::json near{{"id", "near"}, {"name", "Hotel Alpenhof"}, {"lat", northBy(10)},
                            {"lon", kOrigin.lon}, {"phone_number", {"1", "2"}}};
        res.set_content(nlohmann::json{{"results", {far, near}}}.dump(), "application/json");
    });
    stub.start();

    auto clock = std::make_shared<test::VirtualClock>();
    PlacesHttpSource source(handleFor(stub, "/nearby"), test::hotelSpec(), clock);
    auto hits = source.search(alpenhof());
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].recordId == "near");
    CHECK(hits[1].recordId == "far");
    CHECK(std::abs(haversineMeters(kOrigin, *hits[0].geo) - 10.0) < 1e-6);
    CHECK(std::abs(haversineMeters(kOrigin, *hits[1].geo) - 200.0) < 1e-6);
    CHECK(hits[0].properties == AttributeMap{{"name", {"Hotel Alpenhof"}}, {"phone", {"1", "2"}}});
    CHECK(hits[1].properties ==
          AttributeMap{{"address", {"Dorf 1"}}, {"name", {"Hotel Alpenhof"}}, {"phone", {"+43 5287 8550"}}});
    CHECK(hits[1].normalizedName == "hotel alpenhof");

    CHECK(seen.find("name")->second == "hotel alpenhof");
    CHECK(seen.count("lat") == 1);
    CHECK(seen.count("lon") == 1);
    CHECK(seen.find("radius")->second == "500");
    CHECK(seen.count("key") == 0);
}

TEST_CASE("places connector error mapping") {
    test::StubServer stub;
    std::atomic<int> limited{0}, flaky{0};
    stub.server.Get("/unauthorized", [](const httplib::Request&, httplib::Response& res) {
        res.status = 401;
    });
    stub.server.Get("/forbidden", [](const httplib::Request&, httplib::Response& res) {
        res.status = 403;
    });
    stub.server.Get("/limited", [&](const httplib::Request&, httplib::Response& res) {
        ++limited;
        res.status = 429;
    });
    stub.server.Get("/flaky", [&](const httplib::Request&, httplib::Response& res) {
        if (flaky++ == 0) {
            res.status = 429;
            return;
        }
        res.set_content(R"({"results": []})", "application/json");
    });
    stub.server.Get("/garbage", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("<html>", "text/html");
    });
    stub.server.Get("/shape", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(R"({"results": [{"id": "x"}]})", "application/json");
    });
    stub.server.Get("/down", [](const httplib::Request&, httplib::Response& res) {
        res.status = 503;
    });
    stub.server.Get("/keyed", [](const httplib::Request& req, httplib::Response& res) {
        if (req.get_param_value("key") != "s3cret") {
            res.status = 401;
            return;
        }
        res.set_content(R"({"results": []})", "application/json");
    });
    stub.start();

    auto ds = test::hotelSpec();
    auto clock = std::make_shared<test::VirtualClock>();
    auto make = [&](const std::string& path) {
        return PlacesHttpSource(handleFor(stub, path), ds, clock);
    };

    {
        auto s = make("/unauthorized");
        CHECK(errorKind(s) == SourceError::Kind::Auth);
    }
    {
        auto s = make("/forbidden");
        CHECK(errorKind(s) == SourceError::Kind::Auth);
    }
    {
        auto s = make("/limited");
        const auto before = clock->now();
        CHECK(errorKind(s) == SourceError::Kind::RateLimited);
        CHECK(limited == 2);
        CHECK(clock->now() - before >= std::chrono::seconds(1));
    }
    {
        auto s = make("/flaky");
        CHECK(s.search(alpenhof()).empty());
        CHECK(flaky == 2);
    }
    {
        auto s = make("/garbage");
        CHECK(errorKind(s) == SourceError::Kind::Parse);
    }
    {
        auto s = make("/shape");
        CHECK(errorKind(s) == SourceError::Kind::Parse);
    }
    {
        auto s = make("/down");
        CHECK(errorKind(s) == SourceError::Kind::Network);
    }
    {
        SourceHandle h = handleFor(stub, "/keyed");
        h.apiKeyEnv = "KGVAL_TEST_PLACES_KEY";
        ::unsetenv("KGVAL_TEST_PLACES_KEY");
        PlacesHttpSource missing(h, ds, clock);
        CHECK(errorKind(missing) == SourceError::Kind::Auth);
        ::setenv("KGVAL_TEST_PLACES_KEY", "s3cret", 1);
        PlacesHttpSource keyed(h, ds, clock);
        CHECK(keyed.search(alpenhof()).empty());
        ::unsetenv("KGVAL_TEST_PLACES_KEY");
    }
    {
        SourceHandle h = handleFor(stub, "/");
        h.endpoint = "http://127.0.0.1:1/nearby";
        PlacesHttpSource unreachable(h, ds, clock);
        CHECK(errorKind(unreachable) == SourceError::Kind::Network);
    }
}

TEST_CASE("sparql connector renders the template and groups bindings") {
    test::StubServer stub;
    std::string seenQuery;
    stub.server.Get("/sparql", [&](const httplib::Request& req, httplib::Response& res) {
        seenQuery = req.get_param_value("query");
        auto b = [](const std::string& v) { return nlohmann::json{{"type", "literal"}, {"value", v}}; };
        auto rows = nlohmann::json::array();
        rows.push_back({{"id", b("http://wd/Q2")}, {"name", b("Hotel Alpenhof")},
                        {"p", b("http://wd/prop/phone_number")}, {"o", b("+43 1")}});
        rows.push_back({{"id", b("http://wd/Q2")}, {"name", b("Hotel Alpenhof")},
                        {"p", b("http://wd/prop/formatted_address")}, {"o", b("Dorf 1")}});
        rows.push_back({{"id", b("http://wd/Q1")}, {"name", b("Hotel Alpenhof")},
                        {"lat", b(std::to_string(northBy(10)))}, {"lon", b(std::to_string(kOrigin.lon))}});
        res.set_content(nlohmann::json{{"results", {{"bindings", rows}}}}.dump(),
                        "application/sparql-results+json");
    });
    stub.start();

    auto h = handleFor(stub, "/sparql", SourceKind::SparqlHttp);
    h.queryTemplate = "SELECT * WHERE { ?id ?p \"{{name}}\" . # {{lat}},{{lon}} r={{radius}} y={{extra:year}} }";
    SparqlHttpSource source(h, test::hotelSpec(), std::make_shared<test::VirtualClock>());

    auto q = alpenhof();
    q.name = "say \"hi\"";
    q.extra["year"] = "1956";
    CHECK(source.renderQuery(q) ==
          "SELECT * WHERE { ?id ?p \"say \\\"hi\\\"\" . # 47.2692,11.4041 r=500 y=1956 }");

    auto hits = source.search(alpenhof());
    CHECK(seenQuery == source.renderQuery(alpenhof()));
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].recordId == "http://wd/Q1");
    CHECK(hits[0].geo.has_value());
    CHECK(hits[1].recordId == "http://wd/Q2");
    CHECK(hits[1].properties == AttributeMap{{"address", {"Dorf 1"}}, {"phone", {"+43 1"}}});
}

TEST_CASE("makeSource caches HTTP sources on disk") {
    test::StubServer stub;
    std::atomic<int> calls{0};
    stub.server.Get("/nearby", [&](const httplib::Request&, httplib::Response& res) {
        ++calls;
        res.set_content(R"({"results": [{"id": "a", "name": "Hotel Alpenhof", "lat": 47.2692, "lon": 11.4041}]})",
                        "application/json");
    });
    stub.start();

    test::TempDir dir;
    auto h = handleFor(stub, "/nearby");
    h.cacheDir = dir.path();
    auto source = makeSource(h, test::hotelSpec());
    auto first = source->search(alpenhof());
    auto second = source->search(alpenhof());
    CHECK(calls == 1);
    CHECK(first == second);
    REQUIRE(first.size() == 1);

    auto fresh = makeSource(h, test::hotelSpec());
    CHECK(fresh->search(alpenhof()) == first);
    CHECK(calls == 1);
}
