// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include "support.hpp"

#include <kgval/errors.hpp>
#include <kgval/matching.hpp>
#include <kgval/sources.hpp>

#include <doctest.h>

#include <cmath>

using namespace kgval;

namespace {

constexpr GeoPoint kOrigin{47.2692, 11.4041};

GeoPoint northBy(double meters) {
    return {kOrigin.lat + meters / kEarthRadiusMeters * 180.0 / M_PI, kOrigin.lon};
}

MatchQuery alpenhof(double radius = 500) {
    MatchQuery q;
    q.name = "hotel alpenhof";
    q.geo = kOrigin;
    q.radiusM = radius;
    return q;
}

class ThrowingSource final : public KnowledgeSource {
public:
    const std::string& id() const override { return id_; }
    std::vector<SourceRecord> search(const MatchQuery&) override {
        throw SourceError(id_, SourceError::Kind::Network, "connection refused");
    }

private:
    std::string id_ = "broken";
};

} // namespace

TEST_CASE("match examples") {
    auto at0 = selectMatch(alpenhof(), "s", {test::record("r1", "Hotel Alpenhof", kOrigin)});
    CHECK(at0.matched);
    REQUIRE(at0.candidate.has_value());
    CHECK(at0.candidate->recordId == "r1");
    CHECK(at0.distanceM == 0.0);
    CHECK(at0.candidatesConsidered == 1);

    const auto far = northBy(10000);
    CHECK(haversineMeters(kOrigin, far) > 500);
    auto tooFar = selectMatch(alpenhof(), "s", {test::record("r1", "Hotel Alpenhof", far)});
    CHECK_FALSE(tooFar.matched);
    CHECK_FALSE(tooFar.candidate.has_value());
    CHECK(tooFar.candidatesConsidered == 1);

    auto nearest = selectMatch(alpenhof(), "s",
                               {test::record("b", "Hotel Alpenhof", northBy(200)),
                                test::record("a", "Hotel Alpenhof", northBy(10))});
    CHECK(nearest.candidate->recordId == "a");
    CHECK(std::abs(*nearest.distanceM - 10.0) < 1e-6);
    CHECK(nearest.candidatesConsidered == 2);

    auto tie = selectMatch(alpenhof(), "s",
                           {test::record("r2", "Hotel Alpenhof", northBy(50)),
                            test::record("r1", "Hotel Alpenhof", northBy(50))});
    CHECK(tie.candidate->recordId == "r1");
}

TEST_CASE("missing geo on either side does not veto") {
    auto noGeo = selectMatch(alpenhof(), "s", {test::record("r1", "Hotel Alpenhof", std::nullopt)});
    CHECK(noGeo.matched);
    CHECK_FALSE(noGeo.distanceM.has_value());

    auto geoFirst = selectMatch(alpenhof(), "s",
                                {test::record("a", "Hotel Alpenhof", std::nullopt),
                                 test::record("z", "Hotel Alpenhof", northBy(400))});
    CHECK(geoFirst.candidate->recordId == "z");
    CHECK(geoFirst.distanceM.has_value());

    MatchQuery q = alpenhof();
    q.geo.reset();
    q.extra["phone"] = "4352878550";
    auto r = selectMatch(q, "s", {test::record("r1", "Hotel Alpenhof", kOrigin, {{"phone", {"+43 5287 8550"}}})});
    CHECK(r.matched);
    CHECK_FALSE(r.distanceM.has_value());
}

TEST_CASE("build match query from an instance") {
    DomainSpecification ds;
    ds.targetType = "Person";
    ds.properties = {"name", "birthYear"};
    ds.matchingProperties = {"name", "birthYear"};
    Instance p;
    p.id = Iri{"http://x/p1"};
    p.attributes = {{"name", {"  Jörg HAIDER "}}, {"birthYear", {"1950-01-26"}}};
    auto q = buildMatchQuery(p, ds, 500);
    CHECK(q.name == "jorg haider");
    CHECK(q.extra == std::map<std::string, std::string>{{"birthYear", "1950"}});
    CHECK_FALSE(q.geo.has_value());
    CHECK(q.populatedFields() == 2);

    Instance h;
    h.attributes = {{"name", {"Hotel Alpenhof"}}};
    h.geo = kOrigin;
    auto hq = buildMatchQuery(h, test::hotelSpec(), 250);
    CHECK(hq.name == "hotel alpenhof");
    CHECK(hq.geo == kOrigin);
    CHECK(hq.radiusM == 250);
}

TEST_CASE("strictness: any failing matching property flips the decision") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> within(0, 499), beyond(501, 5000);
    for (int i = 0; i < 300; ++i) {
        MatchQuery q = alpenhof();
        q.extra["birthYear"] = "19" + std::to_string(10 + i % 90);
        auto good = test::record("r" + std::to_string(i), "Hotel Alpenhof", northBy(within(rng)),
                                 {{"birthYear", {q.extra["birthYear"] + "-01-01"}}});
        NormalizerTable norms{{"birthYear", NormalizerKind::Year}};
        REQUIRE(selectMatch(q, "s", {good}, norms).matched);

        auto renamed = good;
        renamed.name = "Hotel Alpenhoff";
        renamed.normalizedName = normalize(renamed.name, NormalizerKind::Name);
        CHECK_FALSE(selectMatch(q, "s", {renamed}, norms).matched);

        auto moved = good;
        moved.geo = northBy(beyond(rng));
        CHECK_FALSE(selectMatch(q, "s", {moved}, norms).matched);

        auto wrongYear = good;
        wrongYear.properties["birthYear"] = {"1899"};
        CHECK_FALSE(selectMatch(q, "s", {wrongYear}, norms).matched);

        auto noYear = good;
        noYear.properties.erase("birthYear");
        CHECK_FALSE(selectMatch(q, "s", {noYear}, norms).matched);

        // already normalized inputs give the same decision
        auto renorm = q;
        renorm.name = normalize(q.name, NormalizerKind::Name);
        renorm.extra["birthYear"] = normalize(q.extra["birthYear"], NormalizerKind::Year);
        CHECK(selectMatch(renorm, "s", {good}, norms).matched);
        CHECK_FALSE(selectMatch(renorm, "s", {renamed}, norms).matched);
    }
}

TEST_CASE("matching against a fixture is deterministic") {
    auto ds = loadDomainSpec(test::fixtures() / "hotels" / "ds.json");
    FixtureSource source(loadFixture(test::fixtures() / "hotels" / "gplaces.json"), ds);
    auto ex = extractInstances(loadTurtleFile(test::fixtures() / "hotels" / "kg.ttl"), ds);
    for (const auto& inst : ex.instances) {
        auto q = buildMatchQuery(inst, ds, 500);
        auto a = matchInstance(q, source);
        auto b = matchInstance(q, source);
        CHECK(a.matched == b.matched);
        CHECK(a.candidate == b.candidate);
        CHECK(a.distanceM == b.distanceM);
        CHECK(a.candidatesConsidered == b.candidatesConsidered);
        CHECK(a.matched == a.candidate.has_value());
    }
}

TEST_CASE("source errors become annotations") {
    ThrowingSource broken;
    auto r = matchInstance(alpenhof(), broken);
    CHECK(r.sourceId == "broken");
    CHECK_FALSE(r.matched);
    REQUIRE(r.error.has_value());
    CHECK(r.error->find("connection refused") != std::string::npos);

    MatchQuery invalid;
    invalid.name = "x";
    CHECK_THROWS_AS(matchInstance(invalid, broken), PreconditionError);
}
