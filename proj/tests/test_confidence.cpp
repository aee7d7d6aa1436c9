// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/confidence.hpp>
#include <kgval/errors.hpp>

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace kgval;

namespace {

const SimilarityFunction kExact{SimilarityKind::Exact, NormalizerKind::Generic};

TripleScore tripleFromSims(const std::vector<double>& sims, const SourceRegistry& registry) {
    TripleScore t;
    t.subject = Iri{"http://x/s"};
    t.property = "p";
    t.kgValues = {"v"};
    for (std::size_t i = 0; i < sims.size(); ++i) {
        t.perSource.push_back({registry.sources()[i], true, "v", sims[i]});
    }
    scoreTriple(t, registry);
    return t;
}

std::vector<std::string> ids(std::size_t m) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < m; ++i) out.push_back("s" + std::to_string(i));
    return out;
}

} // namespace

TEST_CASE("normalizeWeights examples") {
    const double third = 1.0 / 3.0;
    CHECK(uniformWeights(3) == std::vector<double>{third, third, third});
    std::vector<double> zeros{0, 0, 0};
    CHECK(normalizeWeights(zeros) == std::vector<double>{third, third, third});
    std::vector<double> w{2, 1, 1};
    CHECK(normalizeWeights(w) == std::vector<double>{0.5, 0.25, 0.25});
    std::vector<double> half{0.5, 0.5};
    CHECK(normalizeWeights(half) == std::vector<double>{0.5, 0.5});
}

TEST_CASE("negative weights are rejected with their index") {
    std::vector<double> w{1, 0, -0.1};
    try {
        normalizeWeights(w);
        FAIL("expected NegativeWeight");
    } catch (const NegativeWeight& e) {
        CHECK(e.index() == 2);
    }
    std::vector<double> nan{1, NAN};
    CHECK_THROWS_AS(normalizeWeights(nan), NegativeWeight);
}

TEST_CASE("normalized weights sum to one") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0, 100);
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> w(1 + i % 7);
        for (auto& x : w) x = u(rng);
        auto n = normalizeWeights(w);
        CHECK(std::abs(std::accumulate(n.begin(), n.end(), 0.0) - 1.0) < 1e-12);
    }
}

TEST_CASE("source registry") {
    SourceRegistry uniform(ids(3));
    CHECK(uniform.weights() == std::vector<double>(3, 1.0 / 3.0));
    CHECK_THROWS_AS(SourceRegistry(ids(3), std::vector<double>{1, 2}), PreconditionError);
    CHECK_THROWS_AS(SourceRegistry(std::vector<std::string>{}), PreconditionError);
    SourceRegistry raw(ids(3), std::vector<double>{2, 1, 1});
    CHECK(raw.weightSum() == 4.0);
    CHECK(raw.normalizedWeights() == std::vector<double>{0.5, 0.25, 0.25});
}

TEST_CASE("unweighted triple confidence") {
    std::vector<std::optional<std::string>> all{"A", "a", " A "};
    CHECK(tripleConfidenceUnweighted("A", all, kExact) == 3.0);
    std::vector<std::optional<std::string>> one{"A", std::nullopt, std::nullopt};
    CHECK(tripleConfidenceUnweighted("A", one, kExact) == 1.0);
    std::vector<std::optional<std::string>> lev{"sitting", std::nullopt};
    CHECK(tripleConfidenceUnweighted(
              "kitten", lev, {SimilarityKind::LevenshteinNormalized, NormalizerKind::Generic}) ==
          doctest::Approx(0.5714).epsilon(1e-4));
}

TEST_CASE("weighted triple confidence") {
    SourceRegistry equal(ids(3));
    std::vector<std::optional<std::string>> one{"A", std::nullopt, "B"};
    auto t = tripleConfidence("A", one, kExact, equal);
    CHECK(t.weighted == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(t.unweighted == 1.0);
    REQUIRE(t.perSource.size() == 3);
    CHECK(t.perSource[1].sourceId == "s1");
    CHECK_FALSE(t.perSource[1].value.has_value());
    CHECK(t.perSource[1].sim == 0.0);
    CHECK(t.perSource[2].value == "B");
    CHECK(t.kgValue() == "A");

    std::vector<std::optional<std::string>> all{"A", "A", "A"};
    for (auto w : {std::vector<double>{0.2, 0.3, 0.5}, std::vector<double>{7, 0, 1}}) {
        CHECK(tripleConfidence("A", all, kExact, SourceRegistry(ids(3), w)).weighted ==
              doctest::Approx(1.0).epsilon(1e-15));
    }

    SourceRegistry skewed(ids(3), std::vector<double>{0.8, 0.1, 0.1});
    std::vector<std::optional<std::string>> first{"A", std::nullopt, std::nullopt};
    CHECK(tripleConfidence("A", first, kExact, skewed).weighted ==
          doctest::Approx(0.8).epsilon(1e-15));

    CHECK_THROWS_AS(tripleConfidence("A", first, kExact, SourceRegistry(ids(2))),
                    PreconditionError);
}

TEST_CASE("instance confidence") {
    SourceRegistry reg(ids(1));
    auto build = [&](std::vector<double> scores) {
        std::vector<TripleScore> out;
        for (double s : scores) out.push_back(tripleFromSims({s}, reg));
        return out;
    };
    auto strict = instanceConfidence(Iri{"http://x/s"}, build({1.0, 0.5, 0.0}), 0.5);
    CHECK(strict.confidence == 0.5);
    CHECK_FALSE(strict.valid);

    auto constant = instanceConfidence(Iri{"http://x/s"}, build({0.75, 0.75, 0.75, 0.75}), 0.5);
    CHECK(constant.confidence == 0.75);

    auto single = instanceConfidence(Iri{"http://x/s"}, build({0.6}), 0.5);
    CHECK(single.confidence == 0.6);
    CHECK(single.valid);
    CHECK(single.threshold == 0.5);

    CHECK_THROWS_AS(instanceConfidence(Iri{"http://x/s"}, {}, 0.5), EmptyAttributeSpace);
    CHECK_FALSE(exceedsThreshold(0.5, 0.5));
    CHECK(exceedsThreshold(0.5000001, 0.5));
}

TEST_CASE("brute-force oracle, scaling, uniform identity, monotonicity, permutation") {
    std::mt19937 rng(8675309);
    std::uniform_int_distribution<std::size_t> mDist(1, 5), MDist(1, 6);
    std::uniform_int_distribution<int> grid(0, 4);
    std::uniform_real_distribution<double> wDist(0.0, 10.0);
    for (int c = 0; c < 500; ++c) {
        const std::size_t m = mDist(rng), M = MDist(rng);
        std::vector<double> w(m);
        for (auto& x : w) x = wDist(rng);
        std::vector<std::vector<double>> sims(M, std::vector<double>(m));
        for (auto& row : sims)
            for (auto& s : row) s = grid(rng) * 0.25;

        SourceRegistry reg(ids(m), w);
        std::vector<TripleScore> triples;
        double mean = 0;
        for (const auto& row : sims) {
            auto t = tripleFromSims(row, reg);
            double num = 0, den = 0, eq1 = 0;
            for (std::size_t i = 0; i < m; ++i) {
                num += row[i] * w[i];
                den += w[i];
                eq1 += row[i];
            }
            const double eq2 = den > 0 ? num / den : eq1 / static_cast<double>(m);
            CHECK(std::abs(t.unweighted - eq1) < 1e-9);
            CHECK(std::abs(t.weighted - eq2) < 1e-9);
            CHECK(t.weighted >= 0.0);
            CHECK(t.weighted <= 1.0);
            mean += eq2;
            triples.push_back(t);
        }
        mean /= static_cast<double>(M);
        auto inst = instanceConfidence(Iri{"http://x/s"}, triples, 0.5);
        CHECK(std::abs(inst.confidence - mean) < 1e-9);

        for (double lambda : {0.1, 3.0, 1000.0}) {
            std::vector<double> scaled(w);
            for (auto& x : scaled) x *= lambda;
            SourceRegistry sreg(ids(m), scaled);
            std::vector<TripleScore> st;
            for (std::size_t k = 0; k < M; ++k) {
                st.push_back(tripleFromSims(sims[k], sreg));
                CHECK(std::abs(st.back().weighted - triples[k].weighted) <= 1e-12);
            }
            auto si = instanceConfidence(Iri{"http://x/s"}, st, 0.5);
            CHECK(std::abs(si.confidence - inst.confidence) <= 1e-12);
        }

        SourceRegistry uni(ids(m));
        for (const auto& row : sims) {
            auto t = tripleFromSims(row, uni);
            CHECK(t.weighted == t.unweighted / static_cast<double>(m));
        }

        std::vector<std::size_t> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> pw(m);
        for (std::size_t i = 0; i < m; ++i) pw[i] = w[perm[i]];
        SourceRegistry preg(ids(m), pw);
        for (std::size_t k = 0; k < M; ++k) {
            std::vector<double> ps(m);
            for (std::size_t i = 0; i < m; ++i) ps[i] = sims[k][perm[i]];
            CHECK(std::abs(tripleFromSims(ps, preg).weighted - triples[k].weighted) < 1e-12);
        }

        const std::size_t k = static_cast<std::size_t>(c) % M, i = static_cast<std::size_t>(c) % m;
        if (sims[k][i] < 1.0) {
            auto raised = sims[k];
            raised[i] += 0.25;
            auto up = tripleFromSims(raised, reg);
            CHECK(up.weighted >= triples[k].weighted);
            auto copy = triples;
            copy[k] = up;
            CHECK(instanceConfidence(Iri{"http://x/s"}, copy, 0.5).confidence >= inst.confidence);
        }
    }
}
