// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/normalize.hpp>

#include <doctest.h>

#include <random>

using namespace kgval;

TEST_CASE("name normalizer") {
    CHECK(normalize("Hotel  ALPENHOF ", NormalizerKind::Name) == "hotel alpenhof");
    CHECK(normalize("\"Gasthof Mühle!\"", NormalizerKind::Name) == "gasthof muhle");
    CHECK(normalize("Schloß Élan", NormalizerKind::Name) == "schloss elan");
    CHECK(normalize("Café́", NormalizerKind::Name) == "cafe");
    CHECK(normalize("Zum Löwen & Spa", NormalizerKind::Name) == "zum lowen & spa");
    CHECK(normalize(" ... ", NormalizerKind::Name).empty());
}

TEST_CASE("phone normalizer") {
    CHECK(normalize("+43 5287 8550", NormalizerKind::Phone) == "4352878550");
    CHECK(normalize("05223 56313", NormalizerKind::Phone) == "522356313");
    CHECK(normalize("(0043) 512-123", NormalizerKind::Phone) == "43512123");
    CHECK(normalize("n/a", NormalizerKind::Phone).empty());
}

TEST_CASE("year normalizer") {
    CHECK(normalize("1956-03-12", NormalizerKind::Year) == "1956");
    CHECK(normalize("+1956-03-12T00:00:00Z", NormalizerKind::Year) == "1956");
    CHECK(normalize("born 12.3.1956", NormalizerKind::Year) == "1956");
    CHECK(normalize("19", NormalizerKind::Year).empty());
}

TEST_CASE("generic normalizer") {
    CHECK(normalize("  Hello \t World ", NormalizerKind::Generic) == "hello world");
    CHECK(normalize("A-B.", NormalizerKind::Generic) == "a-b.");
}

TEST_CASE("normalizer names and inference") {
    for (auto k : {NormalizerKind::Name, NormalizerKind::Phone, NormalizerKind::Address,
                   NormalizerKind::Year, NormalizerKind::Generic}) {
        CHECK(normalizerFromString(toString(k)) == k);
    }
    CHECK_FALSE(normalizerFromString("soundex").has_value());
    CHECK((inferNormalizer("telephone") == NormalizerKind::Phone));
    CHECK((inferNormalizer("streetAddress") == NormalizerKind::Address));
    CHECK((inferNormalizer("birthYear") == NormalizerKind::Year));
    CHECK((inferNormalizer("name") == NormalizerKind::Name));
    CHECK((inferNormalizer("starRating") == NormalizerKind::Generic));
    NormalizerTable table{{"starRating", NormalizerKind::Year}};
    CHECK((normalizerFor(table, "starRating") == NormalizerKind::Year));
    CHECK((normalizerFor(table, "phone") == NormalizerKind::Phone));
}

TEST_CASE("normalization is idempotent") {
    std::mt19937 rng(99);
    const std::vector<std::string> pieces{"A",  "b",  " ",  "  ", "\t", ".",  ",", "-",  "0",
                                          "7",  "+",  "ä",  "Ö",  "ß",  "é",  "È", "ñ",  "Ł",
                                          "ø",  "(",  ")",  "!",  "'",  "Z",  "1956", "\xcc\x81"};
    std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
    std::uniform_int_distribution<int> len(0, 16);
    for (int round = 0; round < 2000; ++round) {
        std::string s;
        for (int i = 0, n = len(rng); i < n; ++i) {
            s += pieces[pick(rng)];
        }
        for (auto k : {NormalizerKind::Name, NormalizerKind::Phone, NormalizerKind::Address,
                       NormalizerKind::Year, NormalizerKind::Generic}) {
            auto once = normalize(s, k);
            CAPTURE(s);
            CHECK(normalize(once, k) == once);
        }
    }
}
