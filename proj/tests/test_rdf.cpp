// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include "support.hpp"

#include <kgval/errors.hpp>
#include <kgval/rdf.hpp>

#include <doctest.h>

#include <regex>
#include <set>
#include <sstream>

using namespace kgval;

TEST_CASE("single statement with the a keyword") {
    auto kg = parseTurtle("@prefix s: <http://schema.org/> . <http://x/h1> a s:Hotel .");
    REQUIRE(kg.triples.size() == 1);
    CHECK(kg.triples[0].subject.value == "http://x/h1");
    CHECK(kg.triples[0].predicate.value == kRdfType);
    CHECK(kg.triples[0].object == Term::iri("http://schema.org/Hotel"));
    CHECK(kg.origin == KnowledgeGraph::Origin::TurtleFile);
}

TEST_CASE("duplicate statements collapse") {
    auto kg = parseTurtle("@prefix s: <http://schema.org/> .\n"
                          "<http://x/h1> s:name \"A\" ; s:name \"A\" .");
    REQUIRE(kg.triples.size() == 1);
    CHECK(kg.triples[0].object == Term::literal("A"));
}

TEST_CASE("comma lists, numbers, tags and comments") {
    auto kg = parseTurtle("PREFIX s: <http://schema.org/>\n"
                          "# comment\n"
                          "<http://x/h1> s:name \"A\"@de, \"B\"^^s:Text ; # trailing\n"
                          "  s:latitude 47.25 ; s:open true .\n");
    REQUIRE(kg.triples.size() == 4);
    CHECK(kg.triples[0].object.value == "A");
    CHECK(kg.triples[1].object.value == "B");
    CHECK(kg.triples[2].object.value == "47.25");
    CHECK(kg.triples[3].object.value == "true");
}

TEST_CASE("escapes in literals") {
    auto kg = parseTurtle("<http://x/a> <http://x/p> \"say \\\"hi\\\"\\n\\u00e9\" .");
    REQUIRE(kg.triples.size() == 1);
    CHECK(kg.triples[0].object.value == "say \"hi\"\n\xc3\xa9");
}

TEST_CASE("empty literals are dropped") {
    auto kg = parseTurtle("<http://x/a> <http://x/p> \"\" , \"x\" .");
    REQUIRE(kg.triples.size() == 1);
    CHECK(kg.triples[0].object.value == "x");
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parseTurtle("<http://x/a> <http://x/p> \"x\" .\n<http://x/b> <http://x/p> .");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 27);
    }
    CHECK_THROWS_AS(parseTurtle("<http://x/a> <http://x/p> \"unterminated ."), SyntaxError);
    CHECK_THROWS_AS(parseTurtle("<http://x/a> <http://x/p> \"x\""), SyntaxError);
}

TEST_CASE("unsupported syntax is rejected") {
    CHECK_THROWS_AS(parseTurtle("_:b <http://x/p> \"x\" ."), SyntaxError);
    CHECK_THROWS_AS(parseTurtle("<http://x/a> <http://x/p> [ <http://x/q> \"x\" ] ."), SyntaxError);
    CHECK_THROWS_AS(parseTurtle("<http://x/a> <http://x/p> ( \"x\" ) ."), SyntaxError);
    CHECK_THROWS_AS(parseTurtle("@base <http://x/> ."), SyntaxError);
    CHECK_THROWS_AS(parseTurtle("<a> <http://x/p> \"x\" ."), SyntaxError);
}

TEST_CASE("undeclared prefix") {
    try {
        parseTurtle("<http://x/a> zz:p \"x\" .");
        FAIL("expected UnknownPrefix");
    } catch (const UnknownPrefix& e) {
        CHECK(e.prefix() == "zz");
    }
}

TEST_CASE("dedupTriples keeps first occurrences") {
    std::vector<Triple> t{{{"http://x/a"}, {"http://x/p"}, Term::literal("1")},
                          {{"http://x/b"}, {"http://x/p"}, Term::literal("2")},
                          {{"http://x/a"}, {"http://x/p"}, Term::literal("1")},
                          {{"http://x/a"}, {"http://x/p"}, Term::iri("1")}};
    dedupTriples(t);
    REQUIRE(t.size() == 3);
    CHECK(t[0].subject.value == "http://x/a");
    CHECK(t[1].subject.value == "http://x/b");
    CHECK(t[2].object.isIri());
}

TEST_CASE("localName") {
    CHECK(localName("http://schema.org/Hotel") == "Hotel");
    CHECK(localName("http://www.w3.org/1999/02/22-rdf-syntax-ns#type") == "type");
    CHECK(localName("Hotel") == "Hotel");
}

TEST_CASE("serialize then parse reproduces random graphs") {
    std::mt19937 rng(20260417);
    const std::string alphabet = "abcXYZ 09\"\\\n\t#.;,<>\xc3\xa9\xe2\x82\xac";
    auto randomText = [&](std::size_t maxLen) {
        std::uniform_int_distribution<std::size_t> len(1, maxLen);
        std::uniform_int_distribution<int> pick(0, 14);
        std::string s;
        for (std::size_t i = 0, n = len(rng); i < n; ++i) {
            int k = pick(rng);
            if (k == 13) {
                s += "\xc3\xa9";
            } else if (k == 14) {
                s += "\xe2\x82\xac";
            } else {
                s += alphabet[static_cast<std::size_t>(k)];
            }
        }
        return s;
    };
    for (int round = 0; round < 200; ++round) {
        KnowledgeGraph kg;
        std::uniform_int_distribution<int> count(0, 12);
        std::uniform_int_distribution<int> small(0, 3);
        for (int i = 0, n = count(rng); i < n; ++i) {
            Triple t{{"http://x.org/s" + std::to_string(small(rng))},
                     {"http://x.org/p#" + std::to_string(small(rng))},
                     small(rng) == 0 ? Term::iri("http://x.org/o/" + std::to_string(small(rng)))
                                     : Term::literal(randomText(10))};
            kg.triples.push_back(t);
        }
        dedupTriples(kg.triples);
        auto back = parseTurtle(serializeTurtle(kg));
        REQUIRE(back.triples == kg.triples);
    }
}

TEST_CASE("hotel fixture subjects against a line scan") {
    const auto path = test::fixtures() / "hotels" / "kg.ttl";
    std::istringstream in(test::readText(path));
    std::regex hotel(R"(^ex:(h\d+) a schema:Hotel\b)");
    std::set<std::string> scanned;
    for (std::string line; std::getline(in, line);) {
        std::smatch m;
        if (std::regex_search(line, m, hotel)) {
            scanned.insert("http://example.org/hotel/" + m[1].str());
        }
    }
    CHECK(scanned.size() == 50);

    auto kg = loadTurtleFile(path);
    std::set<std::string> typed;
    for (const auto& t : kg.triples) {
        if (t.predicate.value == kRdfType && t.object.value == "http://schema.org/Hotel") {
            typed.insert(t.subject.value);
        }
    }
    CHECK(typed == scanned);
}
