// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <compare>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace kgval {

inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

struct Iri {
    std::string value;

    auto operator<=>(const Iri&) const = default;
};

struct Term {
    enum class Kind { Iri, Literal };

    Kind kind = Kind::Literal;
    std::string value;

    static Term iri(std::string v) { return {Kind::Iri, std::move(v)}; }
    static Term literal(std::string v) { return {Kind::Literal, std::move(v)}; }

    bool isIri() const noexcept { return kind == Kind::Iri; }
    auto operator<=>(const Term&) const = default;
};

struct Triple {
    Iri subject;
    Iri predicate;
    Term object;

    auto operator<=>(const Triple&) const = default;
};

struct KnowledgeGraph {
    enum class Origin { TurtleFile, SparqlEndpoint };

    std::vector<Triple> triples;
    Origin origin = Origin::TurtleFile;
};

/// Parses the supported Turtle subset: @prefix/PREFIX directives, prefixed
/// names, absolute IRIs, quoted and numeric/boolean literals, the `a` keyword,
/// and the `;` / `,` abbreviations. Blank nodes, collections, and @base are
/// rejected with a SyntaxError. Literal language tags and datatypes are
/// accepted but only the lexical form is kept. Empty string literals are
/// dropped. Duplicate triples are removed, keeping first occurrence order.
KnowledgeGraph parseTurtle(std::string_view text);

KnowledgeGraph loadTurtleFile(const std::filesystem::path& path);

/// Writes one fully expanded statement per line. The output is valid input
/// for parseTurtle and reproduces the same triple list.
std::string serializeTurtle(const KnowledgeGraph& kg);

/// Removes exact duplicates in place, keeping the first occurrence.
void dedupTriples(std::vector<Triple>& triples);

/// Text after the last '#' or '/' of an IRI (the whole IRI when neither occurs).
std::string_view localName(std::string_view iri) noexcept;

} // namespace kgval
