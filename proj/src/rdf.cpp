// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/rdf.hpp>

#include <kgval/errors.hpp>

#include "utf8.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

namespace kgval {

namespace {

bool isPnChar(char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '-' || c == '.' || c == ':' || c == '%' ||
           u >= 0x80;
}

bool isPrefixChar(char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '-' || c == '.' || u >= 0x80;
}

class TurtleParser {
public:
    explicit TurtleParser(std::string_view text) : text_(text) {}

    KnowledgeGraph parse() {
        KnowledgeGraph kg;
        kg.origin = KnowledgeGraph::Origin::TurtleFile;
        skipWs();
        while (!atEnd()) {
            if (peek() == '@') {
                directive();
            } else if (matchKeyword("PREFIX")) {
                sparqlPrefix();
            } else if (matchKeyword("BASE")) {
                fail("relative IRIs and BASE are not supported");
            } else {
                statement(kg.triples);
            }
            skipWs();
        }
        dedupTriples(kg.triples);
        return kg;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    std::map<std::string, std::string, std::less<>> prefixes_;

    bool atEnd() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    char get() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw SyntaxError(line_, col_, message);
    }

    void skipWs() {
        while (!atEnd()) {
            char c = peek();
            if (c == '#') {
                while (!atEnd() && peek() != '\n') {
                    get();
                }
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                get();
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        skipWs();
        if (atEnd() || peek() != c) {
            fail(std::string("expected '") + c + "'");
        }
        get();
    }

    // Case-insensitive keyword followed by whitespace.
    bool matchKeyword(std::string_view kw) const {
        if (text_.size() - pos_ <= kw.size()) {
            return false;
        }
        for (std::size_t i = 0; i < kw.size(); ++i) {
            if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != kw[i]) {
                return false;
            }
        }
        char after = text_[pos_ + kw.size()];
        return after == ' ' || after == '\t' || after == '\n' || after == '\r';
    }

    void directive() {
        get(); // '@'
        std::string word;
        while (!atEnd() && std::isalpha(static_cast<unsigned char>(peek()))) {
            word += get();
        }
        if (word == "base") {
            fail("relative IRIs and @base are not supported");
        }
        if (word != "prefix") {
            fail("unknown directive @" + word);
        }
        prefixDecl();
        expect('.');
    }

    void sparqlPrefix() {
        for (int i = 0; i < 6; ++i) {
            get();
        }
        prefixDecl();
    }

    void prefixDecl() {
        skipWs();
        std::string name;
        while (!atEnd() && isPrefixChar(peek())) {
            name += get();
        }
        if (atEnd() || peek() != ':') {
            fail("expected ':' after prefix name");
        }
        get();
        skipWs();
        if (peek() != '<') {
            fail("expected IRI in prefix declaration");
        }
        prefixes_[name] = iriRef();
    }

    void statement(std::vector<Triple>& out) {
        Iri subject{subjectTerm()};
        predicateObjectList(subject, out);
        expect('.');
    }

    std::string subjectTerm() {
        skipWs();
        char c = peek();
        if (c == '<') {
            return iriRef();
        }
        if (c == '[' || c == '(' || (c == '_' && peek(1) == ':')) {
            fail("blank nodes and collections are not supported");
        }
        if (c == '"' || c == '\'' || std::isdigit(static_cast<unsigned char>(c))) {
            fail("literal in subject position");
        }
        return prefixedName();
    }

    void predicateObjectList(const Iri& subject, std::vector<Triple>& out) {
        for (;;) {
            Iri predicate{verb()};
            objectList(subject, predicate, out);
            skipWs();
            if (peek() != ';') {
                return;
            }
            // Repeated and trailing semicolons are legal.
            while (peek() == ';') {
                get();
                skipWs();
            }
            if (peek() == '.' || peek() == ']') {
                return;
            }
        }
    }

    std::string verb() {
        skipWs();
        if (peek() == 'a') {
            char next = peek(1);
            if (next == ' ' || next == '\t' || next == '\n' || next == '\r' || next == '<' ||
                next == '"') {
                get();
                return std::string(kRdfType);
            }
        }
        if (peek() == '<') {
            return iriRef();
        }
        if (peek() == '"' || peek() == '[' || peek() == '_') {
            fail("expected predicate");
        }
        return prefixedName();
    }

    void objectList(const Iri& subject, const Iri& predicate, std::vector<Triple>& out) {
        for (;;) {
            auto obj = object();
            if (!(obj.kind == Term::Kind::Literal && obj.value.empty())) {
                out.push_back(Triple{subject, predicate, std::move(obj)});
            }
            skipWs();
            if (peek() != ',') {
                return;
            }
            get();
        }
    }

    Term object() {
        skipWs();
        if (atEnd()) {
            fail("unexpected end of input, expected object");
        }
        char c = peek();
        if (c == '<') {
            return Term::iri(iriRef());
        }
        if (c == '"' || c == '\'') {
            auto lex = quotedString();
            literalSuffix();
            return Term::literal(std::move(lex));
        }
        if (c == '+' || c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
            return Term::literal(numeric());
        }
        if (c == '[' || c == '(' || (c == '_' && peek(1) == ':')) {
            fail("blank nodes and collections are not supported");
        }
        if (text_.substr(pos_, 4) == "true" && !isPnChar(peek(4))) {
            for (int i = 0; i < 4; ++i) get();
            return Term::literal("true");
        }
        if (text_.substr(pos_, 5) == "false" && !isPnChar(peek(5))) {
            for (int i = 0; i < 5; ++i) get();
            return Term::literal("false");
        }
        return Term::iri(prefixedName());
    }

    void literalSuffix() {
        if (peek() == '@') {
            get();
            if (!std::isalpha(static_cast<unsigned char>(peek()))) {
                fail("malformed language tag");
            }
            while (!atEnd() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
                get();
            }
        } else if (peek() == '^' && peek(1) == '^') {
            get();
            get();
            if (peek() == '<') {
                iriRef();
            } else {
                prefixedName();
            }
        }
    }

    std::string numeric() {
        std::string out;
        if (peek() == '+' || peek() == '-') {
            out += get();
        }
        bool digits = false;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            out += get();
            digits = true;
        }
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            out += get();
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                out += get();
            }
            digits = true;
        }
        if (!digits) {
            fail("malformed numeric literal");
        }
        if (peek() == 'e' || peek() == 'E') {
            out += get();
            if (peek() == '+' || peek() == '-') {
                out += get();
            }
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                fail("malformed exponent");
            }
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                out += get();
            }
        }
        return out;
    }

    std::string iriRef() {
        get(); // '<'
        std::string out;
        for (;;) {
            if (atEnd()) {
                fail("unterminated IRI");
            }
            char c = get();
            if (c == '>') {
                break;
            }
            if (c == '\\') {
                char e = atEnd() ? '\0' : get();
                if (e == 'u' || e == 'U') {
                    utf8::append(out, hexCodepoint(e == 'u' ? 4 : 8));
                    continue;
                }
                fail("invalid escape in IRI");
            }
            if (c == ' ' || c == '\n' || c == '"' || c == '<' || c == '{' || c == '}') {
                fail("invalid character in IRI");
            }
            out += c;
        }
        if (out.find(':') == std::string::npos) {
            fail("relative IRI <" + out + "> is not supported");
        }
        return out;
    }

    std::string prefixedName() {
        std::size_t startLine = line_;
        std::size_t startCol = col_;
        std::string prefix;
        while (!atEnd() && isPrefixChar(peek())) {
            prefix += get();
        }
        if (atEnd() || peek() != ':') {
            throw SyntaxError(startLine, startCol,
                              prefix.empty() ? "unexpected character '" + std::string(1, peek()) + "'"
                                             : "unexpected token '" + prefix + "'");
        }
        get();
        std::string local;
        while (!atEnd()) {
            char c = peek();
            if (c == '\\' && pos_ + 1 < text_.size()) {
                get();
                local += get();
                continue;
            }
            if (!isPnChar(c)) {
                break;
            }
            // A trailing '.' terminates the statement rather than the name.
            if (c == '.' && !isPnChar(peek(1))) {
                break;
            }
            local += get();
        }
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) {
            throw UnknownPrefix(prefix);
        }
        return it->second + local;
    }

    char32_t hexCodepoint(int digits) {
        char32_t cp = 0;
        for (int i = 0; i < digits; ++i) {
            if (atEnd() || !std::isxdigit(static_cast<unsigned char>(peek()))) {
                fail("malformed unicode escape");
            }
            char h = get();
            cp = cp * 16 + static_cast<char32_t>(std::isdigit(static_cast<unsigned char>(h))
                                                     ? h - '0'
                                                     : std::tolower(h) - 'a' + 10);
        }
        return cp;
    }

    std::string quotedString() {
        char quote = get();
        bool longForm = peek() == quote && peek(1) == quote;
        if (longForm) {
            get();
            get();
        }
        std::string out;
        for (;;) {
            if (atEnd()) {
                fail("unterminated string literal");
            }
            char c = get();
            if (c == quote) {
                if (!longForm) {
                    break;
                }
                if (peek() == quote && peek(1) == quote) {
                    get();
                    get();
                    // Quotes adjacent to the closing delimiter belong to the content.
                    while (peek() == quote) {
                        out += get();
                    }
                    break;
                }
                out += c;
                continue;
            }
            if (!longForm && (c == '\n' || c == '\r')) {
                fail("newline in string literal");
            }
            if (c == '\\') {
                if (atEnd()) {
                    fail("unterminated escape");
                }
                char e = get();
                switch (e) {
                    case 't': out += '\t'; break;
                    case 'b': out += '\b'; break;
                    case 'n': out += '\n'; break;
                    case 'r': out += '\r'; break;
                    case 'f': out += '\f'; break;
                    case '"': out += '"'; break;
                    case '\'': out += '\''; break;
                    case '\\': out += '\\'; break;
                    case 'u': utf8::append(out, hexCodepoint(4)); break;
                    case 'U': utf8::append(out, hexCodepoint(8)); break;
                    default: fail(std::string("invalid escape \\") + e);
                }
                continue;
            }
            out += c;
        }
        return out;
    }
};

void writeIri(std::ostream& os, const std::string& iri) {
    os << '<';
    for (char c : iri) {
        if (c == '>' || c == '\\' || c == ' ' || c == '"' || c == '<' || c == '{' || c == '}' ||
            c == '\n') {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned char>(c));
            os << buf;
        } else {
            os << c;
        }
    }
    os << '>';
}

void writeLiteral(std::ostream& os, const std::string& value) {
    os << '"';
    for (char c : value) {
        switch (c) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            case '\r': os << "\\r"; break;
            case '\t': os << "\\t"; break;
            case '\b': os << "\\b"; break;
            case '\f': os << "\\f"; break;
            default: os << c;
        }
    }
    os << '"';
}

} // namespace

KnowledgeGraph parseTurtle(std::string_view text) {
    return TurtleParser(text).parse();
}

KnowledgeGraph loadTurtleFile(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parseTurtle(buffer.str());
}

std::string serializeTurtle(const KnowledgeGraph& kg) {
    std::ostringstream os;
    for (const auto& t : kg.triples) {
        writeIri(os, t.subject.value);
        os << ' ';
        writeIri(os, t.predicate.value);
        os << ' ';
        if (t.object.isIri()) {
            writeIri(os, t.object.value);
        } else {
            writeLiteral(os, t.object.value);
        }
        os << " .\n";
    }
    return os.str();
}

void dedupTriples(std::vector<Triple>& triples) {
    struct Hash {
        std::size_t operator()(const Triple& t) const noexcept {
            std::hash<std::string> h;
            std::size_t seed = h(t.subject.value);
            seed ^= h(t.predicate.value) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
            seed ^= h(t.object.value) + static_cast<std::size_t>(t.object.kind) + (seed << 6) +
                    (seed >> 2);
            return seed;
        }
    };
    std::unordered_set<Triple, Hash> seen;
    std::vector<Triple> out;
    out.reserve(triples.size());
    for (auto& t : triples) {
        if (seen.insert(t).second) {
            out.push_back(std::move(t));
        }
    }
    triples = std::move(out);
}

std::string_view localName(std::string_view iri) noexcept {
    auto pos = iri.find_last_of("#/");
    return pos == std::string_view::npos ? iri : iri.substr(pos + 1);
}

} // namespace kgval
