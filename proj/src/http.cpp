// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/http.hpp>

#include <kgval/errors.hpp>

#include <httplib.h>

namespace kgval::http {

std::string Url::origin() const {
    return scheme + "://" + host + ":" + std::to_string(port);
}

Url parseUrl(const std::string& url) {
    Url out;
    auto sep = url.find("://");
    if (sep == std::string::npos) {
        throw PreconditionError("not an absolute URL: " + url);
    }
    out.scheme = url.substr(0, sep);
    if (out.scheme != "http" && out.scheme != "https") {
        throw PreconditionError("unsupported URL scheme: " + out.scheme);
    }
    auto rest = url.substr(sep + 3);
    auto slash = rest.find('/');
    std::string authority = rest.substr(0, slash);
    out.path = slash == std::string::npos ? "/" : rest.substr(slash);
    auto colon = authority.rfind(':');
    if (colon != std::string::npos && authority.find(']') == std::string::npos) {
        out.host = authority.substr(0, colon);
        try {
            out.port = std::stoi(authority.substr(colon + 1));
        } catch (const std::exception&) {
            throw PreconditionError("invalid port in URL: " + url);
        }
    } else {
        out.host = authority;
        out.port = out.scheme == "https" ? 443 : 80;
    }
    if (out.host.empty()) {
        throw PreconditionError("missing host in URL: " + url);
    }
    return out;
}

Response get(const std::string& url, const Pairs& params, const Pairs& headers,
             std::chrono::milliseconds timeout) {
    auto parsed = parseUrl(url);
    httplib::Client client(parsed.origin());
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    client.set_follow_location(true);

    httplib::Params hp;
    for (const auto& [k, v] : params) {
        hp.emplace(k, v);
    }
    httplib::Headers hh;
    for (const auto& [k, v] : headers) {
        hh.emplace(k, v);
    }

    // Keep any query string already present in the configured endpoint.
    std::string path = parsed.path;
    std::string query;
    if (auto q = path.find('?'); q != std::string::npos) {
        query = path.substr(q + 1);
        path = path.substr(0, q);
    }
    std::string encoded = httplib::detail::params_to_query_str(hp);
    if (!query.empty() && !encoded.empty()) {
        query += '&';
    }
    query += encoded;
    if (!query.empty()) {
        path += '?' + query;
    }

    auto result = client.Get(path, hh);
    if (!result) {
        auto err = result.error();
        auto message = httplib::to_string(err) + " (" + url + ")";
        if (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout) {
            throw EndpointTimeout(message);
        }
        throw NetworkError(message);
    }
    return {result->status, result->body};
}

} // namespace kgval::http
