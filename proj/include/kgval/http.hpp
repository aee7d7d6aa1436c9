// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace kgval::http {

using Pairs = std::vector<std::pair<std::string, std::string>>;

struct Url {
    std::string scheme; // "http" or "https"
    std::string host;
    int port = 0;
    std::string path; // always starts with '/'

    std::string origin() const;
};

/// Splits an absolute http(s) URL. Throws PreconditionError on anything else.
Url parseUrl(const std::string& url);

struct Response {
    int status = 0;
    std::string body;
};

/// Issues a GET request. Transport failures throw NetworkError; timeouts throw
/// EndpointTimeout. Any HTTP status is returned to the caller.
Response get(const std::string& url, const Pairs& params, const Pairs& headers,
             std::chrono::milliseconds timeout);

} // namespace kgval::http
