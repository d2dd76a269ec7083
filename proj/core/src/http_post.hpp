#pragma once

// Internal helper shared by the remote embedding and extraction clients.

#include <chrono>
#include <string>

#include <nlohmann/json.hpp>

namespace reqquant::detail {

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string path;    // starts with '/'
};

// Throws Error(InvalidArgument) for anything that is not http(s)://host[:port][/path].
Endpoint split_endpoint(const std::string& url);

// POSTs `body` as JSON and parses the reply. Non-200 status and transport
// failures throw Error(Transport); an unparseable body throws Error(BadResponse).
nlohmann::json post_json(const std::string& url, const nlohmann::json& body,
                         std::chrono::milliseconds timeout);

}  // namespace reqquant::detail
