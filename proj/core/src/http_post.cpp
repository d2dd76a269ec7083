#include "http_post.hpp"

#include <httplib.h>

#include "reqquant/error.hpp"

namespace reqquant::detail {

Endpoint split_endpoint(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error(ErrorKind::InvalidArgument, "endpoint '" + url + "' has no scheme");
    }
    const std::string scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
        throw Error(ErrorKind::InvalidArgument, "unsupported endpoint scheme '" + scheme + "'");
    }
    const auto path_start = url.find('/', scheme_end + 3);
    Endpoint ep;
    ep.origin = url.substr(0, path_start);
    ep.path = path_start == std::string::npos ? "/" : url.substr(path_start);
    if (ep.origin.size() <= scheme_end + 3) {
        throw Error(ErrorKind::InvalidArgument, "endpoint '" + url + "' has no host");
    }
    return ep;
}

nlohmann::json post_json(const std::string& url, const nlohmann::json& body,
                         std::chrono::milliseconds timeout) {
    const Endpoint ep = split_endpoint(url);
    httplib::Client client(ep.origin);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    auto res = client.Post(ep.path, body.dump(), "application/json");
    if (!res) {
        throw Error(ErrorKind::Transport,
                    "request to " + url + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw Error(ErrorKind::Transport,
                    "request to " + url + " returned HTTP " + std::to_string(res->status));
    }
    try {
        return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::BadResponse, "reply from " + url + " is not JSON: " + e.what());
    }
}

}  // namespace reqquant::detail
