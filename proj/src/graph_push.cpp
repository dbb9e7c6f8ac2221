#include "lyricmood/graph_push.hpp"

#include <charconv>

#include <httplib.h>

#include "lyricmood/error.hpp"

namespace lyricmood {

PushTarget parse_push_url(std::string_view url) {
    constexpr std::string_view scheme = "http://";
    if (url.substr(0, scheme.size()) != scheme)
        throw Error("push URL must start with http:// (got '" + std::string(url) + "')");
    url.remove_prefix(scheme.size());

    PushTarget target;
    const auto slash = url.find('/');
    std::string_view authority = url.substr(0, slash);
    if (slash != std::string_view::npos) target.path = std::string(url.substr(slash));

    const auto colon = authority.rfind(':');
    if (colon != std::string_view::npos) {
        const auto port = authority.substr(colon + 1);
        const auto r = std::from_chars(port.data(), port.data() + port.size(), target.port);
        if (r.ec != std::errc{} || r.ptr != port.data() + port.size() || target.port <= 0 || target.port > 65535)
            throw Error("bad port in push URL '" + std::string(port) + "'");
        authority = authority.substr(0, colon);
    }
    if (authority.empty()) throw Error("push URL has no host");
    target.host = std::string(authority);
    return target;
}

std::vector<nlohmann::json> cypher_batches(const std::vector<std::string>& statements, std::size_t max_per_request) {
    if (max_per_request == 0) max_per_request = 1;
    std::vector<nlohmann::json> batches;
    for (std::size_t i = 0; i < statements.size(); i += max_per_request) {
        nlohmann::json list = nlohmann::json::array();
        for (std::size_t j = i; j < std::min(statements.size(), i + max_per_request); ++j) {
            std::string s = statements[j];
            while (!s.empty() && (s.back() == ';' || s.back() == '\n')) s.pop_back();
            list.push_back({{"statement", std::move(s)}});
        }
        batches.push_back({{"statements", std::move(list)}});
    }
    return batches;
}

std::size_t push_cypher(const PushTarget& target, const std::vector<std::string>& statements) {
    httplib::Client client(target.host, target.port);
    client.set_connection_timeout(10);
    client.set_read_timeout(60);
    if (target.user) client.set_basic_auth(*target.user, target.password.value_or(""));

    const auto batches = cypher_batches(statements);
    std::size_t sent = 0;
    for (const auto& body : batches) {
        const auto res = client.Post(target.path, body.dump(), "application/json");
        if (!res) throw IoError("push to " + target.host + ":" + std::to_string(target.port) + target.path +
                                " failed: " + httplib::to_string(res.error()));
        if (res->status < 200 || res->status >= 300)
            throw IoError("push rejected with HTTP status " + std::to_string(res->status));
        const auto reply = nlohmann::json::parse(res->body, nullptr, false);
        if (!reply.is_discarded() && reply.contains("errors") && reply["errors"].is_array() && !reply["errors"].empty())
            throw IoError("store reported errors: " + reply["errors"].dump());
        ++sent;
    }
    return sent;
}

}  // namespace lyricmood
