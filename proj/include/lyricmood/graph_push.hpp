#ifndef LYRICMOOD_GRAPH_PUSH_HPP
#define LYRICMOOD_GRAPH_PUSH_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lyricmood {

/// HTTP transactional endpoint of a property-graph store that accepts Cypher
/// statements as {"statements": [{"statement": ...}, ...]}.
struct PushTarget {
    std::string host;
    int port = 7474;
    std::string path = "/db/neo4j/tx/commit";
    std::optional<std::string> user;
    std::optional<std::string> password;
};

inline constexpr std::size_t kMaxStatementsPerRequest = 100;

/// Parses http://host[:port][/path]. Only plain http is supported.
PushTarget parse_push_url(std::string_view url);

/// Request bodies, each holding at most `max_per_request` statements
/// (trailing ';' stripped).
std::vector<nlohmann::json> cypher_batches(const std::vector<std::string>& statements,
                                           std::size_t max_per_request = kMaxStatementsPerRequest);

/// POSTs every batch in order and returns the number of requests sent.
/// Throws IoError on a transport failure, a non-2xx status, or a response
/// whose "errors" array is non-empty.
std::size_t push_cypher(const PushTarget& target, const std::vector<std::string>& statements);

}  // namespace lyricmood

#endif  // LYRICMOOD_GRAPH_PUSH_HPP
