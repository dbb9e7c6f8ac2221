#ifndef LYRICMOOD_KNOWLEDGE_GRAPH_HPP
#define LYRICMOOD_KNOWLEDGE_GRAPH_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "lyricmood/knowledge_base.hpp"
#include "lyricmood/mood.hpp"
#include "lyricmood/text_pipeline.hpp"

namespace lyricmood {

/// A term and its contribution freq * prob[mood] to a song's mood.
struct DepictingTerm {
    Token word;
    double weight = 0.0;

    friend bool operator==(const DepictingTerm&, const DepictingTerm&) = default;
};

/// The `k` in-KB terms with the largest positive contribution to `mood`,
/// ties broken by word. Returns fewer when fewer qualify.
std::vector<DepictingTerm> select_depicting_terms(const FrequencyTable& freq, const KnowledgeBase& kb, Mood mood,
                                                  std::size_t k);

struct SongRecord {
    std::string title;
    Mood mood = Mood::happy;
    std::vector<DepictingTerm> terms;
};

enum class NodeKind : std::uint8_t { song, mood, term };
enum class EdgeKind : std::uint8_t { belongs_to, depicts };

std::string_view to_string(NodeKind k) noexcept;
std::string_view to_string(EdgeKind k) noexcept;

struct NodeKey {
    NodeKind kind;
    std::string key;

    friend auto operator<=>(const NodeKey&, const NodeKey&) = default;
};

/// BELONGS_TO: Song -> Mood, weight 0. DEPICTS: Term -> Song, weight is the
/// term's contribution.
struct Edge {
    EdgeKind kind;
    NodeKey source;
    NodeKey target;
    double weight = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct SongLookup {
    Mood mood;
    std::vector<DepictingTerm> terms;
};

/// Song/Mood/Term property graph. Immutable once built; the five Mood nodes
/// are always present and Term nodes are shared between songs.
class KnowledgeGraph {
public:
    /// Throws DuplicateKeyError on a repeated title.
    static KnowledgeGraph build(const std::vector<SongRecord>& records, std::uint64_t kb_revision);

    /// Sorted by kind, then key.
    const std::set<NodeKey>& nodes() const noexcept { return nodes_; }
    /// Sorted by kind, source, target.
    std::vector<Edge> edges() const;

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::size_t count(NodeKind k) const;
    std::size_t count(EdgeKind k) const;

    std::optional<SongLookup> lookup_song(std::string_view title) const;

    std::uint64_t kb_revision() const noexcept { return kb_revision_; }
    bool stale_for(const KnowledgeBase& kb) const noexcept { return kb.revision() != kb_revision_; }

    /// Same node and edge sets (with weights) and revision.
    friend bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
        return a.nodes_ == b.nodes_ && a.edges_ == b.edges_ && a.kb_revision_ == b.kb_revision_;
    }

private:
    using EdgeKey = std::tuple<EdgeKind, NodeKey, NodeKey>;

    std::set<NodeKey> nodes_;
    std::map<EdgeKey, double> edges_;
    std::map<std::string, SongLookup, std::less<>> songs_;
    std::uint64_t kb_revision_ = 0;

    friend KnowledgeGraph parse_graphml(std::string_view);
};

inline KnowledgeGraph build_graph(const std::vector<SongRecord>& records, std::uint64_t kb_revision) {
    return KnowledgeGraph::build(records, kb_revision);
}

inline std::optional<SongLookup> lookup_song(const KnowledgeGraph& graph, std::string_view title) {
    return graph.lookup_song(title);
}

enum class GraphFormat { dot, graphml, cypher };

/// Throws Error for anything other than dot, graphml or cypher.
GraphFormat parse_graph_format(std::string_view name);

std::string to_dot(const KnowledgeGraph& graph);
std::string to_graphml(const KnowledgeGraph& graph);

/// One MERGE-based statement per line: node MERGEs first, then
/// MATCH ... MERGE relationship statements. Re-running the script against a
/// store that already holds the graph changes nothing.
std::string to_cypher(const KnowledgeGraph& graph);
std::vector<std::string> cypher_statements(const KnowledgeGraph& graph);

std::string export_graph(const KnowledgeGraph& graph, GraphFormat format);

/// Reads the output of to_graphml back into a graph. Throws ParseError on
/// malformed or inconsistent documents.
KnowledgeGraph parse_graphml(std::string_view xml);

}  // namespace lyricmood

#endif  // LYRICMOOD_KNOWLEDGE_GRAPH_HPP
