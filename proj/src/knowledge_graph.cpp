#include "lyricmood/knowledge_graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "lyricmood/error.hpp"

namespace lyricmood {

namespace {

bool heavier(const DepictingTerm& a, const DepictingTerm& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.word < b.word;
}

std::string format_weight(double w) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, w);
    return std::string(buf, r.ptr);
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// Double-quoted string literal with backslash escapes; valid for both DOT
// and Cypher.
std::string quote_literal(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string_view node_property(NodeKind k) {
    switch (k) {
        case NodeKind::song: return "title";
        case NodeKind::mood: return "name";
        case NodeKind::term: return "word";
    }
    return "key";
}

std::string dot_id(const NodeKey& n) { return quote_literal(std::string(to_string(n.kind)) + ":" + n.key); }

std::string cypher_node(std::string_view var, const NodeKey& n) {
    return "(" + std::string(var) + ":" + std::string(to_string(n.kind)) + " {" + std::string(node_property(n.kind)) +
           ": " + quote_literal(n.key) + "})";
}

}  // namespace

std::vector<DepictingTerm> select_depicting_terms(const FrequencyTable& freq, const KnowledgeBase& kb, Mood mood,
                                                  std::size_t k) {
    std::vector<DepictingTerm> terms;
    for (const auto& [word, count] : freq) {
        const KbEntry* e = kb.find(word);
        if (e == nullptr) continue;
        const double contribution = static_cast<double>(count) * e->probs[index_of(mood)];
        if (contribution > 0.0) terms.push_back({word, contribution});
    }
    std::sort(terms.begin(), terms.end(), heavier);
    if (terms.size() > k) terms.resize(k);
    return terms;
}

std::string_view to_string(NodeKind k) noexcept {
    switch (k) {
        case NodeKind::song: return "Song";
        case NodeKind::mood: return "Mood";
        case NodeKind::term: return "Term";
    }
    return "";
}

std::string_view to_string(EdgeKind k) noexcept {
    switch (k) {
        case EdgeKind::belongs_to: return "BELONGS_TO";
        case EdgeKind::depicts: return "DEPICTS";
    }
    return "";
}

KnowledgeGraph KnowledgeGraph::build(const std::vector<SongRecord>& records, std::uint64_t kb_revision) {
    KnowledgeGraph g;
    g.kb_revision_ = kb_revision;
    for (Mood m : kAllMoods) g.nodes_.insert({NodeKind::mood, std::string(lyricmood::to_string(m))});

    for (const auto& rec : records) {
        SongLookup entry{rec.mood, rec.terms};
        std::sort(entry.terms.begin(), entry.terms.end(), heavier);
        if (!g.songs_.emplace(rec.title, std::move(entry)).second)
            throw DuplicateKeyError("duplicate song title '" + rec.title + "'");

        const NodeKey song{NodeKind::song, rec.title};
        g.nodes_.insert(song);
        g.edges_[{EdgeKind::belongs_to, song, {NodeKind::mood, std::string(lyricmood::to_string(rec.mood))}}] = 0.0;
        for (const auto& t : rec.terms) {
            const NodeKey term{NodeKind::term, t.word};
            g.nodes_.insert(term);
            g.edges_[{EdgeKind::depicts, term, song}] = t.weight;
        }
    }
    return g;
}

std::vector<Edge> KnowledgeGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edges_.size());
    for (const auto& [key, weight] : edges_) out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), weight});
    return out;
}

std::size_t KnowledgeGraph::count(NodeKind k) const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [k](const auto& n) { return n.kind == k; }));
}

std::size_t KnowledgeGraph::count(EdgeKind k) const {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [k](const auto& e) { return std::get<0>(e.first) == k; }));
}

std::optional<SongLookup> KnowledgeGraph::lookup_song(std::string_view title) const {
    const auto it = songs_.find(title);
    if (it == songs_.end()) return std::nullopt;
    return it->second;
}

GraphFormat parse_graph_format(std::string_view name) {
    if (name == "dot") return GraphFormat::dot;
    if (name == "graphml") return GraphFormat::graphml;
    if (name == "cypher") return GraphFormat::cypher;
    throw Error("unknown graph format '" + std::string(name) + "' (expected dot, graphml or cypher)");
}

std::string to_dot(const KnowledgeGraph& graph) {
    std::ostringstream out;
    out << "digraph knowledge_graph {\n";
    for (const auto& n : graph.nodes()) {
        const char* shape = n.kind == NodeKind::song ? "box" : n.kind == NodeKind::mood ? "ellipse" : "plaintext";
        out << "  " << dot_id(n) << " [label=" << quote_literal(n.key) << ", kind=" << quote_literal(to_string(n.kind))
            << ", shape=" << shape << "];\n";
    }
    for (const auto& e : graph.edges()) {
        out << "  " << dot_id(e.source) << " -> " << dot_id(e.target) << " [label=" << quote_literal(to_string(e.kind));
        if (e.kind == EdgeKind::depicts) out << ", weight=" << quote_literal(format_weight(e.weight));
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_graphml(const KnowledgeGraph& graph) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
        << "  <key id=\"key\" for=\"node\" attr.name=\"key\" attr.type=\"string\"/>\n"
        << "  <key id=\"edge_kind\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n"
        << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
        << "  <key id=\"kb_revision\" for=\"graph\" attr.name=\"kb_revision\" attr.type=\"long\"/>\n"
        << "  <graph id=\"knowledge_graph\" edgedefault=\"directed\">\n"
        << "    <data key=\"kb_revision\">" << graph.kb_revision() << "</data>\n";

    std::map<NodeKey, std::string> ids;
    for (const auto& n : graph.nodes()) {
        const std::string id = "n" + std::to_string(ids.size());
        ids.emplace(n, id);
        out << "    <node id=\"" << id << "\"><data key=\"kind\">" << to_string(n.kind) << "</data><data key=\"key\">"
            << xml_escape(n.key) << "</data></node>\n";
    }
    std::size_t edge_id = 0;
    for (const auto& e : graph.edges()) {
        out << "    <edge id=\"e" << edge_id++ << "\" source=\"" << ids.at(e.source) << "\" target=\""
            << ids.at(e.target) << "\"><data key=\"edge_kind\">" << to_string(e.kind)
            << "</data><data key=\"weight\">" << format_weight(e.weight) << "</data></edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

std::vector<std::string> cypher_statements(const KnowledgeGraph& graph) {
    std::vector<std::string> out;
    for (const auto& n : graph.nodes()) out.push_back("MERGE " + cypher_node("", n) + ";");
    for (const auto& e : graph.edges()) {
        std::string rel = e.kind == EdgeKind::depicts ? "[:DEPICTS {weight: " + format_weight(e.weight) + "}]"
                                                      : "[:BELONGS_TO]";
        out.push_back("MATCH " + cypher_node("a", e.source) + ", " + cypher_node("b", e.target) + " MERGE (a)-" + rel +
                      "->(b);");
    }
    return out;
}

std::string to_cypher(const KnowledgeGraph& graph) {
    std::string out;
    for (const auto& s : cypher_statements(graph)) {
        out += s;
        out.push_back('\n');
    }
    return out;
}

std::string export_graph(const KnowledgeGraph& graph, GraphFormat format) {
    switch (format) {
        case GraphFormat::dot: return to_dot(graph);
        case GraphFormat::graphml: return to_graphml(graph);
        case GraphFormat::cypher: return to_cypher(graph);
    }
    throw Error("unknown graph format");
}

namespace {

NodeKind parse_node_kind(const std::string& s) {
    for (auto k : {NodeKind::song, NodeKind::mood, NodeKind::term})
        if (to_string(k) == s) return k;
    throw ParseError(0, "graphml: unknown node kind '" + s + "'");
}

EdgeKind parse_edge_kind(const std::string& s) {
    for (auto k : {EdgeKind::belongs_to, EdgeKind::depicts})
        if (to_string(k) == s) return k;
    throw ParseError(0, "graphml: unknown edge kind '" + s + "'");
}

std::map<std::string, std::string> data_of(const boost::property_tree::ptree& element) {
    std::map<std::string, std::string> data;
    for (const auto& [tag, child] : element) {
        if (tag == "data") data[child.get<std::string>("<xmlattr>.key")] = child.get_value<std::string>();
    }
    return data;
}

}  // namespace

KnowledgeGraph parse_graphml(std::string_view xml) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in{std::string(xml)};
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError(e.line(), std::string("graphml: ") + e.message());
    }

    try {
        const auto& g = tree.get_child("graphml.graph");
        KnowledgeGraph graph;
        std::map<std::string, NodeKey> ids;
        std::vector<std::tuple<std::string, std::string, EdgeKind, double>> raw_edges;
        for (const auto& [tag, child] : g) {
            if (tag == "data") {
                if (child.get<std::string>("<xmlattr>.key") == "kb_revision")
                    graph.kb_revision_ = child.get_value<std::uint64_t>();
            } else if (tag == "node") {
                auto data = data_of(child);
                NodeKey key{parse_node_kind(data.at("kind")), data.at("key")};
                if (!graph.nodes_.insert(key).second) throw ParseError(0, "graphml: duplicate node '" + key.key + "'");
                if (!ids.emplace(child.get<std::string>("<xmlattr>.id"), key).second)
                    throw ParseError(0, "graphml: duplicate node id");
            } else if (tag == "edge") {
                auto data = data_of(child);
                double weight = 0.0;
                const std::string& w = data.at("weight");
                if (std::from_chars(w.data(), w.data() + w.size(), weight).ec != std::errc{})
                    throw ParseError(0, "graphml: bad weight '" + w + "'");
                raw_edges.emplace_back(child.get<std::string>("<xmlattr>.source"),
                                       child.get<std::string>("<xmlattr>.target"),
                                       parse_edge_kind(data.at("edge_kind")), weight);
            }
        }

        for (const auto& [src, dst, kind, weight] : raw_edges) {
            const NodeKey& s = ids.at(src);
            const NodeKey& t = ids.at(dst);
            const bool shape_ok = kind == EdgeKind::belongs_to ? (s.kind == NodeKind::song && t.kind == NodeKind::mood)
                                                               : (s.kind == NodeKind::term && t.kind == NodeKind::song);
            if (!shape_ok) throw ParseError(0, "graphml: edge endpoints do not match edge kind");
            graph.edges_[{kind, s, t}] = weight;
            if (kind == EdgeKind::belongs_to) {
                auto [it, fresh] = graph.songs_.emplace(s.key, SongLookup{parse_mood(t.key), {}});
                if (!fresh) throw ParseError(0, "graphml: song '" + s.key + "' belongs to more than one mood");
            }
        }
        for (const auto& [kind_src_dst, weight] : graph.edges_) {
            const auto& [kind, s, t] = kind_src_dst;
            if (kind != EdgeKind::depicts) continue;
            const auto it = graph.songs_.find(t.key);
            if (it == graph.songs_.end()) throw ParseError(0, "graphml: song '" + t.key + "' has no mood");
            it->second.terms.push_back({s.key, weight});
        }
        for (auto& [title, entry] : graph.songs_) std::sort(entry.terms.begin(), entry.terms.end(), heavier);
        for (const auto& n : graph.nodes_) {
            if (n.kind == NodeKind::song && !graph.songs_.count(n.key))
                throw ParseError(0, "graphml: song '" + n.key + "' has no mood");
        }
        return graph;
    } catch (const pt::ptree_error& e) {
        throw ParseError(0, std::string("graphml: ") + e.what());
    } catch (const std::out_of_range&) {
        throw ParseError(0, "graphml: missing node attribute or unknown edge endpoint");
    }
}

}  // namespace lyricmood
