#include "lyricmood/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "lyricmood/error.hpp"
#include "lyricmood/graph_push.hpp"

namespace lyricmood::cli {

namespace fs = std::filesystem;

namespace {

StopwordSet stopwords_from(const std::optional<fs::path>& path) {
    return path ? load_stopwords(*path) : StopwordSet{};
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<SongRecord> training_records(const std::vector<RawDocument>& docs, const KnowledgeBase& kb,
                                         const StopwordSet& stopwords, std::size_t top_k) {
    std::vector<SongRecord> records;
    for (const auto& doc : docs) {
        const auto freq = frequency_table_of(doc.body, stopwords);
        records.push_back({doc.title, *doc.true_mood, select_depicting_terms(freq, kb, *doc.true_mood, top_k)});
    }
    return records;
}

}  // namespace

PipelineResult run_pipeline(const fs::path& corpus_root, const RunConfig& config) {
    const StopwordSet stopwords = stopwords_from(config.stopwords_path);
    const Corpus corpus = ingest_corpus(corpus_root);
    const CorpusSplit split = split_corpus(corpus, config.train_per_mood, config.test_per_mood, config.seed);

    KnowledgeBase kb = build_from_corpus(split.train, stopwords);
    std::vector<SongRecord> records = training_records(split.train, kb, stopwords, config.top_k_terms);

    EvalReport report;
    if (config.update_policy == UpdatePolicy::off) {
        report = evaluate(kb, split.test, stopwords, config.threads);
    } else {
        report = evaluate_with_updates(kb, split.test, stopwords, config.update_policy);
    }
    report.seed = config.seed;

    for (std::size_t i = 0; i < split.test.size(); ++i) {
        const auto& p = report.predictions[i];
        if (!p) continue;
        const auto freq = frequency_table_of(split.test[i].body, stopwords);
        records.push_back({p->title, p->mood, select_depicting_terms(freq, kb, p->mood, config.top_k_terms)});
    }
    KnowledgeGraph graph = build_graph(records, kb.revision());
    return {std::move(kb), std::move(report), std::move(graph)};
}

void write_pipeline_outputs(const PipelineResult& result, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    save_knowledge_base(result.kb, out_dir / "kb.csv");
    write_text(out_dir / "report.json", to_json(result.report).dump(2) + "\n");
    write_text(out_dir / "confusion_matrix.csv", matrix_to_csv(result.report.matrix));
    write_text(out_dir / "graph.dot", to_dot(result.graph));
    write_text(out_dir / "graph.graphml", to_graphml(result.graph));
    write_text(out_dir / "graph.cypher", to_cypher(result.graph));
}

namespace {

struct Options {
    std::string corpus;
    std::string out;
    std::string kb;
    std::string stopwords;
    std::string update = "off";
    std::string mood;
    std::string format;
    std::string report;
    std::string out_dir;
    std::string graph;
    std::string title;
    std::string mood_source = "label";
    std::string push_url;
    std::vector<std::string> files;
    std::size_t top_k = 5;
    std::uint64_t seed = 1;
    std::size_t train = 50;
    std::size_t test = 10;
    unsigned threads = 1;
};

void require_exists(const std::string& path, const char* what) {
    if (!fs::exists(path)) throw IoError(std::string(what) + " '" + path + "' does not exist");
}

std::optional<fs::path> stopwords_path(const Options& o) {
    if (o.stopwords.empty()) return std::nullopt;
    return fs::path(o.stopwords);
}

KnowledgeBase load_kb_reporting(const std::string& path, std::ostream& err) {
    std::vector<std::string> warnings;
    KnowledgeBase kb;
    try {
        kb = load_knowledge_base(path, &warnings);
    } catch (const Error& e) {
        throw IoError(path + ": " + e.what());
    }
    for (const auto& w : warnings) err << "warning: " << path << ": " << w << "\n";
    return kb;
}

RawDocument read_document(const std::string& path) {
    return {fs::path(path).stem().string(), read_utf8_file(path), std::nullopt};
}

int run_build_kb(const Options& o, std::ostream& out, std::ostream&) {
    require_exists(o.corpus, "corpus");
    if (!o.stopwords.empty()) require_exists(o.stopwords, "stopword file");
    const Corpus corpus = ingest_corpus(o.corpus);
    const KnowledgeBase kb = build_from_corpus(corpus.docs, stopwords_from(stopwords_path(o)));
    save_knowledge_base(kb, o.out);
    out << "built knowledge base from " << corpus.docs.size() << " documents: " << kb.size() << " words -> "
        << o.out << "\n";
    return kOk;
}

int run_predict(const Options& o, std::ostream& out, std::ostream& err) {
    require_exists(o.kb, "knowledge base");
    if (!o.stopwords.empty()) require_exists(o.stopwords, "stopword file");
    for (const auto& f : o.files) require_exists(f, "lyric file");

    const UpdatePolicy policy = parse_update_policy(o.update);
    const StopwordSet stopwords = stopwords_from(stopwords_path(o));
    KnowledgeBase kb = load_kb_reporting(o.kb, err);

    int status = kOk;
    for (const auto& file : o.files) {
        const RawDocument doc = read_document(file);
        const FrequencyTable freq = frequency_table_of(doc.body, stopwords);
        try {
            const Prediction p = predict(score_document(freq, kb), doc.title);
            out << to_json(p, o.top_k).dump() << "\n";
            if (policy == UpdatePolicy::predicted) incremental_update(kb, freq, p.mood);
        } catch (const NoEvidence& e) {
            err << "no evidence: " << file << ": " << e.what() << "\n";
            status = kNoEvidence;
        }
    }
    if (policy == UpdatePolicy::predicted) save_knowledge_base(kb, o.kb);
    return status;
}

int run_update(const Options& o, std::ostream& out, std::ostream& err) {
    require_exists(o.kb, "knowledge base");
    if (!o.stopwords.empty()) require_exists(o.stopwords, "stopword file");
    for (const auto& f : o.files) require_exists(f, "lyric file");

    const Mood mood = parse_mood(o.mood);
    const StopwordSet stopwords = stopwords_from(stopwords_path(o));
    KnowledgeBase kb = load_kb_reporting(o.kb, err);
    const std::size_t before = kb.size();
    for (const auto& file : o.files) incremental_update(kb, frequency_table_of(read_document(file).body, stopwords), mood);
    save_knowledge_base(kb, o.kb);
    out << "credited " << o.files.size() << " documents to " << to_string(mood) << ": " << kb.size() - before
        << " new words, " << kb.size() << " total -> " << o.kb << "\n";
    return kOk;
}

int run_eval(const Options& o, std::ostream& out, std::ostream& err) {
    require_exists(o.corpus, "corpus");
    if (!o.stopwords.empty()) require_exists(o.stopwords, "stopword file");

    RunConfig config;
    config.stopwords_path = stopwords_path(o);
    config.update_policy = parse_update_policy(o.update);
    config.top_k_terms = o.top_k;
    config.seed = o.seed;
    config.train_per_mood = o.train;
    config.test_per_mood = o.test;
    config.threads = o.threads;
    if (config.update_policy != UpdatePolicy::off)
        err << "warning: incremental updates during evaluation make results depend on test order\n";

    const PipelineResult result = run_pipeline(o.corpus, config);
    out << to_table(result.report);
    if (!o.report.empty()) write_text(o.report, to_json(result.report).dump(2) + "\n");
    if (!o.out_dir.empty()) write_pipeline_outputs(result, o.out_dir);
    return kOk;
}

int run_graph_export(const Options& o, std::ostream& out, std::ostream& err) {
    require_exists(o.kb, "knowledge base");
    require_exists(o.corpus, "corpus");
    if (!o.stopwords.empty()) require_exists(o.stopwords, "stopword file");

    const GraphFormat format = parse_graph_format(o.format);
    const StopwordSet stopwords = stopwords_from(stopwords_path(o));
    const KnowledgeBase kb = load_kb_reporting(o.kb, err);
    const Corpus corpus = ingest_corpus(o.corpus);

    std::vector<SongRecord> records;
    if (o.mood_source == "label") {
        records = training_records(corpus.docs, kb, stopwords, o.top_k);
    } else {
        for (const auto& doc : corpus.docs) {
            const auto freq = frequency_table_of(doc.body, stopwords);
            try {
                const Prediction p = predict(score_document(freq, kb), doc.title);
                records.push_back({doc.title, p.mood, select_depicting_terms(freq, kb, p.mood, o.top_k)});
            } catch (const NoEvidence&) {
                err << "warning: '" << doc.title << "' has no evidence; left out of the graph\n";
            }
        }
    }
    const KnowledgeGraph graph = build_graph(records, kb.revision());
    write_text(o.out, export_graph(graph, format));
    out << "wrote " << graph.node_count() << " nodes, " << graph.edge_count() << " edges -> " << o.out << "\n";

    if (!o.push_url.empty()) {
        PushTarget target = parse_push_url(o.push_url);
        if (const char* user = std::getenv("LYRICMOOD_PUSH_USER")) target.user = user;
        if (const char* pass = std::getenv("LYRICMOOD_PUSH_PASSWORD")) target.password = pass;
        const std::size_t requests = push_cypher(target, cypher_statements(graph));
        out << "pushed " << cypher_statements(graph).size() << " statements in " << requests << " requests\n";
    }
    return kOk;
}

int run_graph_query(const Options& o, std::ostream& out, std::ostream&) {
    require_exists(o.graph, "graph");
    const KnowledgeGraph graph = parse_graphml(read_utf8_file(o.graph));
    nlohmann::ordered_json j;
    j["title"] = o.title;
    const auto hit = graph.lookup_song(o.title);
    j["found"] = hit.has_value();
    if (hit) {
        j["mood"] = std::string(to_string(hit->mood));
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (const auto& t : hit->terms) terms.push_back({{"word", t.word}, {"weight", t.weight}});
        j["terms"] = std::move(terms);
    }
    j["kb_revision"] = graph.kb_revision();
    out << j.dump() << "\n";
    return kOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mood classification for Devanagari song lyrics", "lyricmood"};
    app.require_subcommand(1);
    Options o;

    const auto add_stopwords = [&](CLI::App* sub) {
        sub->add_option("--stopwords", o.stopwords, "Stopword file (one token per line)")
            ->envname("LYRICMOOD_STOPWORDS");
    };
    const auto add_kb = [&](CLI::App* sub) {
        sub->add_option("--kb", o.kb, "Knowledge base CSV")->envname("LYRICMOOD_KB")->required();
    };

    auto* build = app.add_subcommand("build-kb", "Build a knowledge base from a labeled corpus");
    build->add_option("--corpus", o.corpus, "Corpus root (<mood>/<title>.txt)")->required();
    build->add_option("--out", o.out, "Output KB CSV")->required();
    add_stopwords(build);

    auto* pred = app.add_subcommand("predict", "Classify lyric files, one JSON line each");
    add_kb(pred);
    add_stopwords(pred);
    pred->add_option("--update", o.update, "Fold predictions back into the KB")
        ->check(CLI::IsMember({"off", "predicted"}));
    pred->add_option("--top-k", o.top_k, "Terms listed per prediction")->check(CLI::PositiveNumber);
    pred->add_option("files", o.files, "Lyric files")->required();

    auto* upd = app.add_subcommand("update", "Credit lyric files to a known mood");
    add_kb(upd);
    add_stopwords(upd);
    upd->add_option("--mood", o.mood, "Mood label")
        ->required()
        ->check(CLI::IsMember({"happy", "sad", "romantic", "devotional", "party"}));
    upd->add_option("files", o.files, "Lyric files")->required();

    auto* ev = app.add_subcommand("eval", "Split a labeled corpus, train, and report accuracy");
    ev->add_option("--corpus", o.corpus, "Corpus root")->required();
    add_stopwords(ev);
    ev->add_option("--seed", o.seed, "Split seed");
    ev->add_option("--train", o.train, "Training documents per mood");
    ev->add_option("--test", o.test, "Test documents per mood");
    ev->add_option("--update", o.update, "Incremental updates during evaluation")
        ->check(CLI::IsMember({"off", "predicted", "ground-truth"}));
    ev->add_option("--report", o.report, "Write the JSON report here");
    ev->add_option("--out-dir", o.out_dir, "Write KB, report, matrix and graph exports here");
    ev->add_option("--top-k", o.top_k, "Depicting terms per song in the graph")->check(CLI::PositiveNumber);
    ev->add_option("--threads", o.threads, "Classification threads")->check(CLI::PositiveNumber);

    auto* gexp = app.add_subcommand("graph-export", "Export the Song/Mood/Term knowledge graph");
    add_kb(gexp);
    add_stopwords(gexp);
    gexp->add_option("--corpus", o.corpus, "Corpus root")->required();
    gexp->add_option("--format", o.format, "dot, graphml or cypher")
        ->required()
        ->check(CLI::IsMember({"dot", "graphml", "cypher"}));
    gexp->add_option("--out", o.out, "Output file")->required();
    gexp->add_option("--top-k", o.top_k, "Depicting terms per song")->check(CLI::PositiveNumber);
    gexp->add_option("--mood-source", o.mood_source, "Song mood from the corpus label or a prediction")
        ->check(CLI::IsMember({"label", "predicted"}));
    gexp->add_option("--push", o.push_url, "Also POST the Cypher statements to this http:// endpoint");

    auto* gq = app.add_subcommand("graph-query", "Look up a song in an exported GraphML graph");
    gq->add_option("--graph", o.graph, "GraphML file")->required();
    gq->add_option("--title", o.title, "Song title")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    const std::vector<std::pair<CLI::App*, std::function<int(const Options&, std::ostream&, std::ostream&)>>> routes = {
        {build, run_build_kb},   {pred, run_predict},           {upd, run_update},
        {ev, run_eval},          {gexp, run_graph_export},      {gq, run_graph_query}};
    try {
        for (const auto& [sub, run] : routes)
            if (sub->parsed()) return run(o, out, err);
    } catch (const NoEvidence& e) {
        err << "no evidence: " << e.what() << "\n";
        return kNoEvidence;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsage;
}

}  // namespace lyricmood::cli
