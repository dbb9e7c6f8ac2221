#include "lyricmood/evaluation.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "lyricmood/error.hpp"

namespace lyricmood {

namespace fs = std::filesystem;

Corpus ingest_corpus(const fs::path& root) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw IoError("corpus root '" + root.string() + "' is not a directory");

    MoodArray<std::vector<fs::path>> files;
    for (const auto& dir : fs::directory_iterator(root)) {
        if (!dir.is_directory()) continue;
        const Mood mood = parse_mood(dir.path().filename().string());
        for (const auto& f : fs::directory_iterator(dir.path())) {
            if (f.is_regular_file() && f.path().extension() == ".txt") files[index_of(mood)].push_back(f.path());
        }
    }

    Corpus corpus;
    std::set<std::string> titles;
    for (Mood mood : kAllMoods) {
        auto& paths = files[index_of(mood)];
        std::sort(paths.begin(), paths.end());
        for (const auto& p : paths) {
            RawDocument doc{p.stem().string(), read_utf8_file(p), mood};
            if (!titles.insert(doc.title).second)
                throw DuplicateKeyError("duplicate song title '" + doc.title + "' at '" + p.string() + "'");
            corpus.docs.push_back(std::move(doc));
        }
    }
    return corpus;
}

namespace {

// Unbiased draw in [0, bound) from a 64-bit engine. std::uniform_int_distribution
// is implementation-defined, which would make splits differ across toolchains.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % bound;
}

}  // namespace

CorpusSplit split_corpus(const Corpus& corpus, std::size_t train_per_mood, std::size_t test_per_mood,
                         std::uint64_t seed) {
    MoodArray<std::vector<const RawDocument*>> by_mood;
    for (const auto& doc : corpus.docs) {
        if (!doc.true_mood) throw LabelError("document '" + doc.title + "' has no mood label");
        by_mood[index_of(*doc.true_mood)].push_back(&doc);
    }

    const std::size_t needed = train_per_mood + test_per_mood;
    for (Mood mood : kAllMoods) {
        const auto have = by_mood[index_of(mood)].size();
        if (have < needed)
            throw DataError("mood '" + std::string(to_string(mood)) + "' has " + std::to_string(have) +
                            " documents, needs " + std::to_string(needed) + " (short by " +
                            std::to_string(needed - have) + ")");
    }

    CorpusSplit split;
    for (Mood mood : kAllMoods) {
        auto docs = by_mood[index_of(mood)];
        std::sort(docs.begin(), docs.end(), [](const auto* a, const auto* b) { return a->title < b->title; });
        std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (index_of(mood) + 1)));
        for (std::size_t i = docs.size(); i > 1; --i) std::swap(docs[i - 1], docs[bounded(rng, i)]);
        for (std::size_t i = 0; i < needed; ++i) (i < train_per_mood ? split.train : split.test).push_back(*docs[i]);
    }
    return split;
}

std::int64_t ConfusionMatrix::row_total(Mood actual) const {
    std::int64_t sum = no_evidence_[index_of(actual)];
    for (auto c : cells_[index_of(actual)]) sum += c;
    return sum;
}

std::int64_t ConfusionMatrix::column_total(Mood predicted) const {
    std::int64_t sum = 0;
    for (const auto& row : cells_) sum += row[index_of(predicted)];
    return sum;
}

std::int64_t ConfusionMatrix::trace() const {
    std::int64_t sum = 0;
    for (std::size_t m = 0; m < kMoodCount; ++m) sum += cells_[m][m];
    return sum;
}

std::int64_t ConfusionMatrix::total() const {
    std::int64_t sum = 0;
    for (Mood m : kAllMoods) sum += row_total(m);
    return sum;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
    for (std::size_t a = 0; a < kMoodCount; ++a) {
        for (std::size_t p = 0; p < kMoodCount; ++p) cells_[a][p] += other.cells_[a][p];
        no_evidence_[a] += other.no_evidence_[a];
    }
    return *this;
}

namespace {

void require_labels(const std::vector<RawDocument>& test) {
    if (test.empty()) throw DataError("empty test set");
    for (const auto& doc : test)
        if (!doc.true_mood) throw LabelError("test document '" + doc.title + "' has no mood label");
}

void finalize(EvalReport& report) {
    const auto& mx = report.matrix;
    report.accuracy = static_cast<double>(mx.trace()) / static_cast<double>(mx.total());
    for (Mood m : kAllMoods) {
        const auto col = mx.column_total(m);
        const auto row = mx.row_total(m);
        report.precision[index_of(m)] =
            col > 0 ? std::optional<double>(static_cast<double>(mx.at(m, m)) / static_cast<double>(col)) : std::nullopt;
        report.recall[index_of(m)] =
            row > 0 ? std::optional<double>(static_cast<double>(mx.at(m, m)) / static_cast<double>(row)) : std::nullopt;
    }
}

std::optional<Prediction> classify_or_none(const RawDocument& doc, const KnowledgeBase& kb,
                                           const StopwordSet& stopwords, ConfusionMatrix& matrix) {
    try {
        Prediction p = classify_document(doc, kb, stopwords);
        matrix.record(*doc.true_mood, p.mood);
        return p;
    } catch (const NoEvidence&) {
        matrix.record_no_evidence(*doc.true_mood);
        return std::nullopt;
    }
}

}  // namespace

EvalReport evaluate(const KnowledgeBase& kb, const std::vector<RawDocument>& test, const StopwordSet& stopwords,
                    unsigned threads) {
    require_labels(test);
    EvalReport report;
    report.kb_revision = kb.revision();
    report.predictions.resize(test.size());

    const std::size_t workers = std::clamp<std::size_t>(threads, 1, test.size());
    std::vector<ConfusionMatrix> partial(workers);
    std::vector<std::exception_ptr> failures(workers);
    auto work = [&](std::size_t w) {
        try {
            for (std::size_t i = w; i < test.size(); i += workers)
                report.predictions[i] = classify_or_none(test[i], kb, stopwords, partial[w]);
        } catch (...) {
            failures[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);
    for (const auto& m : partial) report.matrix += m;

    finalize(report);
    return report;
}

EvalReport evaluate_with_updates(KnowledgeBase& kb, const std::vector<RawDocument>& test,
                                 const StopwordSet& stopwords, UpdatePolicy policy) {
    require_labels(test);
    EvalReport report;
    report.update_policy = policy;
    for (const auto& doc : test) {
        const FrequencyTable freq = frequency_table_of(doc.body, stopwords);
        std::optional<Prediction> p;
        try {
            p = predict(score_document(freq, kb), doc.title);
            report.matrix.record(*doc.true_mood, p->mood);
        } catch (const NoEvidence&) {
            report.matrix.record_no_evidence(*doc.true_mood);
        }
        if (policy == UpdatePolicy::predicted && p) incremental_update(kb, freq, p->mood);
        if (policy == UpdatePolicy::ground_truth) incremental_update(kb, freq, *doc.true_mood);
        report.predictions.push_back(std::move(p));
    }
    report.kb_revision = kb.revision();
    finalize(report);
    return report;
}

nlohmann::ordered_json to_json(const EvalReport& report) {
    using json = nlohmann::ordered_json;
    const auto& mx = report.matrix;
    json j;
    j["test_size"] = mx.total();
    j["correct"] = mx.trace();
    j["accuracy"] = report.accuracy;

    json moods = json::array();
    for (Mood m : kAllMoods) moods.push_back(std::string(to_string(m)));
    json rows = json::array();
    json no_evidence = json::array();
    for (Mood a : kAllMoods) {
        json row = json::array();
        for (Mood p : kAllMoods) row.push_back(mx.at(a, p));
        rows.push_back(std::move(row));
        no_evidence.push_back(mx.no_evidence(a));
    }
    j["confusion_matrix"] = {{"moods", moods}, {"rows", std::move(rows)}, {"no_evidence", std::move(no_evidence)}};

    json per_mood = json::object();
    for (Mood m : kAllMoods) {
        json entry = json::object();
        const auto& prec = report.precision[index_of(m)];
        const auto& rec = report.recall[index_of(m)];
        if (prec) entry["precision"] = *prec;
        if (rec) entry["recall"] = *rec;
        per_mood[std::string(to_string(m))] = std::move(entry);
    }
    j["per_mood"] = std::move(per_mood);
    j["seed"] = report.seed ? json(*report.seed) : json(nullptr);
    j["kb_revision"] = report.kb_revision;
    j["update_policy"] = std::string(to_string(report.update_policy));
    return j;
}

std::string to_table(const EvalReport& report) {
    const auto& mx = report.matrix;
    std::ostringstream out;
    out << "actual \\ predicted";
    for (Mood m : kAllMoods) out << std::setw(12) << to_string(m);
    out << std::setw(13) << "no_evidence" << "\n";
    for (Mood a : kAllMoods) {
        out << std::left << std::setw(18) << to_string(a) << std::right;
        for (Mood p : kAllMoods) out << std::setw(12) << mx.at(a, p);
        out << std::setw(13) << mx.no_evidence(a) << "\n";
    }
    out << "\n" << std::left << std::setw(12) << "mood" << std::right << std::setw(12) << "precision"
        << std::setw(12) << "recall" << "\n";
    const auto fmt = [](const std::optional<double>& v) {
        if (!v) return std::string("-");
        std::ostringstream s;
        s << std::fixed << std::setprecision(3) << *v;
        return s.str();
    };
    for (Mood m : kAllMoods) {
        out << std::left << std::setw(12) << to_string(m) << std::right << std::setw(12)
            << fmt(report.precision[index_of(m)]) << std::setw(12) << fmt(report.recall[index_of(m)]) << "\n";
    }
    out << "\naccuracy: " << mx.trace() << "/" << mx.total() << " = " << std::fixed << std::setprecision(4)
        << report.accuracy << "\n";
    return out.str();
}

std::string matrix_to_csv(const ConfusionMatrix& matrix) {
    std::ostringstream out;
    out << "actual";
    for (Mood m : kAllMoods) out << ',' << to_string(m);
    out << ",no_evidence\n";
    for (Mood a : kAllMoods) {
        out << to_string(a);
        for (Mood p : kAllMoods) out << ',' << matrix.at(a, p);
        out << ',' << matrix.no_evidence(a) << '\n';
    }
    return out.str();
}

}  // namespace lyricmood
