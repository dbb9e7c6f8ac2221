#ifndef LYRICMOOD_EVALUATION_HPP
#define LYRICMOOD_EVALUATION_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lyricmood/classifier.hpp"
#include "lyricmood/knowledge_base.hpp"
#include "lyricmood/mood.hpp"
#include "lyricmood/text_pipeline.hpp"

namespace lyricmood {

/// Labeled documents read from root/<mood>/<title>.txt.
struct Corpus {
    std::vector<RawDocument> docs;
};

/// Mood subdirectories are visited in canonical order and files within each
/// in filename order. Non-.txt files are ignored. Throws LabelError for a
/// directory that is not a mood, DuplicateKeyError for a repeated title,
/// DecodeError naming the file for bad UTF-8.
Corpus ingest_corpus(const std::filesystem::path& root);

struct CorpusSplit {
    std::vector<RawDocument> train;
    std::vector<RawDocument> test;
};

/// Per mood (canonical order): documents sorted by title, shuffled with a
/// generator seeded from (seed, mood), first `train_per_mood` to train and
/// the next `test_per_mood` to test. Throws DataError naming the mood and
/// shortfall when a mood has too few documents.
CorpusSplit split_corpus(const Corpus& corpus, std::size_t train_per_mood, std::size_t test_per_mood,
                         std::uint64_t seed);

/// Rows are the actual mood, columns the predicted mood.
class ConfusionMatrix {
public:
    void record(Mood actual, Mood predicted) { ++cells_[index_of(actual)][index_of(predicted)]; }
    void record_no_evidence(Mood actual) { ++no_evidence_[index_of(actual)]; }

    std::int64_t at(Mood actual, Mood predicted) const {
        return cells_[index_of(actual)][index_of(predicted)];
    }
    std::int64_t no_evidence(Mood actual) const { return no_evidence_[index_of(actual)]; }

    /// Cells in the row plus the row's no-evidence count.
    std::int64_t row_total(Mood actual) const;
    std::int64_t column_total(Mood predicted) const;
    std::int64_t trace() const;
    std::int64_t total() const;

    ConfusionMatrix& operator+=(const ConfusionMatrix& other);
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    MoodArray<MoodArray<std::int64_t>> cells_{};
    MoodArray<std::int64_t> no_evidence_{};
};

struct EvalReport {
    ConfusionMatrix matrix;
    double accuracy = 0.0;
    /// Absent when the mood was never predicted (precision) or has no test
    /// documents (recall).
    MoodArray<std::optional<double>> precision{};
    MoodArray<std::optional<double>> recall{};
    std::optional<std::uint64_t> seed;
    std::uint64_t kb_revision = 0;
    UpdatePolicy update_policy = UpdatePolicy::off;
    /// One entry per test document, in input order; absent on NoEvidence.
    std::vector<std::optional<Prediction>> predictions;
};

/// Classifies every test document against a frozen KB. Documents are split
/// across `threads` workers whose partial matrices are summed. Throws
/// DataError on an empty test set and LabelError on an unlabeled document.
EvalReport evaluate(const KnowledgeBase& kb, const std::vector<RawDocument>& test, const StopwordSet& stopwords,
                    unsigned threads = 1);

/// Sequential evaluation that folds each document back into `kb` after it is
/// classified, crediting the mood chosen by `policy`. Results depend on the
/// order of `test`. With UpdatePolicy::off this equals evaluate().
EvalReport evaluate_with_updates(KnowledgeBase& kb, const std::vector<RawDocument>& test,
                                 const StopwordSet& stopwords, UpdatePolicy policy);

nlohmann::ordered_json to_json(const EvalReport& report);
std::string to_table(const EvalReport& report);
std::string matrix_to_csv(const ConfusionMatrix& matrix);

}  // namespace lyricmood

#endif  // LYRICMOOD_EVALUATION_HPP
