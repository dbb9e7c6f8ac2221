#ifndef LYRICMOOD_KNOWLEDGE_BASE_HPP
#define LYRICMOOD_KNOWLEDGE_BASE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lyricmood/mood.hpp"
#include "lyricmood/text_pipeline.hpp"

namespace lyricmood {

/// One KB row: per-mood occurrence counts and the occurrence probability
/// count/total for each mood. Counts are authoritative; total and probs are
/// derived by KnowledgeBase::recompute.
struct KbEntry {
    MoodArray<std::int64_t> counts{};
    std::int64_t total = 0;
    MoodArray<double> probs{};

    friend bool operator==(const KbEntry&, const KbEntry&) = default;
};

/// Word -> KbEntry table, the trained model.
///
/// Single writer, many readers: merge/recompute need exclusive access, const
/// members may be used concurrently on an unchanging instance.
class KnowledgeBase {
public:
    using Entries = std::map<Token, KbEntry>;

    /// Adds `freq` to the `mood` column, creating zero rows for new words.
    /// Leaves total/probs untouched until recompute().
    void merge(const FrequencyTable& freq, Mood mood);

    /// total := sum(counts); probs[m] := counts[m] / total, or all zero when
    /// total is zero. Idempotent.
    void recompute();

    const KbEntry* find(std::string_view word) const;
    const Entries& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    /// Incremented by every mutation.
    std::uint64_t revision() const noexcept { return revision_; }

    /// True after a merge that has not been followed by recompute().
    bool stale() const noexcept { return stale_; }

    /// Compares entries only; revision and staleness are bookkeeping.
    friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
        return a.entries_ == b.entries_;
    }

private:
    friend KnowledgeBase parse_knowledge_base(std::string_view, std::vector<std::string>*);

    Entries entries_;
    std::uint64_t revision_ = 0;
    bool stale_ = false;
};

/// Runs each document through the text pipeline, merges it under its
/// true_mood, then recomputes once. Throws LabelError for an unlabeled
/// document and DuplicateKeyError for a repeated title.
KnowledgeBase build_from_corpus(const std::vector<RawDocument>& docs, const StopwordSet& stopwords);

/// Exact CSV header of the KB file.
inline constexpr std::string_view kKbHeader =
    "word,happy,sad,romantic,devotional,party,Total,"
    "prob_happy,prob_sad,prob_romantic,prob_devotional,prob_party";

/// Serializes to the KB CSV format: rows sorted by word (code point order),
/// probabilities with 10 significant digits, LF line endings.
std::string to_csv(const KnowledgeBase& kb);
void save_knowledge_base(const KnowledgeBase& kb, const std::filesystem::path& path);

/// Parses the KB CSV format and recomputes. Stored Total/prob columns that
/// disagree with the counts by more than 1e-6 produce one warning per word
/// in `warnings` (when given); counts win.
KnowledgeBase parse_knowledge_base(std::string_view csv, std::vector<std::string>* warnings = nullptr);
KnowledgeBase load_knowledge_base(const std::filesystem::path& path,
                                  std::vector<std::string>* warnings = nullptr);

}  // namespace lyricmood

#endif  // LYRICMOOD_KNOWLEDGE_BASE_HPP
