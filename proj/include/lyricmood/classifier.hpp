#ifndef LYRICMOOD_CLASSIFIER_HPP
#define LYRICMOOD_CLASSIFIER_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lyricmood/knowledge_base.hpp"
#include "lyricmood/mood.hpp"
#include "lyricmood/text_pipeline.hpp"

namespace lyricmood {

/// Raw (unnormalized) per-mood evidence sums; every value is >= 0.
struct MoodScores {
    MoodArray<double> values{};

    double operator[](Mood m) const noexcept { return values[index_of(m)]; }
    friend bool operator==(const MoodScores&, const MoodScores&) = default;
};

/// A document term found in the KB with its per-mood contribution
/// count * prob[mood].
struct TermContribution {
    Token word;
    std::int64_t count = 0;
    MoodArray<double> contribution{};
};

struct DocumentScore {
    MoodScores scores;
    std::vector<TermContribution> matched;  // in word order
    std::vector<Token> oov;                 // dropped, in word order
};

struct Prediction {
    std::string title;
    Mood mood = Mood::happy;
    MoodScores scores;
    std::vector<TermContribution> matched;
    std::vector<Token> oov;
    bool tie = false;
};

/// Scores differing by no more than this are treated as tied.
inline constexpr double kTieTolerance = 1e-12;

/// scores[m] = sum over in-KB tokens t of freq[t] * kb[t].probs[m]. Tokens
/// missing from the KB are reported in `oov` and contribute nothing.
/// Throws std::logic_error when the KB has unrecomputed merges.
DocumentScore score_document(const FrequencyTable& freq, const KnowledgeBase& kb);

/// Argmax with ties resolved to the earliest mood in canonical order.
/// Throws NoEvidence when every score is zero.
Prediction predict(const MoodScores& scores, std::string title);
Prediction predict(DocumentScore scored, std::string title);

Prediction classify_document(const RawDocument& doc, const KnowledgeBase& kb, const StopwordSet& stopwords);

/// merge + recompute: folds a document back into the KB under `mood`.
void incremental_update(KnowledgeBase& kb, const FrequencyTable& freq, Mood mood);

/// Which label (if any) an incremental update credits.
enum class UpdatePolicy { off, predicted, ground_truth };

UpdatePolicy parse_update_policy(std::string_view name);
std::string_view to_string(UpdatePolicy p) noexcept;

/// Matched terms ordered by contribution to `mood` (descending), ties by word.
std::vector<TermContribution> top_terms(const std::vector<TermContribution>& matched, Mood mood,
                                        std::size_t limit);

/// The line-delimited JSON record for a prediction.
nlohmann::ordered_json to_json(const Prediction& p, std::size_t top_k = 5);

}  // namespace lyricmood

#endif  // LYRICMOOD_CLASSIFIER_HPP
