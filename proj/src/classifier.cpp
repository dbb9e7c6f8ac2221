#include "lyricmood/classifier.hpp"

#include <algorithm>
#include <stdexcept>

#include "lyricmood/error.hpp"

namespace lyricmood {

DocumentScore score_document(const FrequencyTable& freq, const KnowledgeBase& kb) {
    if (kb.stale()) throw std::logic_error("score_document: knowledge base merged but not recomputed");
    DocumentScore out;
    for (const auto& [word, count] : freq) {
        const KbEntry* e = kb.find(word);
        if (e == nullptr) {
            out.oov.push_back(word);
            continue;
        }
        TermContribution term{word, count, {}};
        for (std::size_t m = 0; m < kMoodCount; ++m) {
            term.contribution[m] = static_cast<double>(count) * e->probs[m];
            out.scores.values[m] += term.contribution[m];
        }
        out.matched.push_back(std::move(term));
    }
    return out;
}

Prediction predict(const MoodScores& scores, std::string title) {
    const auto& v = scores.values;
    const double best = *std::max_element(v.begin(), v.end());
    if (!(best > 0.0)) throw NoEvidence(title);

    Prediction p;
    p.title = std::move(title);
    p.scores = scores;
    std::size_t attaining = 0;
    for (Mood m : kAllMoods) {
        if (best - v[index_of(m)] <= kTieTolerance) {
            if (attaining == 0) p.mood = m;
            ++attaining;
        }
    }
    p.tie = attaining > 1;
    return p;
}

Prediction predict(DocumentScore scored, std::string title) {
    Prediction p = predict(scored.scores, std::move(title));
    p.matched = std::move(scored.matched);
    p.oov = std::move(scored.oov);
    return p;
}

Prediction classify_document(const RawDocument& doc, const KnowledgeBase& kb, const StopwordSet& stopwords) {
    return predict(score_document(frequency_table_of(doc.body, stopwords), kb), doc.title);
}

void incremental_update(KnowledgeBase& kb, const FrequencyTable& freq, Mood mood) {
    kb.merge(freq, mood);
    kb.recompute();
}

UpdatePolicy parse_update_policy(std::string_view name) {
    if (name == "off") return UpdatePolicy::off;
    if (name == "predicted") return UpdatePolicy::predicted;
    if (name == "ground-truth") return UpdatePolicy::ground_truth;
    throw Error("unknown update policy '" + std::string(name) + "' (expected off, predicted or ground-truth)");
}

std::string_view to_string(UpdatePolicy p) noexcept {
    switch (p) {
        case UpdatePolicy::off: return "off";
        case UpdatePolicy::predicted: return "predicted";
        case UpdatePolicy::ground_truth: return "ground-truth";
    }
    return "off";
}

std::vector<TermContribution> top_terms(const std::vector<TermContribution>& matched, Mood mood,
                                        std::size_t limit) {
    std::vector<TermContribution> sorted = matched;
    const std::size_t m = index_of(mood);
    std::stable_sort(sorted.begin(), sorted.end(), [m](const auto& a, const auto& b) {
        if (a.contribution[m] != b.contribution[m]) return a.contribution[m] > b.contribution[m];
        return a.word < b.word;
    });
    if (sorted.size() > limit) sorted.resize(limit);
    return sorted;
}

nlohmann::ordered_json to_json(const Prediction& p, std::size_t top_k) {
    nlohmann::ordered_json j;
    j["title"] = p.title;
    j["mood"] = std::string(to_string(p.mood));
    j["tie"] = p.tie;
    nlohmann::ordered_json scores = nlohmann::ordered_json::object();
    for (Mood m : kAllMoods) scores[std::string(to_string(m))] = p.scores[m];
    j["scores"] = std::move(scores);
    j["matched_term_count"] = p.matched.size();
    j["oov_term_count"] = p.oov.size();
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& t : top_terms(p.matched, p.mood, top_k)) {
        terms.push_back({{"word", t.word}, {"count", t.count}, {"contribution", t.contribution[index_of(p.mood)]}});
    }
    j["top_terms"] = std::move(terms);
    return j;
}

}  // namespace lyricmood
