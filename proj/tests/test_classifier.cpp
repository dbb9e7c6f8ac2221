#include <doctest.h>

#include <algorithm>
#include <random>

#include "lyricmood/classifier.hpp"
#include "lyricmood/error.hpp"
#include "support/fixtures.hpp"

using namespace lyricmood;

namespace {

// kb: A(happy 2), B(happy 1, sad 3)
KnowledgeBase small_kb() {
    KnowledgeBase kb;
    kb.merge({{"A", 2}, {"B", 1}}, Mood::happy);
    kb.merge({{"B", 3}}, Mood::sad);
    kb.recompute();
    return kb;
}

struct Row {
    std::string word;
    MoodArray<std::int64_t> counts;
};

// Independent scorer: linear scan over raw rows, probabilities taken from
// counts on the fly, iterating over the unaggregated token list.
MoodArray<double> brute_force_scores(const std::vector<Row>& rows, const std::vector<std::string>& tokens) {
    MoodArray<double> s{};
    for (const auto& t : tokens) {
        for (const auto& r : rows) {
            if (r.word != t) continue;
            std::int64_t total = 0;
            for (auto c : r.counts) total += c;
            if (total == 0) continue;
            for (std::size_t m = 0; m < kMoodCount; ++m) s[m] += static_cast<double>(r.counts[m]) / total;
        }
    }
    return s;
}

}  // namespace

TEST_CASE("score_document sums frequency times probability") {
    const auto kb = small_kb();

    auto r = score_document({{"A", 1}, {"B", 2}}, kb);
    CHECK(r.scores[Mood::happy] == doctest::Approx(1.5));
    CHECK(r.scores[Mood::sad] == doctest::Approx(1.5));
    CHECK(r.scores[Mood::romantic] == 0.0);
    CHECK(r.oov.empty());
    CHECK(r.matched.size() == 2);

    r = score_document({{"B", 2}, {"C", 1}}, kb);
    CHECK(r.scores[Mood::happy] == doctest::Approx(0.5));
    CHECK(r.scores[Mood::sad] == doctest::Approx(1.5));
    CHECK(r.oov == std::vector<Token>{"C"});

    r = score_document({}, kb);
    CHECK(r.scores == MoodScores{});
}

TEST_CASE("score_document refuses a knowledge base with pending merges") {
    KnowledgeBase kb;
    kb.merge({{"A", 1}}, Mood::happy);
    CHECK_THROWS_AS(score_document({{"A", 1}}, kb), std::logic_error);
}

TEST_CASE("predict takes the argmax with canonical tie-break") {
    auto p = predict(MoodScores{{1.5, 1.5, 0, 0, 0}}, "t");
    CHECK(p.mood == Mood::happy);
    CHECK(p.tie);

    p = predict(MoodScores{{0.5, 1.5, 0, 0, 0}}, "t");
    CHECK(p.mood == Mood::sad);
    CHECK_FALSE(p.tie);

    p = predict(MoodScores{{0, 0, 0, 2.0, 2.0}}, "t");
    CHECK(p.mood == Mood::devotional);
    CHECK(p.tie);

    CHECK_THROWS_AS(predict(MoodScores{}, "t"), NoEvidence);
}

TEST_CASE("classify_document") {
    const auto sample = parse_knowledge_base(testing::sample_kb_csv());

    SUBCASE("devotional-heavy lyric") {
        const auto p = classify_document({"भजन", "जय जय जय, मैया मैया", std::nullopt}, sample, {});
        CHECK(p.mood == Mood::devotional);
        // 3 * 55/56 + 2 * 1
        CHECK(p.scores[Mood::devotional] == doctest::Approx(3.0 * 55 / 56 + 2.0).epsilon(1e-12));
        CHECK(p.scores[Mood::sad] == doctest::Approx(3.0 / 56).epsilon(1e-12));
        CHECK_FALSE(p.tie);
    }
    SUBCASE("only stopwords") {
        CHECK_THROWS_AS(classify_document({"x", "जय मैया", std::nullopt}, sample, StopwordSet{{"जय", "मैया"}}),
                        NoEvidence);
    }
    SUBCASE("only zero-total words") {
        CHECK_THROWS_AS(classify_document({"x", "जे जे", std::nullopt}, sample, {}), NoEvidence);
    }
    SUBCASE("separable vocabularies") {
        const std::vector<RawDocument> train = {{"h", "खुश हँसी", Mood::happy},  {"s", "आँसू दर्द", Mood::sad},
                                                {"r", "प्यार दिल", Mood::romantic}, {"d", "प्रभु भजन", Mood::devotional},
                                                {"p", "नाच धूम", Mood::party}};
        const auto kb = build_from_corpus(train, {});
        for (const auto& doc : train) CHECK(classify_document(doc, kb, {}).mood == *doc.true_mood);
    }
}

TEST_CASE("incremental_update folds a document into the knowledge base") {
    KnowledgeBase kb;
    kb.merge({{"दुःख", 5}}, Mood::sad);
    kb.merge({{"दुःख", 2}}, Mood::romantic);
    kb.recompute();

    const auto rev = kb.revision();
    incremental_update(kb, {{"दुःख", 1}}, Mood::sad);
    const KbEntry& e = *kb.find("दुःख");
    CHECK(e.counts == MoodArray<std::int64_t>{0, 6, 2, 0, 0});
    CHECK(e.total == 8);
    CHECK(e.probs[index_of(Mood::sad)] == 0.75);
    CHECK(kb.revision() > rev);

    incremental_update(kb, {{"नया", 3}}, Mood::party);
    CHECK(kb.find("नया")->counts == MoodArray<std::int64_t>{0, 0, 0, 0, 3});
    CHECK(kb.find("नया")->probs[index_of(Mood::party)] == 1.0);

    const auto before = kb.entries();
    const auto rev2 = kb.revision();
    incremental_update(kb, {}, Mood::happy);
    CHECK(kb.entries() == before);
    CHECK(kb.revision() > rev2);
}

TEST_CASE("prediction JSON record") {
    const auto kb = small_kb();
    const auto p = predict(score_document({{"B", 2}, {"C", 1}}, kb), "गीत");
    const auto j = to_json(p);
    CHECK(j.dump() ==
          R"({"title":"गीत","mood":"sad","tie":false,"scores":{"happy":0.5,"sad":1.5,"romantic":0.0,"devotional":0.0,"party":0.0},"matched_term_count":1,"oov_term_count":1,"top_terms":[{"word":"B","count":2,"contribution":1.5}]})");
    CHECK(parse_update_policy("ground-truth") == UpdatePolicy::ground_truth);
    CHECK_THROWS_AS(parse_update_policy("always"), Error);
}

TEST_CASE("property: scorer agrees with a brute-force oracle") {
    std::mt19937_64 rng(2024);
    std::set<std::string> taken;
    const auto pool = testing::distinct_words(rng, 40, taken);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Row> rows;
        KnowledgeBase kb;
        const auto n_words = 1 + rng() % 20;
        for (std::size_t i = 0; i < n_words; ++i) {
            const auto& w = pool[i];
            Row r{w, {}};
            for (auto& c : r.counts) c = (rng() % 3 == 0) ? 0 : static_cast<std::int64_t>(rng() % 30);
            rows.push_back(r);
            for (Mood m : kAllMoods) kb.merge({{w, r.counts[index_of(m)]}}, m);
        }
        kb.recompute();

        std::vector<std::string> tokens;
        const auto len = rng() % 51;
        for (std::size_t i = 0; i < len; ++i) tokens.push_back(pool[rng() % pool.size()]);

        const auto got = score_document(build_frequency_table(tokens), kb);
        const auto want = brute_force_scores(rows, tokens);
        for (std::size_t m = 0; m < kMoodCount; ++m) REQUIRE(std::abs(got.scores.values[m] - want[m]) <= 1e-12);
    }
}

TEST_CASE("property: scaling every count keeps the prediction") {
    std::mt19937_64 rng(99);
    std::set<std::string> taken;
    const auto pool = testing::distinct_words(rng, 20, taken);
    for (int trial = 0; trial < 200; ++trial) {
        KnowledgeBase kb;
        KnowledgeBase scaled;
        const std::int64_t factor = 2 + static_cast<std::int64_t>(rng() % 9);
        for (const auto& w : pool) {
            for (Mood m : kAllMoods) {
                const auto c = static_cast<std::int64_t>(rng() % 10);
                kb.merge({{w, c}}, m);
                scaled.merge({{w, c * factor}}, m);
            }
        }
        kb.recompute();
        scaled.recompute();
        FrequencyTable doc;
        for (int i = 0; i < 10; ++i) doc[pool[rng() % pool.size()]] += 1;
        const auto a = score_document(doc, kb);
        const auto b = score_document(doc, scaled);
        for (std::size_t m = 0; m < kMoodCount; ++m) REQUIRE(std::abs(a.scores.values[m] - b.scores.values[m]) <= 1e-12);
        if (a.scores.values == MoodScores{}.values) continue;
        REQUIRE(predict(a.scores, "t").mood == predict(b.scores, "t").mood);
    }
}

TEST_CASE("property: prediction ignores the order rows were inserted") {
    std::mt19937_64 rng(17);
    std::set<std::string> taken;
    auto pool = testing::distinct_words(rng, 15, taken);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::pair<std::string, MoodArray<std::int64_t>>> rows;
        for (const auto& w : pool) {
            MoodArray<std::int64_t> c{};
            for (auto& x : c) x = static_cast<std::int64_t>(rng() % 7);
            rows.emplace_back(w, c);
        }
        auto build = [](const auto& rs) {
            KnowledgeBase kb;
            for (const auto& [w, c] : rs)
                for (Mood m : kAllMoods) kb.merge({{w, c[index_of(m)]}}, m);
            kb.recompute();
            return kb;
        };
        const auto kb1 = build(rows);
        std::shuffle(rows.begin(), rows.end(), rng);
        const auto kb2 = build(rows);
        FrequencyTable doc;
        for (int i = 0; i < 8; ++i) doc[pool[rng() % pool.size()]] += 1;
        const auto s1 = score_document(doc, kb1).scores;
        const auto s2 = score_document(doc, kb2).scores;
        REQUIRE(s1 == s2);
    }
}

TEST_CASE("property: incremental update equals rebuilding with the extra document") {
    std::mt19937_64 rng(8);
    std::set<std::string> taken;
    const auto pool = testing::distinct_words(rng, 12, taken);
    auto random_doc = [&](const std::string& title) {
        std::vector<std::string> words;
        for (std::size_t i = 0, n = 1 + rng() % 15; i < n; ++i) words.push_back(pool[rng() % pool.size()]);
        return RawDocument{title, testing::join_lyric(words, rng), kAllMoods[rng() % kMoodCount]};
    };
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<RawDocument> corpus;
        for (std::size_t i = 0, n = rng() % 6; i < n; ++i) corpus.push_back(random_doc("d" + std::to_string(i)));
        const RawDocument extra = random_doc("extra");

        KnowledgeBase kb = build_from_corpus(corpus, {});
        const auto before = kb;
        const auto freq = frequency_table_of(extra.body, {});
        incremental_update(kb, freq, *extra.true_mood);

        for (const auto& [word, count] : freq) {
            const auto* old = before.find(word);
            const auto old_count = old ? old->counts[index_of(*extra.true_mood)] : 0;
            REQUIRE(kb.find(word)->counts[index_of(*extra.true_mood)] >= old_count);
        }

        corpus.push_back(extra);
        REQUIRE(kb == build_from_corpus(corpus, {}));
    }
}
