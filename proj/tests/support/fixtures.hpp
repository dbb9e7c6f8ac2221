// Shared test helpers: temporary directories, file writers and synthetic
// Devanagari corpora.
#ifndef LYRICMOOD_TESTS_FIXTURES_HPP
#define LYRICMOOD_TESTS_FIXTURES_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lyricmood/mood.hpp"
#include "lyricmood/text_pipeline.hpp"

namespace lyricmood::testing {

namespace fs = std::filesystem;

class TempDir {
public:
    TempDir() {
        std::string pattern = (fs::temp_directory_path() / "lyricmood-XXXXXX").string();
        if (::mkdtemp(pattern.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
        path_ = pattern;
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& rel) const { return path_ / rel; }

private:
    fs::path path_;
};

inline void write_file(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Random Devanagari word of 1-3 consonant+matra syllables (always NFC and a
/// single token).
inline std::string random_word(std::mt19937_64& rng) {
    static const std::vector<std::string> consonants = {"क", "ख", "ग", "घ", "च", "छ", "ज", "झ", "ट", "ठ",
                                                        "ड", "त", "थ", "द", "ध", "न", "प", "फ", "ब", "भ",
                                                        "म", "य", "र", "ल", "व", "स", "ह"};
    static const std::vector<std::string> marks = {"", "ा", "ि", "ी", "ु", "ू", "े", "ै", "ो", "ौ", "ं", "ँ", "्"};
    std::string w;
    const int syllables = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < syllables; ++i) {
        w += consonants[rng() % consonants.size()];
        // A virama on the last syllable is legal but keep words readable.
        const auto& m = marks[rng() % marks.size()];
        if (!(i == syllables - 1 && m == "्")) w += m;
    }
    return w;
}

/// `n` distinct random words not present in `taken`; adds them to `taken`.
inline std::vector<std::string> distinct_words(std::mt19937_64& rng, std::size_t n, std::set<std::string>& taken) {
    std::vector<std::string> out;
    while (out.size() < n) {
        auto w = random_word(rng);
        if (taken.insert(w).second) out.push_back(std::move(w));
    }
    return out;
}

inline std::string join_lyric(const std::vector<std::string>& words, std::mt19937_64& rng) {
    static const std::vector<std::string> seps = {" ", " ", " ", ", ", "\n", " । ", "... "};
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += seps[rng() % seps.size()];
        out += words[i];
    }
    return out;
}

/// Writes root/<mood>/<mood>_<i>.txt with `per_mood` songs per mood. Every
/// mood draws from its own vocabulary, which no other mood uses.
inline void write_separable_corpus(const fs::path& root, std::size_t per_mood, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::set<std::string> taken;
    for (Mood m : kAllMoods) {
        const auto vocab = distinct_words(rng, 30, taken);
        for (std::size_t i = 0; i < per_mood; ++i) {
            std::vector<std::string> words;
            const std::size_t len = 20 + rng() % 20;
            for (std::size_t j = 0; j < len; ++j) words.push_back(vocab[rng() % vocab.size()]);
            write_file(root / std::string(to_string(m)) / (std::string(to_string(m)) + "_" + std::to_string(i) + ".txt"),
                       join_lyric(words, rng));
        }
    }
}

/// Overlapping vocabularies: a shared pool used by every mood plus a small
/// mood-leaning pool, so classification is imperfect like real lyrics.
inline void write_realistic_corpus(const fs::path& root, std::size_t per_mood, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::set<std::string> taken;
    const auto shared = distinct_words(rng, 150, taken);
    MoodArray<std::vector<std::string>> leaning;
    for (Mood m : kAllMoods) leaning[index_of(m)] = distinct_words(rng, 40, taken);
    for (Mood m : kAllMoods) {
        for (std::size_t i = 0; i < per_mood; ++i) {
            std::vector<std::string> words;
            const std::size_t len = 15 + rng() % 30;
            for (std::size_t j = 0; j < len; ++j) {
                const auto r = rng() % 100;
                if (r < 85) {
                    words.push_back(shared[rng() % shared.size()]);
                } else if (r < 93) {
                    words.push_back(leaning[index_of(m)][rng() % 40]);
                } else {
                    words.push_back(leaning[rng() % kMoodCount][rng() % 40]);
                }
            }
            write_file(root / std::string(to_string(m)) / (std::string(to_string(m)) + "_" + std::to_string(i) + ".txt"),
                       join_lyric(words, rng));
        }
    }
}

/// Knowledge base rows for मेरी, मैया, जय and जे, exactly as
/// saved, in code point order.
inline std::string sample_kb_csv() {
    return "word,happy,sad,romantic,devotional,party,Total,prob_happy,prob_sad,prob_romantic,prob_devotional,prob_party\n"
           "जय,0,1,0,55,0,56,0,0.01785714286,0,0.9821428571,0\n"
           "जे,0,0,0,0,0,0,0,0,0,0,0\n"
           "मेरी,29,1,22,24,24,100,0.29,0.01,0.22,0.24,0.24\n"
           "मैया,0,0,0,26,0,26,0,0,0,1,0\n";
}

/// A full lyric with stanzas, refrains and punctuation.
inline std::string sample_lyric() {
    return "चला जाता हूँ, किसी की धुन में\n"
           "धड़कते दिल के, तराने लिये\n"
           "मिलन की मस्ती, भरी आँखों में\n"
           "हज़ारों सपने, सुहाने लिये, चला जाता हूँ ...\n"
           "\n"
           "ये मस्ती के, नज़रें हैं, तो ऐसे में\n"
           "सम्भलना कैसा मेरी क़सम\n"
           "तू लहराती, उगारिया हो, तो फिर क्यों ना\n"
           "चलूँ मैं बहका बहका रे\n"
           "मेरे जीवन में, ये शाम आई है\n"
           "मुहब्बत वाले, ज़माने लिये, चला जाता हूँ ...\n"
           "\n"
           "वो आलम भी, अजब होगा, वो जब मेरे\n"
           "करीब आएगी मेरी क़सम\n"
           "कभी बड़ियाँ छुड़ा लेगी, कभी हँसके\n"
           "गले से लग जाएगी हाथ\n"
           "मेरी बाहों में, मचल जाएगी\n"
           "वो सच्चे झूठे बहाने लिये, चला जाता हूँ ...\n"
           "\n"
           "बहारों में, नज़ारों में, नज़र डालूँ\n"
           "तो ऐसा लागे मेरी क़सम\n"
           "वो नैनों में, भरे काजल, घूँघट खोले\n"
           "खडी हैं मेरे आगे रे\n"
           "शरम से बोझल झुकी पलकों में\n"
           "जवों रातों के फ़साने लिये, चला जाता हूँ ...\n";
}

}  // namespace lyricmood::testing

#endif  // LYRICMOOD_TESTS_FIXTURES_HPP
