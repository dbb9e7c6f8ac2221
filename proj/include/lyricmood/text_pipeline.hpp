#ifndef LYRICMOOD_TEXT_PIPELINE_HPP
#define LYRICMOOD_TEXT_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lyricmood/mood.hpp"

namespace lyricmood {

/// A normalized word form: NFC, non-empty, no whitespace, no punctuation or
/// symbol characters.
using Token = std::string;

/// Token -> occurrence count within one document. Ordered so that iteration
/// is deterministic.
using FrequencyTable = std::map<Token, std::int64_t>;

struct RawDocument {
    std::string title;
    std::string body;
    std::optional<Mood> true_mood;
};

struct StopwordSet {
    std::set<Token> words;

    bool contains(std::string_view t) const { return words.find(std::string(t)) != words.end(); }
    bool empty() const noexcept { return words.empty(); }
};

/// Validates UTF-8, lowercases Latin letters, applies Unicode NFC and
/// collapses every whitespace run to a single ASCII space with no
/// leading/trailing whitespace. Throws DecodeError on malformed input.
std::string normalize(std::string_view raw);

/// Splits normalized text at whitespace and at every punctuation or symbol
/// code point (general categories P* and S*, which include danda and
/// double danda). Digits and all Devanagari letters and marks are kept.
std::vector<Token> tokenize(std::string_view normalized);

std::vector<Token> clean(const std::vector<Token>& tokens, const StopwordSet& stopwords);

FrequencyTable build_frequency_table(const std::vector<Token>& tokens);

/// normalize -> tokenize -> clean -> build_frequency_table.
FrequencyTable frequency_table_of(std::string_view raw, const StopwordSet& stopwords);

/// True when `t` satisfies the Token invariants (non-empty, valid UTF-8,
/// already normalized, and a single token under tokenize).
bool is_valid_token(std::string_view t);

/// Reads a file as UTF-8 (a leading BOM is dropped). Throws IoError when the
/// file cannot be read and DecodeError naming the file on bad bytes.
std::string read_utf8_file(const std::filesystem::path& path);

/// One token per line; blank lines and lines starting with '#' are skipped.
/// Each line is normalized and tokenized, so a line may add several words.
StopwordSet load_stopwords(const std::filesystem::path& path);

}  // namespace lyricmood

#endif  // LYRICMOOD_TEXT_PIPELINE_HPP
