#include "lyricmood/text_pipeline.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/uscript.h>
#include <unicode/unistr.h>

#include <fstream>
#include <iterator>
#include <sstream>

#include "lyricmood/error.hpp"

namespace lyricmood {

namespace {

constexpr char32_t kDanda = 0x0964;
constexpr char32_t kDoubleDanda = 0x0965;

// Strict UTF-8 decoding of one code point starting at `pos`. Rejects
// overlong forms, surrogates and values above U+10FFFF. Advances `pos`.
char32_t decode_one(std::string_view s, std::size_t& pos) {
    const std::size_t start = pos;
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    const unsigned char lead = byte(pos);
    if (lead < 0x80) {
        ++pos;
        return lead;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((lead & 0xE0) == 0xC0) {
        len = 2;
        cp = lead & 0x1F;
        min = 0x80;
    } else if ((lead & 0xF0) == 0xE0) {
        len = 3;
        cp = lead & 0x0F;
        min = 0x800;
    } else if ((lead & 0xF8) == 0xF0) {
        len = 4;
        cp = lead & 0x07;
        min = 0x10000;
    } else {
        throw DecodeError(start);
    }
    if (start + len > s.size()) throw DecodeError(start);
    for (std::size_t i = 1; i < len; ++i) {
        const unsigned char b = byte(start + i);
        if ((b & 0xC0) != 0x80) throw DecodeError(start);
        cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) throw DecodeError(start);
    pos = start + len;
    return cp;
}

std::u32string decode(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t pos = 0;
    while (pos < s.size()) out.push_back(decode_one(s, pos));
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_whitespace(char32_t cp) {
    return u_hasBinaryProperty(static_cast<UChar32>(cp), UCHAR_WHITE_SPACE) != 0;
}

bool is_separator(char32_t cp) {
    if (is_whitespace(cp)) return true;
    if (cp == kDanda || cp == kDoubleDanda) return true;
    // The rest of the Devanagari block (including the abbreviation sign,
    // which is Po) always stays inside tokens.
    if (cp >= 0x0900 && cp <= 0x097F) return false;
    const auto mask = U_GET_GC_MASK(static_cast<UChar32>(cp));
    return (mask & (U_GC_P_MASK | U_GC_S_MASK)) != 0;
}

const icu::Normalizer2& nfc() {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || n == nullptr) throw Error("ICU NFC normalizer unavailable");
    return *n;
}

std::string to_nfc(const std::string& utf8) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::UnicodeString src = icu::UnicodeString::fromUTF8(utf8);
    const icu::UnicodeString dst = nfc().normalize(src, status);
    if (U_FAILURE(status)) throw Error("NFC normalization failed");
    std::string out;
    dst.toUTF8String(out);
    return out;
}

}  // namespace

std::string normalize(std::string_view raw) {
    const std::u32string cps = decode(raw);

    std::string lowered;
    lowered.reserve(raw.size());
    for (char32_t cp : cps) {
        UErrorCode status = U_ZERO_ERROR;
        const auto c = static_cast<UChar32>(cp);
        if (uscript_getScript(c, &status) == USCRIPT_LATIN && U_SUCCESS(status)) {
            append_utf8(lowered, static_cast<char32_t>(u_tolower(c)));
        } else {
            append_utf8(lowered, cp);
        }
    }

    const std::u32string composed = decode(to_nfc(lowered));
    std::string out;
    out.reserve(lowered.size());
    bool pending_space = false;
    for (char32_t cp : composed) {
        if (is_whitespace(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        append_utf8(out, cp);
    }
    return out;
}

std::vector<Token> tokenize(std::string_view normalized) {
    std::vector<Token> tokens;
    Token current;
    std::size_t pos = 0;
    while (pos < normalized.size()) {
        const std::size_t start = pos;
        const char32_t cp = decode_one(normalized, pos);
        if (is_separator(cp)) {
            if (!current.empty()) tokens.push_back(std::move(current));
            current.clear();
        } else {
            current.append(normalized.substr(start, pos - start));
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::vector<Token> clean(const std::vector<Token>& tokens, const StopwordSet& stopwords) {
    if (stopwords.empty()) return tokens;
    std::vector<Token> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (!stopwords.contains(t)) out.push_back(t);
    }
    return out;
}

FrequencyTable build_frequency_table(const std::vector<Token>& tokens) {
    FrequencyTable table;
    for (const auto& t : tokens) ++table[t];
    return table;
}

FrequencyTable frequency_table_of(std::string_view raw, const StopwordSet& stopwords) {
    return build_frequency_table(clean(tokenize(normalize(raw)), stopwords));
}

bool is_valid_token(std::string_view t) {
    if (t.empty()) return false;
    try {
        if (normalize(t) != t) return false;
        const auto parts = tokenize(t);
        return parts.size() == 1 && parts.front() == t;
    } catch (const DecodeError&) {
        return false;
    }
}

std::string read_utf8_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
    if (data.size() >= 3 && data.compare(0, 3, "\xEF\xBB\xBF") == 0) data.erase(0, 3);
    try {
        decode(data);
    } catch (const DecodeError& e) {
        throw DecodeError(e.offset(), path.string());
    }
    return data;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
    const std::string text = read_utf8_file(path);
    StopwordSet set;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.front() == '#') continue;
        for (auto& t : tokenize(normalize(line))) set.words.insert(std::move(t));
    }
    return set;
}

}  // namespace lyricmood
