#include "lyricmood/knowledge_base.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "lyricmood/error.hpp"

namespace lyricmood {

void KnowledgeBase::merge(const FrequencyTable& freq, Mood mood) {
    for (const auto& [token, count] : freq) {
        entries_[token].counts[index_of(mood)] += count;
    }
    ++revision_;
    stale_ = true;
}

void KnowledgeBase::recompute() {
    for (auto& [word, e] : entries_) {
        e.total = std::accumulate(e.counts.begin(), e.counts.end(), std::int64_t{0});
        for (std::size_t m = 0; m < kMoodCount; ++m) {
            e.probs[m] = e.total > 0 ? static_cast<double>(e.counts[m]) / static_cast<double>(e.total)
                                     : 0.0;
        }
    }
    ++revision_;
    stale_ = false;
}

const KbEntry* KnowledgeBase::find(std::string_view word) const {
    const auto it = entries_.find(std::string(word));
    return it == entries_.end() ? nullptr : &it->second;
}

KnowledgeBase build_from_corpus(const std::vector<RawDocument>& docs, const StopwordSet& stopwords) {
    KnowledgeBase kb;
    std::set<std::string> titles;
    for (const auto& doc : docs) {
        if (!doc.true_mood) throw LabelError("document '" + doc.title + "' has no mood label");
        if (!titles.insert(doc.title).second)
            throw DuplicateKeyError("duplicate document title '" + doc.title + "'");
        kb.merge(frequency_table_of(doc.body, stopwords), *doc.true_mood);
    }
    kb.recompute();
    return kb;
}

namespace {

void append_number(std::string& out, std::int64_t v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, r.ptr);
}

void append_number(std::string& out, double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 10);
    out.append(buf, r.ptr);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

template <typename T>
T parse_field(std::string_view field, std::size_t row, const char* column) {
    T value{};
    const auto* end = field.data() + field.size();
    const auto r = std::from_chars(field.data(), end, value);
    if (field.empty() || r.ec != std::errc{} || r.ptr != end)
        throw ParseError(row, std::string("malformed ") + column + " value '" + std::string(field) + "'");
    return value;
}

}  // namespace

std::string to_csv(const KnowledgeBase& kb) {
    std::string out(kKbHeader);
    out.push_back('\n');
    for (const auto& [word, e] : kb.entries()) {
        out += word;
        for (auto c : e.counts) {
            out.push_back(',');
            append_number(out, c);
        }
        out.push_back(',');
        append_number(out, e.total);
        for (auto p : e.probs) {
            out.push_back(',');
            append_number(out, p);
        }
        out.push_back('\n');
    }
    return out;
}

void save_knowledge_base(const KnowledgeBase& kb, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    const std::string csv = to_csv(kb);
    out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

KnowledgeBase parse_knowledge_base(std::string_view csv, std::vector<std::string>* warnings) {
    static const std::array<const char*, kMoodCount> kCountColumns = {"happy", "sad", "romantic",
                                                                      "devotional", "party"};
    constexpr std::size_t kColumns = 2 + 2 * kMoodCount;

    struct Stored {
        std::int64_t total;
        MoodArray<double> probs;
        std::size_t row;
    };
    std::map<Token, Stored> stored;

    KnowledgeBase kb;
    std::size_t row = 0;
    bool header_seen = false;
    for (std::string_view line : split(csv, '\n')) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!header_seen) {
            if (line != kKbHeader)
                throw SchemaError("unexpected KB header '" + std::string(line) + "', expected '" +
                                  std::string(kKbHeader) + "'");
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;

        const auto fields = split(line, ',');
        if (fields.size() != kColumns)
            throw ParseError(row, "expected " + std::to_string(kColumns) + " fields, found " +
                                      std::to_string(fields.size()));

        Token word;
        try {
            word = normalize(fields[0]);
        } catch (const DecodeError& e) {
            throw ParseError(row, e.what());
        }
        if (!is_valid_token(word)) throw ParseError(row, "invalid word '" + std::string(fields[0]) + "'");

        KbEntry entry;
        for (std::size_t m = 0; m < kMoodCount; ++m) {
            entry.counts[m] = parse_field<std::int64_t>(fields[1 + m], row, kCountColumns[m]);
            if (entry.counts[m] < 0) throw ParseError(row, std::string("negative ") + kCountColumns[m] + " count");
        }
        Stored s{parse_field<std::int64_t>(fields[1 + kMoodCount], row, "Total"), {}, row};
        for (std::size_t m = 0; m < kMoodCount; ++m)
            s.probs[m] = parse_field<double>(fields[2 + kMoodCount + m], row, "probability");

        if (!kb.entries_.emplace(word, entry).second)
            throw DuplicateKeyError("row " + std::to_string(row) + ": duplicate word '" + word + "'");
        stored.emplace(word, s);
    }
    if (!header_seen) throw SchemaError("empty KB file (missing header)");

    kb.recompute();

    if (warnings) {
        for (const auto& [word, e] : kb.entries()) {
            const Stored& s = stored.at(word);
            bool ok = s.total == e.total;
            for (std::size_t m = 0; m < kMoodCount && ok; ++m) ok = std::abs(s.probs[m] - e.probs[m]) <= 1e-6;
            if (!ok)
                warnings->push_back("row " + std::to_string(s.row) + ": stored Total/probabilities for '" +
                                    word + "' disagree with counts; recomputed from counts");
        }
    }
    return kb;
}

KnowledgeBase load_knowledge_base(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::string text;
    try {
        text = read_utf8_file(path);
    } catch (const DecodeError& e) {
        throw ParseError(0, e.what());
    }
    return parse_knowledge_base(text, warnings);
}

}  // namespace lyricmood
