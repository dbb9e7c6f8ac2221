#ifndef LYRICMOOD_ERROR_HPP
#define LYRICMOOD_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lyricmood {

/// Base class of every error raised by the library. The CLI maps these to
/// exit status 2, except NoEvidence which maps to 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid UTF-8 input.
class DecodeError : public Error {
public:
    DecodeError(std::size_t offset, const std::string& context = {})
        : Error(build_message(offset, context)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    static std::string build_message(std::size_t offset, const std::string& context) {
        std::string msg = "invalid UTF-8 at byte offset " + std::to_string(offset);
        if (!context.empty()) msg = context + ": " + msg;
        return msg;
    }

    std::size_t offset_;
};

/// Unknown mood name, or a document that should carry a mood and does not.
class LabelError : public Error {
public:
    using Error::Error;
};

/// KB file header does not match the expected column layout.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Malformed field in a KB file row.
class ParseError : public Error {
public:
    ParseError(std::size_t row, const std::string& what)
        : Error("row " + std::to_string(row) + ": " + what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class DuplicateKeyError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// A corpus cannot satisfy a requested split, or an evaluation has no input.
class DataError : public Error {
public:
    using Error::Error;
};

/// No cleaned token of a document matched the knowledge base, so every mood
/// score is zero and there is nothing to take an argmax over.
class NoEvidence : public Error {
public:
    explicit NoEvidence(const std::string& title)
        : Error("no knowledge base term matched document '" + title + "'"), title_(title) {}

    const std::string& title() const noexcept { return title_; }

private:
    std::string title_;
};

}  // namespace lyricmood

#endif  // LYRICMOOD_ERROR_HPP
