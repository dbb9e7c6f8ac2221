#ifndef LYRICMOOD_MOOD_HPP
#define LYRICMOOD_MOOD_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace lyricmood {

/// The five mood classes. Enumerator order is the canonical order used for
/// KB columns, matrix rows/columns and argmax tie-breaking.
enum class Mood : std::uint8_t { happy = 0, sad, romantic, devotional, party };

inline constexpr std::size_t kMoodCount = 5;

inline constexpr std::array<Mood, kMoodCount> kAllMoods = {
    Mood::happy, Mood::sad, Mood::romantic, Mood::devotional, Mood::party};

template <typename T>
using MoodArray = std::array<T, kMoodCount>;

constexpr std::size_t index_of(Mood m) noexcept { return static_cast<std::size_t>(m); }

std::string_view to_string(Mood m) noexcept;

/// Throws LabelError for anything outside the closed set. Matching is exact
/// (lowercase).
Mood parse_mood(std::string_view name);

}  // namespace lyricmood

#endif  // LYRICMOOD_MOOD_HPP
