#include "lyricmood/mood.hpp"

#include <string>

#include "lyricmood/error.hpp"

namespace lyricmood {

namespace {
constexpr std::array<std::string_view, kMoodCount> kNames = {"happy", "sad", "romantic",
                                                             "devotional", "party"};
}

std::string_view to_string(Mood m) noexcept { return kNames[index_of(m)]; }

Mood parse_mood(std::string_view name) {
    for (Mood m : kAllMoods) {
        if (kNames[index_of(m)] == name) return m;
    }
    throw LabelError("unknown mood '" + std::string(name) +
                     "' (expected happy, sad, romantic, devotional or party)");
}

}  // namespace lyricmood
