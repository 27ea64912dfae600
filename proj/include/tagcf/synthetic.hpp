#pragma once

#include <cstdint>
#include <vector>

#include "tagcf/types.hpp"

namespace tagcf {

// Knobs for the generated folksonomy. The defaults produce a corpus
// with the structure the models feed on: users cluster into genres,
// item popularity is long-tailed, most taggers echo their genre's
// vocabulary while a noisy minority tags at random.
struct SyntheticSpec {
    std::size_t users = 1600;
    std::size_t items = 6010;
    std::size_t genres = 40;
    std::size_t tags_per_genre = 8;
    std::size_t noise_tags = 160;
    // Cross-genre hits almost everyone tags (with a light generic tag);
    // capped at a quarter of the catalogue.
    std::size_t blockbusters = 30;
    // Items only noise users tag; also capped at a quarter of the
    // catalogue.
    std::size_t spam_items = 40;
    // Chance that a user is a "noise" user: one who holds every
    // blockbuster plus a slice of the spam pool and tags it all from
    // the noise vocabulary instead of sticking to a home genre.
    double noisy_user_fraction = 0.15;
    std::size_t min_items_per_user = 14;
    std::size_t max_items_per_user = 26;
    std::uint64_t seed = 1;
};

// Deterministic: the same spec always yields the same assignments, on
// any platform. Rows come out sorted by (user, item, tag).
std::vector<TagAssignment> synthesize_assignments(const SyntheticSpec& spec);

// Grouped form of the above.
Corpus synthesize(const SyntheticSpec& spec);

}  // namespace tagcf
