#include "tagcf/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "tagcf/ingest.hpp"
#include "tagcf/util.hpp"

namespace tagcf {
namespace {

std::string padded(const char* prefix, std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%04zu", prefix, n);
    return buf;
}

// Draw an index with probability proportional to the gaps in the
// cumulative weight array — a long-tailed popularity curve over the
// slots that got nonzero weight.
std::size_t draw_powerlaw(SplitMix64& rng, const std::vector<double>& cumulative) {
    const double x = rng.next_double() * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    return static_cast<std::size_t>(it - cumulative.begin());
}

}  // namespace

std::vector<TagAssignment> synthesize_assignments(const SyntheticSpec& spec) {
    SplitMix64 rng(spec.seed);

    // The item space has three zones. The first few items are
    // cross-genre blockbusters nearly everyone holds; they give
    // unrelated users a shared baseline of co-tagged items. The last
    // few are the spam pool only noise users touch. Everything in
    // between is the genre catalogue, where earlier items are more
    // popular. Within a genre, items interleave across a handful of
    // subclusters — niches whose fans overlap deeply with each other
    // and only loosely with the rest of the genre.
    const std::size_t blockbusters =
        std::min(spec.blockbusters, spec.items / 4);
    const std::size_t spam = std::min(spec.spam_items, spec.items / 4);
    const std::size_t catalogue_end = spec.items - spam;
    constexpr std::size_t kNoGenre = static_cast<std::size_t>(-1);
    constexpr std::size_t kSubclusters = 4;
    std::vector<std::size_t> item_genre(spec.items);
    for (std::size_t i = 0; i < spec.items; ++i)
        item_genre[i] = (i < blockbusters || i >= catalogue_end)
                            ? kNoGenre
                            : (i - blockbusters) % spec.genres;
    auto subcluster_of = [&](std::size_t item) {
        return ((item - blockbusters) / spec.genres) % kSubclusters;
    };

    // Popularity weights for the genre catalogue; blockbuster and spam
    // slots get zero weight so power-law draws never land on them.
    std::vector<double> cumulative(spec.items);
    double acc = 0.0;
    for (std::size_t i = 0; i < spec.items; ++i) {
        if (i >= blockbusters && i < catalogue_end)
            acc += 1.0 / std::pow(
                             static_cast<double>((i - blockbusters) / spec.genres + 1),
                             0.6);
        cumulative[i] = acc;
    }

    const std::size_t genre_tag_count = spec.genres * spec.tags_per_genre;
    auto genre_tag = [&](std::size_t genre) {
        return genre * spec.tags_per_genre + rng.next_below(spec.tags_per_genre);
    };
    auto noise_tag = [&](std::size_t fallback_genre) {
        if (spec.noise_tags == 0) return genre_tag(fallback_genre);
        return genre_tag_count + rng.next_below(spec.noise_tags);
    };
    // Everybody describes blockbusters in the same small shared
    // vocabulary, so those tags agree across users without carrying any
    // personal interest.
    auto generic_tag = [&] {
        return genre_tag_count + spec.noise_tags +
               rng.next_below(spec.tags_per_genre);
    };

    // Genres that actually have catalogue items; tiny catalogues may not
    // reach every genre index, and the in-genre rejection draws below
    // must never target an empty one. The same goes for subclusters: a
    // genre with fewer popularity ranks than kSubclusters leaves its top
    // subcluster indices empty.
    const std::size_t live_genres = std::max<std::size_t>(
        1, std::min(spec.genres, catalogue_end - blockbusters));
    auto genre_size = [&](std::size_t genre) {
        return (catalogue_end - blockbusters - 1 - genre) / spec.genres + 1;
    };
    auto live_subclusters = [&](std::size_t genre) {
        return std::min(kSubclusters, genre_size(genre));
    };

    // Population skeleton: homes, niches and noisy slots are laid out
    // round-robin so every genre ends up with the same mix of fans and
    // noise regardless of seed; only tastes, items and tags are random.
    const std::size_t noisy_period =
        spec.noisy_user_fraction > 0.0
            ? std::max<std::size_t>(
                  2, static_cast<std::size_t>(
                         std::llround(1.0 / spec.noisy_user_fraction)))
            : 0;

    std::vector<TagAssignment> rows;
    std::size_t noisy_seen = 0;
    for (std::size_t u = 0; u < spec.users; ++u) {
        const std::string user = padded("u", u);
        const std::size_t home = u % live_genres;
        const std::size_t home_subs = live_subclusters(home);
        const std::size_t niche = (u / live_genres) % home_subs;
        // A second, lighter niche in the same genre: the tail of a
        // user's taste that only kindred spirits from that corner can
        // surface, which is what keeps larger neighborhoods useful.
        const std::size_t secondary =
            home_subs > 1
                ? (niche + 1 + rng.next_below(home_subs - 1)) % home_subs
                : niche;
        const bool noisy =
            noisy_period != 0 && u % noisy_period == noisy_period - 1;
        // A consensus user collects their home niche, tags it in the
        // genre's shared vocabulary anchored by a personal favorite tag,
        // and holds a fixed handful of blockbusters. Their discipline —
        // how tightly they stick to the niche and its vocabulary —
        // varies per user, and the disciplined ones are both the most
        // credible taggers and the most useful neighbors. A noisy user
        // holds every blockbuster, camps hard on the popular head of one
        // anchor genre, and fills up from the spam pool, all labelled
        // from the noise vocabulary nobody agrees on: the camping makes
        // them look like that genre's most similar fans, the spam and
        // foreign-genre votes are junk they push into neighbours'
        // recommendations, and their lack of tag consensus is exactly
        // what trust demotes.
        const double discipline = rng.next_double();
        const std::size_t favorite_tag = genre_tag(home);
        const std::size_t anchor = noisy_seen % live_genres;
        if (noisy) ++noisy_seen;
        const std::size_t item_count =
            noisy ? spec.max_items_per_user
                  : spec.min_items_per_user +
                        rng.next_below(spec.max_items_per_user -
                                       spec.min_items_per_user + 1);
        const double niche_focus = 0.72 + 0.2 * discipline;

        std::set<std::size_t> picked;
        std::size_t blockbusters_held = 0;
        // Consensus users hold blockbusters in proportion to appetite, so
        // the blockbuster share of a profile — and of the trust mass it
        // earns — stays flat across light and heavy users.
        const std::size_t blockbuster_take =
            noisy ? std::min<std::size_t>(blockbusters, 10)
                  : std::min<std::size_t>(
                        std::max<std::size_t>(1, item_count / 10),
                        blockbusters);
        std::size_t anchors_held = 0;
        std::size_t spam_held = 0;
        const std::size_t anchor_take =
            std::min<std::size_t>(12, genre_size(anchor));
        while (picked.size() < std::min(item_count, spec.items)) {
            std::size_t item;
            if (blockbusters_held < blockbuster_take) {
                item = rng.next_below(blockbusters);
            } else if (noisy && anchors_held < anchor_take) {
                do {
                    item = draw_powerlaw(rng, cumulative);
                } while (item_genre[item] != anchor);
            } else if (noisy && spam_held < spam) {
                item = catalogue_end + rng.next_below(spam);
            } else if (noisy) {
                item = blockbusters +
                       rng.next_below(catalogue_end - blockbusters);
            } else if (rng.next_double() < 0.85) {
                // Stay home: inside the genre with probability one, in
                // the primary niche with the user's focus and in the
                // secondary niche otherwise. The power-law pick lands on
                // the right slice quickly because genres interleave.
                const std::size_t target =
                    rng.next_double() < niche_focus ? niche : secondary;
                do {
                    item = draw_powerlaw(rng, cumulative);
                } while (item_genre[item] != home ||
                         subcluster_of(item) != target);
            } else {
                // An off-genre graze lands anywhere in the catalogue;
                // most such one-off picks never attract a second tagger.
                item = blockbusters +
                       rng.next_below(catalogue_end - blockbusters);
            }
            if (picked.insert(item).second) {
                if (item < blockbusters) ++blockbusters_held;
                else if (item >= catalogue_end) ++spam_held;
                else if (noisy) ++anchors_held;
            }
        }

        for (std::size_t item : picked) {
            const std::string item_id = padded("m", item);
            const std::size_t genre = item_genre[item];
            std::set<std::size_t> tags;
            if (noisy) {
                const std::size_t pool =
                    spec.noise_tags ? spec.noise_tags : spec.tags_per_genre;
                const std::size_t count =
                    std::min<std::size_t>(1 + rng.next_below(2), pool);
                while (tags.size() < count)
                    tags.insert(noise_tag(genre == kNoGenre ? home : genre));
            } else if (genre == kNoGenre) {
                tags.insert(generic_tag());
            } else if (genre == home) {
                // Core interest: the favorite plus one or two more words,
                // usually from the genre's vocabulary but slipping into
                // noise when the user's discipline is low. The heavy tag
                // mass here is what separates core items from grazed
                // ones.
                tags.insert(favorite_tag);
                const std::size_t count = std::min<std::size_t>(
                    2 + rng.next_below(2), spec.tags_per_genre);
                while (tags.size() < count) {
                    if (rng.next_double() < 0.25)
                        tags.insert(noise_tag(home));
                    else
                        tags.insert(genre_tag(home));
                }
            } else {
                // A passing graze outside the home genre: one light tag,
                // as often noise as the item's own vocabulary.
                tags.insert(rng.next_double() < 0.5 ? noise_tag(genre)
                                                    : genre_tag(genre));
            }
            for (std::size_t tag : tags)
                rows.push_back({user, item_id, padded("t", tag),
                                static_cast<std::int64_t>(rows.size())});
        }
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

Corpus synthesize(const SyntheticSpec& spec) {
    return group_transactions(synthesize_assignments(spec));
}

}  // namespace tagcf
