#pragma once

// Small shared conveniences for the test suites.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tagcf/ingest.hpp"
#include "tagcf/profiles.hpp"
#include "tagcf/types.hpp"
#include "tagcf/util.hpp"

namespace testutil {

struct Row {
    std::string user, item, tag;
};

// Hand-built profile for tests that pin exact numbers. With no explicit
// freq map, each tag counts once per item that carries it.
inline tagcf::UserProfile profile_with_items(
    std::string id, std::map<std::string, std::set<std::string>> items,
    std::map<std::string, std::size_t> freq = {}) {
    tagcf::UserProfile p;
    p.id = std::move(id);
    p.items = std::move(items);
    if (freq.empty()) {
        for (const auto& [item, tags] : p.items)
            for (const auto& tag : tags) ++freq[tag];
    }
    p.tag_freq = std::move(freq);
    p.total_tag_uses = 0;
    for (const auto& [tag, n] : p.tag_freq) p.total_tag_uses += n;
    return p;
}

inline tagcf::Corpus make_corpus(const std::vector<Row>& rows) {
    std::vector<tagcf::TagAssignment> assignments;
    assignments.reserve(rows.size());
    for (const Row& r : rows) assignments.push_back({r.user, r.item, r.tag, 0});
    return tagcf::group_transactions(assignments);
}

// A random but reproducible toy corpus: up to max_users users, each
// tagging a few of max_items items with tags drawn from a pool of
// max_tags. Dense enough that neighborhoods and candidate sets are
// nonempty for most users.
inline tagcf::Corpus random_corpus(std::uint64_t seed,
                                   std::size_t max_users = 10,
                                   std::size_t max_items = 15,
                                   std::size_t max_tags = 8) {
    tagcf::SplitMix64 rng(seed);
    const std::size_t users = 2 + rng.next_below(max_users - 1);
    const std::size_t items = 2 + rng.next_below(max_items - 1);
    const std::size_t tags = 1 + rng.next_below(max_tags);

    std::vector<Row> rows;
    for (std::size_t u = 0; u < users; ++u) {
        const std::size_t item_count =
            1 + rng.next_below(std::min<std::size_t>(items, 6));
        for (std::size_t i = 0; i < item_count; ++i) {
            const std::string item = "m" + std::to_string(rng.next_below(items));
            const std::size_t tag_count = 1 + rng.next_below(3);
            for (std::size_t t = 0; t < tag_count; ++t)
                rows.push_back({"u" + std::to_string(u), item,
                                "t" + std::to_string(rng.next_below(tags))});
        }
    }
    return make_corpus(rows);
}

}  // namespace testutil
