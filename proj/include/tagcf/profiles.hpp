#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tagcf/types.hpp"

namespace tagcf {

class ProfileStore;

// Everything the models need to know about one user: how often they
// used each tag, and which tags they put on which items. total_tag_uses
// caches the frequency sum so tag scores don't rescan the map.
struct UserProfile {
    std::string id;
    std::map<std::string, std::uint64_t> tag_freq;
    std::map<std::string, std::set<std::string>> items;  // item -> tags
    std::uint64_t total_tag_uses = 0;

    bool has_item(const std::string& item) const {
        return items.contains(item);
    }

    friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

// The item-side mirror: who tagged this item and with what, plus the
// distinct-user count per tag that information values are built from.
struct ItemProfile {
    std::string id;
    std::map<std::string, std::set<std::string>> taggers;  // user -> tags
    std::map<std::string, std::uint64_t> tag_user_count;   // tag -> |users|

    std::size_t tagger_count() const { return taggers.size(); }

    friend bool operator==(const ItemProfile&, const ItemProfile&) = default;
};

// Share of the user's tagging activity spent on this tag:
// freq(u, t) / sum of all their tag frequencies. Scores over a user's
// tags sum to 1. Throws std::out_of_range for a tag the user never
// used.
double tag_score(const UserProfile& user, const std::string& tag);

// Weight of an item for a user: the sum of the user's tag scores over
// the tags they attached to it. In (0, 1] because an item's tags are
// distinct. Throws std::out_of_range when the user never tagged the
// item.
double item_weight(const UserProfile& user, const std::string& item);

// How much of the tagging consensus on this item a single tag carries:
// distinct users of the tag divided by the sum of those counts over all
// the item's tags. Values over an item's tags add up to 1. Throws
// std::out_of_range for a tag never used on the item.
double tag_information_value(const ItemProfile& item, const std::string& tag);

// Credibility of one user's transaction against the item's consensus:
// the mean information value of the tags they used. A tagger who picks
// the tags everyone else also picked scores high; idiosyncratic tags
// drag the mean down. Throws std::out_of_range for a non-tagger.
double transaction_trust(const ItemProfile& item, const std::string& user);

// Folds one transaction into both affected profiles, creating them on
// first sight. Throws DuplicateTransaction when the user already has a
// transaction for the item — callers must merge tags upstream instead
// of applying twice.
void apply_transaction(ProfileStore& store, const Transaction& tx);

// Fresh store with every transaction of the corpus applied. Profiles
// come out identical whatever order the corpus would be replayed in, so
// a batch build and an incremental one agree.
ProfileStore build_profiles(const Corpus& corpus, std::size_t shard_count = 16);

// JSON wire format for the store's file backend.
std::string to_json(const UserProfile& user);
std::string to_json(const ItemProfile& item);
UserProfile user_profile_from_json(const std::string& json);
ItemProfile item_profile_from_json(const std::string& json);

}  // namespace tagcf
