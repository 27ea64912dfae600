#include "tagcf/neighborhood.hpp"

namespace tagcf {

NeighborSet neighbors_of(const ProfileStore& store, const std::string& user) {
    NeighborSet out{user, {}};
    auto profile = store.get_user(user);
    if (!profile) return out;
    for (const auto& [item_id, tags] : profile->items) {
        auto item = store.get_item(item_id);
        if (!item) continue;
        for (const auto& [tagger, their_tags] : item->taggers)
            if (tagger != user) out.neighbors.insert(tagger);
    }
    return out;
}

CandidateSet candidate_items(const ProfileStore& store,
                             const UserProfile& user,
                             const NeighborSet& neighbors) {
    CandidateSet out{neighbors.user_id, {}};
    for (const std::string& neighbor_id : neighbors.neighbors) {
        auto neighbor = store.get_user(neighbor_id);
        if (!neighbor) continue;
        for (const auto& [item_id, tags] : neighbor->items)
            if (!user.has_item(item_id)) out.candidates.insert(item_id);
    }
    return out;
}

std::pair<std::size_t, std::size_t> reduced_matrix_footprint(
    const UserProfile& user, const NeighborSet& neighbors,
    const CandidateSet& candidates) {
    std::set<std::string> columns = candidates.candidates;
    for (const auto& [item_id, tags] : user.items) columns.insert(item_id);
    return {neighbors.neighbors.size(), columns.size()};
}

}  // namespace tagcf
