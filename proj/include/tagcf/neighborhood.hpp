#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>

#include "tagcf/store.hpp"

namespace tagcf {

// Users who share at least one tagged item with user_id. Never contains
// user_id itself.
struct NeighborSet {
    std::string user_id;
    std::set<std::string> neighbors;
};

// Items the neighbors tagged that the user has not. These are the only
// items the recommender will ever score for this user.
struct CandidateSet {
    std::string user_id;
    std::set<std::string> candidates;
};

// Walks the user's own items and unions their tagger lists. Reads the
// user's profile plus one item profile per tagged item — never scans
// other users. A user with no profile or no items gets an empty set.
NeighborSet neighbors_of(const ProfileStore& store, const std::string& user);

// Unions the neighbors' item lists and removes the items the user
// already has. Takes the user's profile by value rather than reading it
// again: the store reads issued here are neighbor profiles only.
CandidateSet candidate_items(const ProfileStore& store,
                             const UserProfile& user,
                             const NeighborSet& neighbors);

// Size of the per-user reduced matrix: rows = neighbors, columns =
// user's items plus candidates. Both dimensions are bounded by the
// global counts; the gap between them is the point of working per-user.
std::pair<std::size_t, std::size_t> reduced_matrix_footprint(
    const UserProfile& user, const NeighborSet& neighbors,
    const CandidateSet& candidates);

}  // namespace tagcf
