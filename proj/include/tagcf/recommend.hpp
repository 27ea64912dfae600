#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tagcf/scoring.hpp"

namespace tagcf {

// Final output for one user: candidate items with positive scores,
// best first, at most N of them. Never contains an item the user
// already tagged.
struct RecommendationList {
    std::string user_id;
    std::vector<std::pair<std::string, double>> entries;  // (item, score)
};

// The k neighbors with the highest rank values, ties broken by
// ascending id so runs are reproducible. Returns everyone when the
// context has fewer than k neighbors. Throws std::invalid_argument for
// k = 0.
std::vector<std::string> select_top_k_neighbors(const NeighborContext& ctx,
                                                std::size_t k);

// Mean over the top neighbors of (their weight for the item) x (their
// raw similarity to the user). Neighbors who never tagged the item
// contribute 0; under the binary scheme a tagger's weight is 1. Throws
// std::invalid_argument on an empty top list.
double score_item(const NeighborContext& ctx,
                  const std::vector<std::string>& top,
                  const std::string& item);

// Scores every candidate against the top-k neighbors and keeps the N
// best, ordered by score descending then item id ascending. Zero-score
// candidates are dropped — an item no top neighbor can vouch for is not
// a recommendation — so lists may run shorter than N. A user with no
// neighbors gets an empty list.
RecommendationList recommend_top_n(const NeighborContext& ctx, std::size_t k,
                                   std::size_t n);

}  // namespace tagcf
