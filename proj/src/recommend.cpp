#include "tagcf/recommend.hpp"

#include <algorithm>
#include <stdexcept>

namespace tagcf {

std::vector<std::string> select_top_k_neighbors(const NeighborContext& ctx,
                                                std::size_t k) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");

    std::vector<const NeighborScore*> order;
    order.reserve(ctx.neighbors.size());
    for (const NeighborScore& s : ctx.neighbors) order.push_back(&s);

    auto better = [](const NeighborScore* a, const NeighborScore* b) {
        if (a->rank != b->rank) return a->rank > b->rank;
        return a->id < b->id;
    };
    if (k < order.size()) {
        std::partial_sort(order.begin(), order.begin() + k, order.end(),
                          better);
        order.resize(k);
    } else {
        std::sort(order.begin(), order.end(), better);
    }

    std::vector<std::string> ids;
    ids.reserve(order.size());
    for (const NeighborScore* s : order) ids.push_back(s->id);
    return ids;
}

double score_item(const NeighborContext& ctx,
                  const std::vector<std::string>& top,
                  const std::string& item) {
    if (top.empty())
        throw std::invalid_argument("cannot score against an empty top list");

    double sum = 0.0;
    for (const std::string& id : top) {
        const auto& profile = ctx.neighbor_profiles.at(id);
        if (!profile->has_item(item)) continue;
        const double weight = ctx.scheme == WeightingScheme::kBinary
                                  ? 1.0
                                  : item_weight(*profile, item);
        sum += weight * ctx.find(id)->similarity;
    }
    return sum / static_cast<double>(top.size());
}

RecommendationList recommend_top_n(const NeighborContext& ctx, std::size_t k,
                                   std::size_t n) {
    RecommendationList list{ctx.user_id, {}};
    if (ctx.neighbors.empty()) return list;

    const std::vector<std::string> top = select_top_k_neighbors(ctx, k);
    for (const std::string& item : ctx.candidates) {
        const double score = score_item(ctx, top, item);
        if (score > 0.0) list.entries.emplace_back(item, score);
    }
    std::sort(list.entries.begin(), list.entries.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second > b.second;
                  return a.first < b.first;
              });
    if (list.entries.size() > n) list.entries.resize(n);
    return list;
}

}  // namespace tagcf
