#include "tagcf/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tagcf {
namespace {

double cell_value(const UserProfile& p, const std::string& item,
                  WeightingScheme scheme) {
    return scheme == WeightingScheme::kBinary ? 1.0 : item_weight(p, item);
}

// Sum of squared cell values over every item the user has — the row
// norm of the reduced matrix, since all of a user's items are columns.
double row_norm_squared(const UserProfile& p, WeightingScheme scheme) {
    if (scheme == WeightingScheme::kBinary)
        return static_cast<double>(p.items.size());
    double s = 0.0;
    for (const auto& [item, tags] : p.items) {
        double w = item_weight(p, item);
        s += w * w;
    }
    return s;
}

// Per-transaction trust computed against a precomputed tag-count total,
// so neighborhood trust doesn't rescan the item's tag table for every
// (neighbor, item) pair. Divides per tag, in the same order as the
// profile-level transaction_trust, so both paths agree to the last bit.
double transaction_trust_term(const ItemProfile& item,
                              const std::set<std::string>& tags,
                              double tag_count_total) {
    double s = 0.0;
    for (const std::string& tag : tags)
        s += static_cast<double>(item.tag_user_count.at(tag)) / tag_count_total;
    return s / static_cast<double>(tags.size());
}

}  // namespace

double similarity(const UserProfile& u, const UserProfile& v,
                  WeightingScheme scheme, SimilarityMode mode) {
    // Dot product over the common-item set; everything outside it is a
    // zero in one of the rows.
    double dot = 0.0, common_u = 0.0, common_v = 0.0;
    auto iu = u.items.begin();
    auto iv = v.items.begin();
    while (iu != u.items.end() && iv != v.items.end()) {
        if (iu->first < iv->first) {
            ++iu;
        } else if (iv->first < iu->first) {
            ++iv;
        } else {
            const double cu = cell_value(u, iu->first, scheme);
            const double cv = cell_value(v, iv->first, scheme);
            dot += cu * cv;
            common_u += cu * cu;
            common_v += cv * cv;
            ++iu;
            ++iv;
        }
    }
    if (dot == 0.0) return 0.0;

    const double nu =
        mode == SimilarityMode::kStrict ? common_u : row_norm_squared(u, scheme);
    const double nv =
        mode == SimilarityMode::kStrict ? common_v : row_norm_squared(v, scheme);
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

double similarity(const ProfileStore& store, const std::string& u,
                  const std::string& v, WeightingScheme scheme,
                  SimilarityMode mode) {
    auto pu = store.get_user(u);
    auto pv = store.get_user(v);
    if (!pu) throw std::out_of_range("no profile for user " + u);
    if (!pv) throw std::out_of_range("no profile for user " + v);
    return similarity(*pu, *pv, scheme, mode);
}

double resource_importance(const ItemProfile& item,
                           const std::set<std::string>& pool) {
    if (pool.empty())
        throw std::invalid_argument("resource importance needs a nonempty pool");
    std::size_t in_pool = 0;
    if (pool.size() < item.taggers.size()) {
        for (const std::string& user : pool)
            if (item.taggers.contains(user)) ++in_pool;
    } else {
        for (const auto& [user, tags] : item.taggers)
            if (pool.contains(user)) ++in_pool;
    }
    return static_cast<double>(in_pool) / static_cast<double>(pool.size());
}

double user_trust(const ProfileStore& store, const std::string& neighbor,
                  const std::set<std::string>& pool,
                  TrustDenominator denominator) {
    auto profile = store.get_user(neighbor);
    if (!profile) throw std::out_of_range("no profile for user " + neighbor);
    if (profile->items.empty())
        throw std::invalid_argument("user " + neighbor +
                                    " has no transactions to derive trust from");

    double weighted_sum = 0.0, importance_sum = 0.0;
    for (const auto& [item_id, tags] : profile->items) {
        auto item = store.get_item(item_id);
        if (!item)
            throw std::out_of_range("no profile for item " + item_id);
        const double imp = resource_importance(*item, pool);
        weighted_sum += imp * transaction_trust(*item, neighbor);
        importance_sum += imp;
    }
    if (denominator == TrustDenominator::kCount)
        return weighted_sum / static_cast<double>(profile->items.size());
    return importance_sum > 0.0 ? weighted_sum / importance_sum : 0.0;
}

std::map<std::string, double> normalize_minmax(
    const std::map<std::string, double>& values) {
    if (values.empty())
        throw std::invalid_argument("cannot normalize an empty value set");
    double lo = values.begin()->second, hi = values.begin()->second;
    for (const auto& [key, v] : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::map<std::string, double> out;
    if (hi == lo) {
        // A uniformly scored neighborhood carries full weight rather
        // than being zeroed out of the fusion.
        for (const auto& [key, v] : values) out[key] = 1.0;
        return out;
    }
    for (const auto& [key, v] : values) out[key] = (v - lo) / (hi - lo);
    return out;
}

double rank_value(double value_n, double t_n, const FusionConfig& fusion) {
    return fusion.lambda * value_n + (1.0 - fusion.lambda) * t_n;
}

NeighborhoodData collect_neighborhood(const ProfileStore& store,
                                      const std::string& user,
                                      const ScoringConfig& config,
                                      bool with_trust) {
    NeighborhoodData data;
    data.user_id = user;
    data.neighbors.user_id = user;
    data.candidates.user_id = user;
    data.user = store.get_user(user);
    if (!data.user) return data;

    data.neighbors = neighbors_of(store, user);
    data.candidates = candidate_items(store, *data.user, data.neighbors);

    for (const std::string& id : data.neighbors.neighbors) {
        auto profile = store.get_user(id);
        data.neighbor_profiles[id] = profile;
        data.similarity_binary[id] = similarity(
            *data.user, *profile, WeightingScheme::kBinary,
            config.similarity_mode);
        data.similarity_weighted[id] = similarity(
            *data.user, *profile, WeightingScheme::kItemWeight,
            config.similarity_mode);
    }
    if (!with_trust || data.neighbors.neighbors.empty()) return data;

    std::set<std::string> pool;
    if (config.pool == ImportancePool::kReduced) {
        pool = data.neighbors.neighbors;
        pool.insert(user);
    } else {
        auto ids = store.user_ids();
        pool.insert(ids.begin(), ids.end());
    }

    // Neighbors' items overlap heavily (that's what makes them
    // neighbors), so fetch each item profile and its importance once.
    // Every such item is either one of the user's own or a candidate.
    struct ItemData {
        std::shared_ptr<const ItemProfile> profile;
        double importance;
        double tag_count_total;
    };
    std::map<std::string, ItemData> item_cache;
    auto lookup = [&](const std::string& item_id) -> const ItemData& {
        auto it = item_cache.find(item_id);
        if (it == item_cache.end()) {
            auto profile = store.get_item(item_id);
            if (!profile)
                throw std::out_of_range("no profile for item " + item_id);
            double total = 0.0;
            for (const auto& [tag, users] : profile->tag_user_count)
                total += static_cast<double>(users);
            it = item_cache
                     .emplace(item_id,
                              ItemData{profile,
                                       resource_importance(*profile, pool),
                                       total})
                     .first;
        }
        return it->second;
    };

    for (const auto& [id, profile] : data.neighbor_profiles) {
        double weighted_sum = 0.0, importance_sum = 0.0;
        for (const auto& [item_id, tags] : profile->items) {
            const ItemData& item = lookup(item_id);
            weighted_sum +=
                item.importance *
                transaction_trust_term(*item.profile,
                                       item.profile->taggers.at(id),
                                       item.tag_count_total);
            importance_sum += item.importance;
        }
        if (config.trust_denominator == TrustDenominator::kCount)
            data.trust[id] =
                weighted_sum / static_cast<double>(profile->items.size());
        else
            data.trust[id] =
                importance_sum > 0.0 ? weighted_sum / importance_sum : 0.0;
    }
    return data;
}

NeighborContext assemble_context(const NeighborhoodData& data,
                                 const ScoringConfig& config) {
    NeighborContext ctx;
    ctx.user_id = data.user_id;
    ctx.user = data.user;
    ctx.scheme = config.scheme;
    ctx.candidates = data.candidates.candidates;
    ctx.neighbor_profiles = data.neighbor_profiles;
    if (data.neighbors.neighbors.empty()) return ctx;

    const auto& sims = config.scheme == WeightingScheme::kBinary
                           ? data.similarity_binary
                           : data.similarity_weighted;
    const auto value_n = normalize_minmax(sims);

    std::map<std::string, double> t_n;
    if (config.trust_enabled) {
        if (data.trust.empty())
            throw std::logic_error(
                "trust-enabled context assembled from data collected without "
                "trust");
        t_n = normalize_minmax(data.trust);
    }

    ctx.neighbors.reserve(sims.size());
    for (const auto& [id, sim] : sims) {
        NeighborScore score;
        score.id = id;
        score.similarity = sim;
        score.value_n = value_n.at(id);
        if (config.trust_enabled) {
            score.trust = data.trust.at(id);
            score.t_n = t_n.at(id);
            score.rank = rank_value(score.value_n, score.t_n, config.fusion);
        } else {
            score.rank = score.value_n;
        }
        ctx.neighbors.push_back(std::move(score));
    }
    return ctx;
}

NeighborContext build_neighbor_context(const ProfileStore& store,
                                       const std::string& user,
                                       const ScoringConfig& config) {
    return assemble_context(
        collect_neighborhood(store, user, config, config.trust_enabled),
        config);
}

const NeighborScore* NeighborContext::find(
    const std::string& neighbor_id) const {
    auto it = std::lower_bound(neighbors.begin(), neighbors.end(), neighbor_id,
                               [](const NeighborScore& s, const std::string& id) {
                                   return s.id < id;
                               });
    return it != neighbors.end() && it->id == neighbor_id ? &*it : nullptr;
}

}  // namespace tagcf
