#include "oracle.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {
namespace {

// freq(u, t): one use per item carrying the tag.
std::size_t freq(const ToyCorpus& c, const std::string& u,
                 const std::string& t) {
    std::size_t n = 0;
    for (const auto& [item, tags] : c.at(u))
        if (tags.contains(t)) ++n;
    return n;
}

std::size_t total_uses(const ToyCorpus& c, const std::string& u) {
    std::size_t n = 0;
    for (const auto& [item, tags] : c.at(u)) n += tags.size();
    return n;
}

// Distinct users who put tag t on item r.
std::size_t distinct_users_of_tag(const ToyCorpus& c, const std::string& r,
                                  const std::string& t) {
    std::size_t n = 0;
    for (const auto& [user, items] : c) {
        auto it = items.find(r);
        if (it != items.end() && it->second.contains(t)) ++n;
    }
    return n;
}

std::set<std::string> tags_on_item(const ToyCorpus& c, const std::string& r) {
    std::set<std::string> tags;
    for (const auto& [user, items] : c) {
        auto it = items.find(r);
        if (it != items.end()) tags.insert(it->second.begin(), it->second.end());
    }
    return tags;
}

std::set<std::string> taggers_of(const ToyCorpus& c, const std::string& r) {
    std::set<std::string> users;
    for (const auto& [user, items] : c)
        if (items.contains(r)) users.insert(user);
    return users;
}

double cell(const ToyCorpus& c, const std::string& u, const std::string& r,
            tagcf::WeightingScheme scheme) {
    return scheme == tagcf::WeightingScheme::kBinary ? 1.0 : item_weight(c, u, r);
}

}  // namespace

ToyCorpus from_corpus(const tagcf::Corpus& corpus) {
    ToyCorpus out;
    for (const auto& [user, txs] : corpus.by_user)
        for (const tagcf::Transaction& tx : txs)
            out[user][tx.item] = {tx.tags.begin(), tx.tags.end()};
    return out;
}

double tag_score(const ToyCorpus& c, const std::string& u,
                 const std::string& t) {
    return static_cast<double>(freq(c, u, t)) /
           static_cast<double>(total_uses(c, u));
}

double item_weight(const ToyCorpus& c, const std::string& u,
                   const std::string& r) {
    double w = 0.0;
    for (const std::string& t : c.at(u).at(r)) w += tag_score(c, u, t);
    return w;
}

double tag_information_value(const ToyCorpus& c, const std::string& r,
                             const std::string& t) {
    double total = 0.0;
    for (const std::string& other : tags_on_item(c, r))
        total += static_cast<double>(distinct_users_of_tag(c, r, other));
    return static_cast<double>(distinct_users_of_tag(c, r, t)) / total;
}

double transaction_trust(const ToyCorpus& c, const std::string& u,
                         const std::string& r) {
    const Tags& tags = c.at(u).at(r);
    double sum = 0.0;
    for (const std::string& t : tags) sum += tag_information_value(c, r, t);
    return sum / static_cast<double>(tags.size());
}

std::set<std::string> neighbors(const ToyCorpus& c, const std::string& u) {
    std::set<std::string> out;
    auto cu = c.find(u);
    if (cu == c.end()) return out;
    for (const auto& [v, items] : c) {
        if (v == u) continue;
        for (const auto& [item, tags] : cu->second)
            if (items.contains(item)) {
                out.insert(v);
                break;
            }
    }
    return out;
}

std::set<std::string> candidates(const ToyCorpus& c, const std::string& u) {
    std::set<std::string> out;
    auto cu = c.find(u);
    if (cu == c.end()) return out;
    for (const std::string& v : neighbors(c, u))
        for (const auto& [item, tags] : c.at(v))
            if (!cu->second.contains(item)) out.insert(item);
    return out;
}

double similarity(const ToyCorpus& c, const std::string& u,
                  const std::string& v, tagcf::WeightingScheme scheme,
                  tagcf::SimilarityMode mode) {
    std::set<std::string> common;
    for (const auto& [item, tags] : c.at(u))
        if (c.at(v).contains(item)) common.insert(item);
    if (common.empty()) return 0.0;

    double dot = 0.0;
    for (const std::string& r : common)
        dot += cell(c, u, r, scheme) * cell(c, v, r, scheme);

    double nu = 0.0, nv = 0.0;
    if (mode == tagcf::SimilarityMode::kStrict) {
        for (const std::string& r : common) {
            nu += cell(c, u, r, scheme) * cell(c, u, r, scheme);
            nv += cell(c, v, r, scheme) * cell(c, v, r, scheme);
        }
    } else {
        for (const auto& [r, tags] : c.at(u))
            nu += cell(c, u, r, scheme) * cell(c, u, r, scheme);
        for (const auto& [r, tags] : c.at(v))
            nv += cell(c, v, r, scheme) * cell(c, v, r, scheme);
    }
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

double importance(const ToyCorpus& c, const std::string& r,
                  const std::set<std::string>& pool) {
    const std::set<std::string> taggers = taggers_of(c, r);
    std::size_t hit = 0;
    for (const std::string& u : pool)
        if (taggers.contains(u)) ++hit;
    return static_cast<double>(hit) / static_cast<double>(pool.size());
}

double trust(const ToyCorpus& c, const std::string& n,
             const std::set<std::string>& pool,
             tagcf::TrustDenominator denominator) {
    double weighted = 0.0, importance_sum = 0.0;
    for (const auto& [r, tags] : c.at(n)) {
        const double imp = importance(c, r, pool);
        weighted += imp * transaction_trust(c, n, r);
        importance_sum += imp;
    }
    if (denominator == tagcf::TrustDenominator::kCount)
        return weighted / static_cast<double>(c.at(n).size());
    return importance_sum > 0.0 ? weighted / importance_sum : 0.0;
}

std::map<std::string, double> minmax(const std::map<std::string, double>& in) {
    double lo = in.begin()->second, hi = in.begin()->second;
    for (const auto& [k, v] : in) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    std::map<std::string, double> out;
    for (const auto& [k, v] : in)
        out[k] = hi == lo ? 1.0 : (v - lo) / (hi - lo);
    return out;
}

NeighborTable neighbor_table(const ToyCorpus& c, const std::string& u,
                             const tagcf::ScoringConfig& config) {
    NeighborTable table;
    const std::set<std::string> nbrs = neighbors(c, u);
    if (nbrs.empty()) return table;

    for (const std::string& v : nbrs)
        table.sim[v] =
            similarity(c, u, v, config.scheme, config.similarity_mode);
    table.value_n = minmax(table.sim);

    if (config.trust_enabled) {
        std::set<std::string> pool;
        if (config.pool == tagcf::ImportancePool::kReduced) {
            pool = nbrs;
            pool.insert(u);
        } else {
            for (const auto& [user, items] : c) pool.insert(user);
        }
        for (const std::string& v : nbrs)
            table.trust[v] = trust(c, v, pool, config.trust_denominator);
        table.t_n = minmax(table.trust);
        for (const std::string& v : nbrs)
            table.rank[v] = config.fusion.lambda * table.value_n.at(v) +
                            (1.0 - config.fusion.lambda) * table.t_n.at(v);
    } else {
        table.rank = table.value_n;
    }
    return table;
}

std::vector<std::string> top_k(const NeighborTable& table, std::size_t k) {
    std::vector<std::string> ids;
    for (const auto& [id, r] : table.rank) ids.push_back(id);
    std::sort(ids.begin(), ids.end(),
              [&](const std::string& a, const std::string& b) {
                  if (table.rank.at(a) != table.rank.at(b))
                      return table.rank.at(a) > table.rank.at(b);
                  return a < b;
              });
    if (ids.size() > k) ids.resize(k);
    return ids;
}

std::map<std::string, double> candidate_scores(
    const ToyCorpus& c, const std::string& u,
    const std::vector<std::string>& top, tagcf::WeightingScheme scheme,
    tagcf::SimilarityMode mode) {
    std::map<std::string, double> scores;
    for (const std::string& r : candidates(c, u)) {
        double sum = 0.0;
        for (const std::string& v : top) {
            if (!c.at(v).contains(r)) continue;
            sum += cell(c, v, r, scheme) * similarity(c, u, v, scheme, mode);
        }
        scores[r] = sum / static_cast<double>(top.size());
    }
    return scores;
}

std::vector<std::pair<std::string, double>> recommend(
    const ToyCorpus& c, const std::string& u,
    const tagcf::ScoringConfig& config, std::size_t k, std::size_t n) {
    std::vector<std::pair<std::string, double>> out;
    const NeighborTable table = neighbor_table(c, u, config);
    if (table.rank.empty()) return out;

    const std::vector<std::string> top = top_k(table, k);
    for (const auto& [r, score] :
         candidate_scores(c, u, top, config.scheme, config.similarity_mode))
        if (score > 0.0) out.emplace_back(r, score);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (out.size() > n) out.resize(n);
    return out;
}

std::vector<tagcf::ReportRow> run(
    const ToyCorpus& training, const tagcf::Corpus& testing,
    const std::vector<tagcf::ExperimentVariant>& variants,
    const std::vector<std::size_t>& k_values, std::size_t n,
    const tagcf::ScoringConfig& base,
    tagcf::PrecisionDenominator precision_denominator) {
    std::set<std::string> all_test_items;
    for (const auto& [user, txs] : testing.by_user)
        for (const tagcf::Transaction& tx : txs) all_test_items.insert(tx.item);

    std::vector<tagcf::ReportRow> rows;
    for (const tagcf::ExperimentVariant& variant : variants) {
        tagcf::ScoringConfig config = base;
        config.scheme = variant.scheme;
        config.trust_enabled = variant.trust_enabled;
        for (std::size_t k : k_values) {
            double recall_sum = 0.0, precision_sum = 0.0;
            std::size_t eligible = 0;
            std::set<std::string> covered;
            for (const auto& [user, txs] : testing.by_user) {
                std::set<std::string> test_items;
                for (const tagcf::Transaction& tx : txs)
                    test_items.insert(tx.item);
                if (test_items.empty()) continue;
                if (neighbors(training, user).empty()) continue;
                ++eligible;

                const auto recs = recommend(training, user, config, k, n);
                std::size_t hits = 0;
                for (const auto& [item, score] : recs) {
                    if (test_items.contains(item)) ++hits;
                    if (all_test_items.contains(item)) covered.insert(item);
                }
                recall_sum += static_cast<double>(hits) /
                              static_cast<double>(test_items.size());
                if (precision_denominator ==
                    tagcf::PrecisionDenominator::kTopN)
                    precision_sum +=
                        static_cast<double>(hits) / static_cast<double>(n);
                else if (!recs.empty())
                    precision_sum += static_cast<double>(hits) /
                                     static_cast<double>(recs.size());
            }
            tagcf::ReportRow row;
            row.variant = variant.name;
            row.k = k;
            row.users_evaluated = eligible;
            if (eligible > 0) {
                row.recall = recall_sum / static_cast<double>(eligible);
                row.precision = precision_sum / static_cast<double>(eligible);
            }
            if (!all_test_items.empty())
                row.coverage = static_cast<double>(covered.size()) /
                               static_cast<double>(all_test_items.size());
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace oracle
