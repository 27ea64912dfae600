#include "tagcf/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "tagcf/profiles.hpp"

namespace tagcf {

ExperimentVariant make_variant(VariantId id) {
    switch (id) {
        case VariantId::kBasic:
            return {id, "basic", WeightingScheme::kBinary, false};
        case VariantId::kWeighted:
            return {id, "weighted", WeightingScheme::kItemWeight, false};
        case VariantId::kBasicTrust:
            return {id, "basic_trust", WeightingScheme::kBinary, true};
        case VariantId::kWeightedTrust:
            return {id, "weighted_trust", WeightingScheme::kItemWeight, true};
    }
    throw std::invalid_argument("unknown variant id");
}

std::vector<ExperimentVariant> all_variants() {
    return {make_variant(VariantId::kBasic), make_variant(VariantId::kWeighted),
            make_variant(VariantId::kBasicTrust),
            make_variant(VariantId::kWeightedTrust)};
}

ExperimentVariant variant_from_name(const std::string& name) {
    for (ExperimentVariant v : all_variants())
        if (v.name == name) return v;
    throw std::invalid_argument("unknown variant: " + name);
}

std::pair<double, double> recall_precision_at_n(
    const RecommendationList& recommendations,
    const std::set<std::string>& test_items, std::size_t n,
    PrecisionDenominator denominator) {
    std::size_t hits = 0;
    for (const auto& [item, score] : recommendations.entries)
        if (test_items.contains(item)) ++hits;

    const double recall =
        static_cast<double>(hits) / static_cast<double>(test_items.size());
    double precision = 0.0;
    if (denominator == PrecisionDenominator::kTopN) {
        precision = static_cast<double>(hits) / static_cast<double>(n);
    } else if (!recommendations.entries.empty()) {
        precision = static_cast<double>(hits) /
                    static_cast<double>(recommendations.entries.size());
    }
    return {recall, precision};
}

double coverage(const std::vector<RecommendationList>& all_recommendations,
                const Corpus& test_corpus) {
    const std::set<std::string> test_items = test_corpus.item_ids();
    if (test_items.empty())
        throw std::invalid_argument("coverage needs a nonempty test corpus");
    std::set<std::string> covered;
    for (const RecommendationList& list : all_recommendations)
        for (const auto& [item, score] : list.entries)
            if (test_items.contains(item)) covered.insert(item);
    return static_cast<double>(covered.size()) /
           static_cast<double>(test_items.size());
}

namespace {

// Metrics for one (user, variant, k) cell, plus the recommended items
// for the coverage union.
struct CellResult {
    double recall = 0.0;
    double precision = 0.0;
    std::vector<std::string> items;
};

struct UserResult {
    bool eligible = false;
    std::vector<std::vector<CellResult>> cells;  // [variant][sorted-k index]
};

// The per-user sweep. Neighbor ranks do not depend on k, so the top-k
// lists for increasing k are prefixes of one ordering, and candidate
// scores can be extended incrementally: when the top set grows, only
// the new neighbors' items gain contributions. The accumulation order
// (rank order, taggers only) is exactly score_item's, so the resulting
// scores are bit-identical to calling recommend_top_n at each k.
UserResult evaluate_user(const ProfileStore& store, const std::string& user,
                         const std::set<std::string>& test_items,
                         const std::vector<ExperimentVariant>& variants,
                         const std::vector<std::size_t>& sorted_ks,
                         std::size_t n, const EvalConfig& config,
                         bool need_trust) {
    UserResult result;
    NeighborhoodData data =
        collect_neighborhood(store, user, config.scoring, need_trust);
    if (data.neighbors.neighbors.empty()) return result;

    result.eligible = true;
    result.cells.resize(variants.size());
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
        ScoringConfig scoring = config.scoring;
        scoring.scheme = variants[vi].scheme;
        scoring.trust_enabled = variants[vi].trust_enabled;
        const NeighborContext ctx = assemble_context(data, scoring);

        const std::vector<std::string> order =
            select_top_k_neighbors(ctx, sorted_ks.back());

        std::vector<CellResult>& cells = result.cells[vi];
        cells.resize(sorted_ks.size());
        std::map<std::string, double> sums;  // candidate -> running score sum
        std::size_t prev = 0;
        for (std::size_t ki = 0; ki < sorted_ks.size(); ++ki) {
            const std::size_t take = std::min(sorted_ks[ki], order.size());
            for (std::size_t i = prev; i < take; ++i) {
                const UserProfile& prof = *ctx.neighbor_profiles.at(order[i]);
                const double sim = ctx.find(order[i])->similarity;
                for (const auto& [item, tags] : prof.items) {
                    if (!ctx.candidates.contains(item)) continue;
                    const double w = ctx.scheme == WeightingScheme::kBinary
                                         ? 1.0
                                         : item_weight(prof, item);
                    sums[item] += w * sim;
                }
            }
            prev = take;

            RecommendationList list{user, {}};
            list.entries.reserve(sums.size());
            for (const auto& [item, sum] : sums) {
                const double score = sum / static_cast<double>(take);
                if (score > 0.0) list.entries.emplace_back(item, score);
            }
            std::sort(list.entries.begin(), list.entries.end(),
                      [](const auto& a, const auto& b) {
                          if (a.second != b.second) return a.second > b.second;
                          return a.first < b.first;
                      });
            if (list.entries.size() > n) list.entries.resize(n);

            auto [recall, precision] = recall_precision_at_n(
                list, test_items, n, config.precision_denominator);
            CellResult& cell = cells[ki];
            cell.recall = recall;
            cell.precision = precision;
            cell.items.reserve(list.entries.size());
            for (const auto& [item, score] : list.entries)
                cell.items.push_back(item);
        }
    }
    return result;
}

}  // namespace

EvaluationReport run_experiment_on_store(
    const ProfileStore& store, const Corpus& testing,
    const std::vector<ExperimentVariant>& variants,
    const std::vector<std::size_t>& k_values, std::size_t n,
    const EvalConfig& config) {
    if (k_values.empty())
        throw std::invalid_argument("need at least one neighborhood size");
    for (std::size_t k : k_values)
        if (k == 0) throw std::invalid_argument("k must be at least 1");

    std::vector<std::size_t> sorted_ks = k_values;
    std::sort(sorted_ks.begin(), sorted_ks.end());
    sorted_ks.erase(std::unique(sorted_ks.begin(), sorted_ks.end()),
                    sorted_ks.end());

    bool need_trust = false;
    for (const ExperimentVariant& v : variants)
        need_trust = need_trust || v.trust_enabled;

    // Users with test data, in sorted order; workers fill slots by
    // index and the reduction below walks them in this fixed order, so
    // the result is independent of thread scheduling.
    std::vector<std::pair<std::string, std::set<std::string>>> users;
    users.reserve(testing.by_user.size());
    for (const auto& [user, txs] : testing.by_user) {
        std::set<std::string> items;
        for (const Transaction& tx : txs) items.insert(tx.item);
        if (!items.empty()) users.emplace_back(user, std::move(items));
    }

    std::vector<UserResult> results(users.size());
    std::size_t jobs = config.jobs ? config.jobs
                                   : std::max<std::size_t>(
                                         1, std::thread::hardware_concurrency());
    jobs = std::max<std::size_t>(1, std::min(jobs, users.size()));

    auto work = [&](std::size_t index) {
        results[index] = evaluate_user(store, users[index].first,
                                       users[index].second, variants,
                                       sorted_ks, n, config, need_trust);
    };
    if (jobs <= 1) {
        for (std::size_t i = 0; i < users.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (std::size_t t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                try {
                    for (std::size_t i = next.fetch_add(1); i < users.size();
                         i = next.fetch_add(1))
                        work(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        for (std::thread& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    const std::set<std::string> all_test_items = testing.item_ids();
    std::size_t eligible = 0;
    for (const UserResult& r : results)
        if (r.eligible) ++eligible;

    EvaluationReport report;
    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
        std::vector<double> recall_sum(sorted_ks.size(), 0.0);
        std::vector<double> precision_sum(sorted_ks.size(), 0.0);
        std::vector<std::set<std::string>> covered(sorted_ks.size());
        for (const UserResult& r : results) {
            if (!r.eligible) continue;
            for (std::size_t ki = 0; ki < sorted_ks.size(); ++ki) {
                const CellResult& cell = r.cells[vi][ki];
                recall_sum[ki] += cell.recall;
                precision_sum[ki] += cell.precision;
                for (const std::string& item : cell.items)
                    if (all_test_items.contains(item)) covered[ki].insert(item);
            }
        }
        for (std::size_t k : k_values) {
            const std::size_t ki = static_cast<std::size_t>(
                std::lower_bound(sorted_ks.begin(), sorted_ks.end(), k) -
                sorted_ks.begin());
            ReportRow row;
            row.variant = variants[vi].name;
            row.k = k;
            row.users_evaluated = eligible;
            if (eligible > 0) {
                row.recall = recall_sum[ki] / static_cast<double>(eligible);
                row.precision = precision_sum[ki] / static_cast<double>(eligible);
            }
            if (!all_test_items.empty())
                row.coverage = static_cast<double>(covered[ki].size()) /
                               static_cast<double>(all_test_items.size());
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

EvaluationReport run_experiment(const Corpus& training, const Corpus& testing,
                                const std::vector<ExperimentVariant>& variants,
                                const std::vector<std::size_t>& k_values,
                                std::size_t n, const EvalConfig& config) {
    const ProfileStore store = build_profiles(training);
    return run_experiment_on_store(store, testing, variants, k_values, n,
                                   config);
}

std::string to_csv(const EvaluationReport& report) {
    std::string out = "variant,k,recall,precision,coverage,users_evaluated\n";
    char buf[160];
    for (const ReportRow& row : report.rows) {
        std::snprintf(buf, sizeof buf, "%s,%zu,%.6f,%.6f,%.6f,%zu\n",
                      row.variant.c_str(), row.k, row.recall, row.precision,
                      row.coverage, row.users_evaluated);
        out += buf;
    }
    return out;
}

}  // namespace tagcf
