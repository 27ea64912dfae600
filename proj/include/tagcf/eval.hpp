#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tagcf/recommend.hpp"
#include "tagcf/types.hpp"

namespace tagcf {

enum class VariantId { kBasic, kWeighted, kBasicTrust, kWeightedTrust };

// One of the four experiment configurations: binary or item-weight
// cells, with or without trust in the neighbor ranking.
struct ExperimentVariant {
    VariantId id;
    std::string name;  // "basic", "weighted", "basic_trust", "weighted_trust"
    WeightingScheme scheme;
    bool trust_enabled;
};

ExperimentVariant make_variant(VariantId id);
std::vector<ExperimentVariant> all_variants();
// Accepts the four names above; throws std::invalid_argument otherwise.
ExperimentVariant variant_from_name(const std::string& name);

// Precision divisor: the fixed list budget N (penalizes lists that come
// up short), or the actual list length.
enum class PrecisionDenominator { kTopN, kListLength };

struct EvalConfig {
    // scheme and trust_enabled are overridden per variant; the rest
    // (similarity mode, pools, lambda) apply to every variant.
    ScoringConfig scoring;
    PrecisionDenominator precision_denominator = PrecisionDenominator::kTopN;
    std::size_t jobs = 0;  // 0 = one per hardware thread
};

struct ReportRow {
    std::string variant;
    std::size_t k = 0;
    double recall = 0.0;
    double precision = 0.0;
    double coverage = 0.0;
    std::size_t users_evaluated = 0;
};

struct EvaluationReport {
    std::vector<ReportRow> rows;
};

// Hit counting for one user: recall = hits / |test_items|, precision =
// hits / n (or / list length, by choice). test_items must be nonempty —
// users without test data are excluded before this point.
std::pair<double, double> recall_precision_at_n(
    const RecommendationList& recommendations,
    const std::set<std::string>& test_items, std::size_t n,
    PrecisionDenominator denominator = PrecisionDenominator::kTopN);

// Share of the distinct test-corpus items that at least one user's list
// contains. Throws std::invalid_argument on an empty test corpus.
double coverage(const std::vector<RecommendationList>& all_recommendations,
                const Corpus& test_corpus);

// The full sweep: one row per (variant, k), metrics averaged over users
// with a nonempty test set and at least one neighbor (the same user set
// for every variant, by construction). Per-user work fans out across
// config.jobs threads; results are reduced in a fixed order, so the
// report is identical at any parallelism degree. An empty test corpus
// yields rows with zero users and zero metrics.
EvaluationReport run_experiment(const Corpus& training, const Corpus& testing,
                                const std::vector<ExperimentVariant>& variants,
                                const std::vector<std::size_t>& k_values,
                                std::size_t n, const EvalConfig& config);

// Same sweep against profiles that are already built (e.g. loaded from
// a store directory).
EvaluationReport run_experiment_on_store(
    const ProfileStore& store, const Corpus& testing,
    const std::vector<ExperimentVariant>& variants,
    const std::vector<std::size_t>& k_values, std::size_t n,
    const EvalConfig& config);

// Header plus one line per row, floats at 6 decimals. Byte-identical
// for identical reports.
std::string to_csv(const EvaluationReport& report);

}  // namespace tagcf
