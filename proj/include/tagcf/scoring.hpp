#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tagcf/neighborhood.hpp"
#include "tagcf/store.hpp"

namespace tagcf {

// What a user-item matrix cell holds: 1/0 for the plain baseline, or
// the user's item weight for the tag-informed variants.
enum class WeightingScheme { kBinary, kItemWeight };

// Two readings of the similarity formula. kStrict restricts both the
// dot product and the norms to the common-item set, which pins every
// binary similarity (and every single-common-item pair) at exactly 1.
// kMatrix, the default for experiments, takes the cosine over the
// users' reduced-matrix rows, where each norm covers all of that user's
// items; that keeps the binary baseline informative.
enum class SimilarityMode { kMatrix, kStrict };

// Who counts in the resource-importance denominator: the users of the
// evaluating user's reduced matrix (neighbors plus the user), or every
// user in the store.
enum class ImportancePool { kReduced, kGlobal };

// Divisor for a neighbor's trust aggregate: their transaction count, or
// the sum of the importance weights (a true weighted average).
enum class TrustDenominator { kCount, kImportanceSum };

// lambda is the weight on normalized similarity when fusing with
// normalized trust; 1 - lambda goes to trust.
struct FusionConfig {
    double lambda = 0.5;
};

struct ScoringConfig {
    WeightingScheme scheme = WeightingScheme::kItemWeight;
    SimilarityMode similarity_mode = SimilarityMode::kMatrix;
    ImportancePool pool = ImportancePool::kReduced;
    TrustDenominator trust_denominator = TrustDenominator::kCount;
    FusionConfig fusion;
    // Off for the similarity-only variants; neighbors are then ranked
    // by normalized similarity alone, as if lambda were 1.
    bool trust_enabled = true;
};

// One neighbor as the ranker sees them: raw similarity and trust, their
// min-max normalized forms, and the fused rank that top-k selection
// sorts by. Item scoring later uses the RAW similarity.
struct NeighborScore {
    std::string id;
    double similarity = 0.0;
    double trust = 0.0;
    double value_n = 0.0;  // normalized similarity
    double t_n = 0.0;      // normalized trust
    double rank = 0.0;
};

// Everything recommendation needs about one user, computed once and
// valid for any k: scored neighbors (sorted by id), candidate items,
// and the neighbor profiles item scoring will consult.
struct NeighborContext {
    std::string user_id;
    std::shared_ptr<const UserProfile> user;
    WeightingScheme scheme = WeightingScheme::kItemWeight;
    std::vector<NeighborScore> neighbors;
    std::set<std::string> candidates;
    std::map<std::string, std::shared_ptr<const UserProfile>> neighbor_profiles;

    const NeighborScore* find(const std::string& neighbor_id) const;
};

// The per-user groundwork shared by every experiment variant:
// discovery, both schemes' similarities, and trust (when requested).
// Building this once and assembling per-variant contexts from it avoids
// recomputing trust — the expensive part — per variant.
struct NeighborhoodData {
    std::string user_id;
    std::shared_ptr<const UserProfile> user;
    NeighborSet neighbors;
    CandidateSet candidates;
    std::map<std::string, std::shared_ptr<const UserProfile>> neighbor_profiles;
    std::map<std::string, double> similarity_binary;
    std::map<std::string, double> similarity_weighted;
    std::map<std::string, double> trust;  // empty when not computed
};

// Cosine similarity of two users under the given scheme and mode. 0
// when they share no items; 1 for u against themselves (given at least
// one item).
double similarity(const UserProfile& u, const UserProfile& v,
                  WeightingScheme scheme, SimilarityMode mode);

// Store-level convenience; throws std::out_of_range if either profile
// is missing.
double similarity(const ProfileStore& store, const std::string& u,
                  const std::string& v, WeightingScheme scheme,
                  SimilarityMode mode);

// Fraction of the pool that tagged the item. Throws
// std::invalid_argument on an empty pool.
double resource_importance(const ItemProfile& item,
                           const std::set<std::string>& pool);

// Trust in a neighbor: their transaction trusts, weighted by the
// importance of the item each transaction touched, divided per the
// denominator choice. Throws std::invalid_argument when the neighbor
// has no transactions, std::out_of_range when their profile is missing.
double user_trust(const ProfileStore& store, const std::string& neighbor,
                  const std::set<std::string>& pool,
                  TrustDenominator denominator);

// Min-max over the map's values: max -> 1, min -> 0. When all values
// are equal every key maps to 1, so a uniformly scored neighborhood
// keeps its full weight in the fusion. Throws std::invalid_argument on
// an empty map.
std::map<std::string, double> normalize_minmax(
    const std::map<std::string, double>& values);

// lambda * value_n + (1 - lambda) * t_n.
double rank_value(double value_n, double t_n, const FusionConfig& fusion);

// Discovery plus raw scores for one user. with_trust controls whether
// the trust column is computed at all; skip it when only
// similarity-ranked variants will be assembled. config.scheme is
// ignored here (both schemes are computed).
NeighborhoodData collect_neighborhood(const ProfileStore& store,
                                      const std::string& user,
                                      const ScoringConfig& config,
                                      bool with_trust);

// Normalization, fusion and ordering for one variant, on shared
// groundwork. Requires data.trust to be present when
// config.trust_enabled.
NeighborContext assemble_context(const NeighborhoodData& data,
                                 const ScoringConfig& config);

// collect + assemble in one step, for single-variant callers.
NeighborContext build_neighbor_context(const ProfileStore& store,
                                       const std::string& user,
                                       const ScoringConfig& config);

}  // namespace tagcf
