#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tagcf/eval.hpp"
#include "tagcf/ingest.hpp"

namespace tagcf {

// Everything a run can be configured with, CLI flags and defaults
// included. One struct so ingest and evaluate agree on what a
// configuration is.
struct RunConfig {
    std::string input_path;
    std::string output_path;
    std::string store_dir;

    FieldLayout layout;
    std::size_t min_taggers = 2;
    double test_fraction = 0.2;
    std::uint64_t seed = 42;

    double lambda = 0.5;
    std::vector<std::size_t> k_values = {5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
    std::size_t top_n = 10;
    std::vector<std::string> variant_names = {"basic", "weighted",
                                              "basic_trust", "weighted_trust"};
    ImportancePool pool = ImportancePool::kReduced;
    TrustDenominator trust_denominator = TrustDenominator::kCount;
    SimilarityMode similarity_mode = SimilarityMode::kMatrix;
    PrecisionDenominator precision_denominator = PrecisionDenominator::kTopN;

    std::size_t shard_count = 16;
    std::string store_backend = "file";  // or "memory"
    std::size_t jobs = 0;

    ScoringConfig scoring() const {
        ScoringConfig sc;
        sc.similarity_mode = similarity_mode;
        sc.pool = pool;
        sc.trust_denominator = trust_denominator;
        sc.fusion.lambda = lambda;
        return sc;
    }
};

// Flag-value spellings used by the CLI and the manifest.
std::string to_string(ImportancePool pool);
std::string to_string(TrustDenominator denominator);
std::string to_string(SimilarityMode mode);
std::string to_string(PrecisionDenominator denominator);
std::string to_string(FieldLayout::Header header);
ImportancePool pool_from_name(const std::string& name);
TrustDenominator trust_denominator_from_name(const std::string& name);
SimilarityMode similarity_mode_from_name(const std::string& name);
PrecisionDenominator precision_denominator_from_name(const std::string& name);
FieldLayout::Header header_mode_from_name(const std::string& name);

// Hash over the fields that determine the split and the profiles:
// column layout, header mode, min_taggers, test_fraction, seed.
// Evaluate refuses a store whose manifest hash disagrees with the
// effective config, because metrics against a mismatched split would be
// silently wrong.
std::string split_relevant_hash_hex(const RunConfig& config);

// What cmd_ingest leaves next to the store: enough to audit the run and
// to let evaluate check it is looking at the split it thinks it is.
struct Manifest {
    int format_version = 1;
    std::uint64_t seed = 0;
    double test_fraction = 0.0;
    std::size_t min_taggers = 0;
    FieldLayout layout;
    std::size_t shard_count = 0;
    std::string input_path;
    std::string config_hash;
    std::map<std::string, std::uint64_t> counts;
};

Manifest make_manifest(const RunConfig& config);
std::string to_json(const Manifest& manifest);
Manifest manifest_from_json(const std::string& text);

}  // namespace tagcf
