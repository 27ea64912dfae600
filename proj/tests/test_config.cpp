#include <tagcf/config.hpp>

#include <doctest.h>

#include <stdexcept>
#include <string>

using namespace tagcf;

TEST_CASE("enum spellings round-trip") {
    for (auto pool : {ImportancePool::kReduced, ImportancePool::kGlobal})
        CHECK(pool_from_name(to_string(pool)) == pool);
    for (auto d : {TrustDenominator::kCount, TrustDenominator::kImportanceSum})
        CHECK(trust_denominator_from_name(to_string(d)) == d);
    for (auto m : {SimilarityMode::kMatrix, SimilarityMode::kStrict})
        CHECK(similarity_mode_from_name(to_string(m)) == m);
    for (auto p : {PrecisionDenominator::kTopN, PrecisionDenominator::kListLength})
        CHECK(precision_denominator_from_name(to_string(p)) == p);
    for (auto h : {FieldLayout::Header::kAuto, FieldLayout::Header::kYes,
                   FieldLayout::Header::kNo})
        CHECK(header_mode_from_name(to_string(h)) == h);

    CHECK(to_string(ImportancePool::kReduced) == "reduced");
    CHECK(to_string(TrustDenominator::kCount) == "count");
    CHECK(to_string(SimilarityMode::kMatrix) == "matrix");
    CHECK(to_string(PrecisionDenominator::kTopN) == "top-n");
    CHECK_THROWS_AS(pool_from_name("galactic"), std::invalid_argument);
    CHECK_THROWS_AS(similarity_mode_from_name(""), std::invalid_argument);
}

TEST_CASE("scoring conversion carries the model knobs") {
    RunConfig config;
    config.lambda = 0.7;
    config.pool = ImportancePool::kGlobal;
    config.trust_denominator = TrustDenominator::kImportanceSum;
    config.similarity_mode = SimilarityMode::kStrict;
    auto sc = config.scoring();
    CHECK(sc.fusion.lambda == 0.7);
    CHECK(sc.pool == ImportancePool::kGlobal);
    CHECK(sc.trust_denominator == TrustDenominator::kImportanceSum);
    CHECK(sc.similarity_mode == SimilarityMode::kStrict);
}

TEST_CASE("the split hash pins split-relevant fields only") {
    RunConfig base;
    const auto h = split_relevant_hash_hex(base);
    CHECK(h.size() == 16);
    CHECK(split_relevant_hash_hex(base) == h);

    RunConfig seeded = base;
    seeded.seed = 43;
    CHECK(split_relevant_hash_hex(seeded) != h);

    RunConfig fractioned = base;
    fractioned.test_fraction = 0.25;
    CHECK(split_relevant_hash_hex(fractioned) != h);

    RunConfig filtered = base;
    filtered.min_taggers = 3;
    CHECK(split_relevant_hash_hex(filtered) != h);

    RunConfig relaid = base;
    relaid.layout.tag_col = 5;
    CHECK(split_relevant_hash_hex(relaid) != h);

    RunConfig headered = base;
    headered.layout.header = FieldLayout::Header::kNo;
    CHECK(split_relevant_hash_hex(headered) != h);

    // Model knobs do not invalidate a store.
    RunConfig tuned = base;
    tuned.lambda = 0.9;
    tuned.k_values = {3};
    tuned.top_n = 3;
    tuned.pool = ImportancePool::kGlobal;
    tuned.jobs = 7;
    CHECK(split_relevant_hash_hex(tuned) == h);
}

TEST_CASE("manifests round-trip through json") {
    RunConfig config;
    config.input_path = "/data/tags.tsv";
    config.seed = 7;
    config.test_fraction = 0.3;
    config.min_taggers = 4;
    config.shard_count = 8;
    config.layout.timestamp_col = -1;
    auto manifest = make_manifest(config);
    manifest.counts["transactions"] = 1234;
    manifest.counts["raw_users"] = 56;

    auto text = to_json(manifest);
    auto parsed = manifest_from_json(text);
    CHECK(parsed.format_version == manifest.format_version);
    CHECK(parsed.seed == 7);
    CHECK(parsed.test_fraction == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(parsed.min_taggers == 4);
    CHECK(parsed.shard_count == 8);
    CHECK(parsed.input_path == "/data/tags.tsv");
    CHECK(parsed.config_hash == manifest.config_hash);
    CHECK(parsed.layout.user_col == config.layout.user_col);
    CHECK(parsed.layout.timestamp_col == -1);
    CHECK(parsed.layout.header == config.layout.header);
    CHECK(parsed.counts.at("transactions") == 1234);
    CHECK(parsed.counts.at("raw_users") == 56);
}

TEST_CASE("manifest hash matches the config it came from") {
    RunConfig config;
    config.seed = 99;
    auto manifest = make_manifest(config);
    CHECK(manifest.config_hash == split_relevant_hash_hex(config));
}

TEST_CASE("unsupported manifest versions are rejected") {
    RunConfig config;
    auto manifest = make_manifest(config);
    auto text = to_json(manifest);
    auto broken = text;
    auto pos = broken.find("\"format_version\": 1");
    REQUIRE(pos != std::string::npos);
    broken.replace(pos, std::string("\"format_version\": 1").size(),
                   "\"format_version\": 99");
    CHECK_THROWS_WITH_AS(manifest_from_json(broken),
                         "unsupported manifest version 99", std::runtime_error);
    CHECK_THROWS_AS(manifest_from_json("not json at all"), std::exception);
}
