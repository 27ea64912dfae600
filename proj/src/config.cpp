#include "tagcf/config.hpp"

#include <json.hpp>
#include <stdexcept>

#include "tagcf/util.hpp"

namespace tagcf {

std::string to_string(ImportancePool pool) {
    return pool == ImportancePool::kReduced ? "reduced" : "global";
}

std::string to_string(TrustDenominator denominator) {
    return denominator == TrustDenominator::kCount ? "count"
                                                   : "importance-sum";
}

std::string to_string(SimilarityMode mode) {
    return mode == SimilarityMode::kMatrix ? "matrix" : "strict";
}

std::string to_string(PrecisionDenominator denominator) {
    return denominator == PrecisionDenominator::kTopN ? "top-n"
                                                      : "list-length";
}

std::string to_string(FieldLayout::Header header) {
    switch (header) {
        case FieldLayout::Header::kAuto: return "auto";
        case FieldLayout::Header::kYes: return "yes";
        case FieldLayout::Header::kNo: return "no";
    }
    return "auto";
}

namespace {

[[noreturn]] void bad_name(const char* what, const std::string& name) {
    throw std::invalid_argument(std::string("unknown ") + what + ": " + name);
}

}  // namespace

ImportancePool pool_from_name(const std::string& name) {
    if (name == "reduced") return ImportancePool::kReduced;
    if (name == "global") return ImportancePool::kGlobal;
    bad_name("importance pool", name);
}

TrustDenominator trust_denominator_from_name(const std::string& name) {
    if (name == "count") return TrustDenominator::kCount;
    if (name == "importance-sum") return TrustDenominator::kImportanceSum;
    bad_name("trust denominator", name);
}

SimilarityMode similarity_mode_from_name(const std::string& name) {
    if (name == "matrix") return SimilarityMode::kMatrix;
    if (name == "strict") return SimilarityMode::kStrict;
    bad_name("similarity mode", name);
}

PrecisionDenominator precision_denominator_from_name(const std::string& name) {
    if (name == "top-n") return PrecisionDenominator::kTopN;
    if (name == "list-length") return PrecisionDenominator::kListLength;
    bad_name("precision denominator", name);
}

FieldLayout::Header header_mode_from_name(const std::string& name) {
    if (name == "auto") return FieldLayout::Header::kAuto;
    if (name == "yes") return FieldLayout::Header::kYes;
    if (name == "no") return FieldLayout::Header::kNo;
    bad_name("header mode", name);
}

std::string split_relevant_hash_hex(const RunConfig& config) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu|%zu|%zu|%d|%s|%zu|%.9f|%llu",
                  config.layout.user_col, config.layout.item_col,
                  config.layout.tag_col, config.layout.timestamp_col,
                  to_string(config.layout.header).c_str(), config.min_taggers,
                  config.test_fraction,
                  static_cast<unsigned long long>(config.seed));
    char hex[24];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(buf)));
    return hex;
}

Manifest make_manifest(const RunConfig& config) {
    Manifest m;
    m.seed = config.seed;
    m.test_fraction = config.test_fraction;
    m.min_taggers = config.min_taggers;
    m.layout = config.layout;
    m.shard_count = config.shard_count;
    m.input_path = config.input_path;
    m.config_hash = split_relevant_hash_hex(config);
    return m;
}

std::string to_json(const Manifest& m) {
    nlohmann::json j;
    j["format_version"] = m.format_version;
    j["seed"] = m.seed;
    j["test_fraction"] = m.test_fraction;
    j["min_taggers"] = m.min_taggers;
    j["layout"] = {{"user_col", m.layout.user_col},
                   {"item_col", m.layout.item_col},
                   {"tag_col", m.layout.tag_col},
                   {"timestamp_col", m.layout.timestamp_col},
                   {"header", to_string(m.layout.header)}};
    j["shard_count"] = m.shard_count;
    j["input_path"] = m.input_path;
    j["config_hash"] = m.config_hash;
    j["counts"] = m.counts;
    return j.dump(2) + "\n";
}

Manifest manifest_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Manifest m;
    m.format_version = j.at("format_version").get<int>();
    if (m.format_version != 1)
        throw std::runtime_error("unsupported manifest version " +
                                 std::to_string(m.format_version));
    m.seed = j.at("seed").get<std::uint64_t>();
    m.test_fraction = j.at("test_fraction").get<double>();
    m.min_taggers = j.at("min_taggers").get<std::size_t>();
    const auto& layout = j.at("layout");
    m.layout.user_col = layout.at("user_col").get<std::size_t>();
    m.layout.item_col = layout.at("item_col").get<std::size_t>();
    m.layout.tag_col = layout.at("tag_col").get<std::size_t>();
    m.layout.timestamp_col = layout.at("timestamp_col").get<int>();
    m.layout.header = header_mode_from_name(layout.at("header").get<std::string>());
    m.shard_count = j.at("shard_count").get<std::size_t>();
    m.input_path = j.at("input_path").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.counts = j.at("counts").get<std::map<std::string, std::uint64_t>>();
    return m;
}

}  // namespace tagcf
