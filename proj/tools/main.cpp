// Command-line front door: ingest a tag-assignment file into a profile
// store, run the four-variant evaluation sweep, print per-user
// recommendations, generate synthetic corpora, and reshape reports for
// gnuplot.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tagcf/config.hpp"
#include "tagcf/eval.hpp"
#include "tagcf/ingest.hpp"
#include "tagcf/profiles.hpp"
#include "tagcf/recommend.hpp"
#include "tagcf/scoring.hpp"
#include "tagcf/store.hpp"
#include "tagcf/synthetic.hpp"
#include "tagcf/types.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

// String-typed mirrors of the enum flags; converted after parsing.
struct FlagStrings {
    std::string header = "auto";
    std::string pool = "reduced";
    std::string trust_denominator = "count";
    std::string similarity_mode = "matrix";
    std::string precision_denominator = "top-n";
    std::string store_backend = "file";
};

void apply_flag_strings(tagcf::RunConfig& cfg, const FlagStrings& s) {
    cfg.layout.header = tagcf::header_mode_from_name(s.header);
    cfg.pool = tagcf::pool_from_name(s.pool);
    cfg.trust_denominator = tagcf::trust_denominator_from_name(s.trust_denominator);
    cfg.similarity_mode = tagcf::similarity_mode_from_name(s.similarity_mode);
    cfg.precision_denominator =
        tagcf::precision_denominator_from_name(s.precision_denominator);
    cfg.store_backend = s.store_backend;
}

std::vector<tagcf::TagAssignment> parse_input_file(const tagcf::RunConfig& cfg) {
    std::ifstream in(cfg.input_path);
    if (!in)
        throw std::runtime_error("cannot open input file: " + cfg.input_path);
    return tagcf::parse_tag_assignments(in, cfg.layout);
}

tagcf::Corpus load_corpus_tsv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    tagcf::FieldLayout layout;
    layout.timestamp_col = -1;
    layout.header = tagcf::FieldLayout::Header::kNo;
    return tagcf::group_transactions(tagcf::parse_tag_assignments(in, layout));
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::vector<tagcf::ExperimentVariant> variants_from_names(
    const std::vector<std::string>& names) {
    std::vector<tagcf::ExperimentVariant> out;
    out.reserve(names.size());
    for (const std::string& name : names)
        out.push_back(tagcf::variant_from_name(name));
    return out;
}

int run_ingest(tagcf::RunConfig cfg) {
    const std::vector<tagcf::TagAssignment> rows = parse_input_file(cfg);

    std::set<std::string> raw_users, raw_items, raw_tags;
    for (const tagcf::TagAssignment& row : rows) {
        raw_users.insert(row.user);
        raw_items.insert(row.item);
        raw_tags.insert(row.tag);
    }
    const tagcf::Corpus corpus = tagcf::group_transactions(rows);
    const tagcf::Corpus filtered =
        tagcf::filter_rare_items(corpus, cfg.min_taggers);
    const tagcf::SplitCorpus split =
        tagcf::split_per_user(filtered, cfg.test_fraction, cfg.seed);

    tagcf::Manifest manifest = tagcf::make_manifest(cfg);
    manifest.counts["raw_assignments"] = rows.size();
    manifest.counts["raw_users"] = raw_users.size();
    manifest.counts["raw_items"] = raw_items.size();
    manifest.counts["raw_tags"] = raw_tags.size();
    manifest.counts["transactions"] = corpus.transaction_count();
    manifest.counts["filtered_transactions"] = filtered.transaction_count();
    manifest.counts["filtered_users"] = filtered.by_user.size();
    manifest.counts["filtered_items"] = filtered.item_ids().size();
    manifest.counts["training_transactions"] = split.training.transaction_count();
    manifest.counts["test_transactions"] = split.test.transaction_count();

    if (rows.empty())
        std::cerr << "warning: input contained no tag assignments\n";

    if (cfg.store_backend == "memory") {
        // Dry run: build everything, persist nothing.
        tagcf::build_profiles(split.training, cfg.shard_count);
        std::cout << tagcf::to_json(manifest);
        return kExitOk;
    }

    const fs::path dir(cfg.store_dir);
    const tagcf::ProfileStore store =
        tagcf::build_profiles(split.training, cfg.shard_count);
    store.save(dir / "shards");
    {
        std::ofstream test_out(dir / "test.tsv", std::ios::trunc);
        if (!test_out)
            throw std::runtime_error("cannot write " +
                                     (dir / "test.tsv").string());
        tagcf::write_corpus_tsv(split.test, test_out);
    }
    write_text((dir / "manifest.json").string(), tagcf::to_json(manifest));

    std::cout << "ingested " << rows.size() << " assignments from "
              << raw_users.size() << " users, " << raw_items.size()
              << " items, " << raw_tags.size() << " tags\n"
              << "transactions: " << corpus.transaction_count() << " ("
              << filtered.transaction_count() << " after filtering), split "
              << split.training.transaction_count() << " training / "
              << split.test.transaction_count() << " test\n"
              << "store: " << (dir / "shards").string() << " ("
              << cfg.shard_count << " shards), manifest hash "
              << manifest.config_hash << "\n";
    return kExitOk;
}

// Split-relevant evaluate/recommend flags adopt the manifest's values
// unless explicitly set; after adoption the config hash must agree, or
// we would be scoring against a different split than the store holds.
int reconcile_with_manifest(tagcf::RunConfig& cfg, const tagcf::Manifest& m,
                            const CLI::App* cmd) {
    if (cmd->count("--seed") == 0) cfg.seed = m.seed;
    if (cmd->count("--test-fraction") == 0) cfg.test_fraction = m.test_fraction;
    if (cmd->count("--min-taggers") == 0) cfg.min_taggers = m.min_taggers;
    if (cmd->count("--user-col") == 0) cfg.layout.user_col = m.layout.user_col;
    if (cmd->count("--item-col") == 0) cfg.layout.item_col = m.layout.item_col;
    if (cmd->count("--tag-col") == 0) cfg.layout.tag_col = m.layout.tag_col;
    if (cmd->count("--timestamp-col") == 0)
        cfg.layout.timestamp_col = m.layout.timestamp_col;
    if (cmd->count("--header") == 0) cfg.layout.header = m.layout.header;

    const std::string effective = tagcf::split_relevant_hash_hex(cfg);
    if (effective != m.config_hash) {
        std::cerr << "error: config disagrees with the store's manifest on "
                     "split-relevant fields (manifest hash "
                  << m.config_hash << ", effective config hash " << effective
                  << "); re-ingest or drop the conflicting flags\n";
        return kExitConfig;
    }
    return kExitOk;
}

tagcf::Manifest read_manifest(const fs::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in)
        throw std::runtime_error("no manifest.json in " + dir.string() +
                                 " (not an ingested store?)");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return tagcf::manifest_from_json(buffer.str());
}

int run_evaluate(tagcf::RunConfig cfg, const CLI::App* cmd) {
    if (cfg.store_dir.empty() == cfg.input_path.empty()) {
        std::cerr << "error: evaluate needs exactly one of --store or --input\n";
        return kExitConfig;
    }

    tagcf::ProfileStore store(cfg.shard_count);
    tagcf::Corpus test_corpus;
    if (!cfg.store_dir.empty()) {
        if (cfg.store_backend == "memory") {
            std::cerr << "error: --store-backend memory cannot read a store "
                         "directory; pass --input instead\n";
            return kExitConfig;
        }
        const fs::path dir(cfg.store_dir);
        const tagcf::Manifest manifest = read_manifest(dir);
        if (int rc = reconcile_with_manifest(cfg, manifest, cmd); rc != kExitOk)
            return rc;
        store = tagcf::ProfileStore::load(dir / "shards");
        test_corpus = load_corpus_tsv(dir / "test.tsv");
    } else {
        if (cfg.store_backend == "file") {
            // Reading raw input implies the in-memory backend; only an
            // explicit contradiction is an error.
            if (cmd->count("--store-backend") > 0) {
                std::cerr << "error: --store-backend file requires --store\n";
                return kExitConfig;
            }
        }
        const tagcf::Corpus corpus =
            tagcf::group_transactions(parse_input_file(cfg));
        const tagcf::SplitCorpus split = tagcf::split_per_user(
            tagcf::filter_rare_items(corpus, cfg.min_taggers),
            cfg.test_fraction, cfg.seed);
        store = tagcf::build_profiles(split.training, cfg.shard_count);
        test_corpus = split.test;
    }

    tagcf::EvalConfig eval_config;
    eval_config.scoring = cfg.scoring();
    eval_config.precision_denominator = cfg.precision_denominator;
    eval_config.jobs = cfg.jobs;
    const tagcf::EvaluationReport report = tagcf::run_experiment_on_store(
        store, test_corpus, variants_from_names(cfg.variant_names),
        cfg.k_values, cfg.top_n, eval_config);
    write_text(cfg.output_path, tagcf::to_csv(report));
    return kExitOk;
}

int run_recommend(tagcf::RunConfig cfg, const std::string& user,
                  const std::string& variant_name, std::size_t k,
                  const CLI::App* cmd) {
    if (cfg.store_dir.empty() == cfg.input_path.empty()) {
        std::cerr << "error: recommend needs exactly one of --store or --input\n";
        return kExitConfig;
    }

    tagcf::ProfileStore store(cfg.shard_count);
    if (!cfg.store_dir.empty()) {
        const fs::path dir(cfg.store_dir);
        const tagcf::Manifest manifest = read_manifest(dir);
        if (int rc = reconcile_with_manifest(cfg, manifest, cmd); rc != kExitOk)
            return rc;
        store = tagcf::ProfileStore::load(dir / "shards");
    } else {
        const tagcf::Corpus corpus =
            tagcf::group_transactions(parse_input_file(cfg));
        const tagcf::SplitCorpus split = tagcf::split_per_user(
            tagcf::filter_rare_items(corpus, cfg.min_taggers),
            cfg.test_fraction, cfg.seed);
        store = tagcf::build_profiles(split.training, cfg.shard_count);
    }

    if (!store.get_user(user)) {
        std::cerr << "error: unknown user: " << user << "\n";
        return kExitConfig;
    }

    const tagcf::ExperimentVariant variant =
        tagcf::variant_from_name(variant_name);
    tagcf::ScoringConfig scoring = cfg.scoring();
    scoring.scheme = variant.scheme;
    scoring.trust_enabled = variant.trust_enabled;

    const tagcf::NeighborContext ctx =
        tagcf::build_neighbor_context(store, user, scoring);
    const tagcf::RecommendationList list =
        tagcf::recommend_top_n(ctx, k, cfg.top_n);

    std::string out;
    char buf[64];
    for (const auto& [item, score] : list.entries) {
        std::snprintf(buf, sizeof buf, "\t%.6f\n", score);
        out += item + buf;
    }
    write_text(cfg.output_path, out);
    return kExitOk;
}

int run_synth(const tagcf::SyntheticSpec& spec, const std::string& output) {
    const std::vector<tagcf::TagAssignment> rows =
        tagcf::synthesize_assignments(spec);
    std::string out = "user\titem\ttag\ttimestamp\n";
    for (const tagcf::TagAssignment& row : rows) {
        out += row.user;
        out += '\t';
        out += row.item;
        out += '\t';
        out += row.tag;
        out += '\t';
        out += std::to_string(row.timestamp);
        out += '\n';
    }
    write_text(output, out);
    return kExitOk;
}

// Reshape our CSV into gnuplot-friendly columns: one block per metric
// call, k in the first column, one column per variant.
int run_plot(const std::string& report_path, const std::string& metric,
             const std::string& output) {
    std::ifstream in(report_path);
    if (!in) throw std::runtime_error("cannot open " + report_path);

    std::string line;
    if (!std::getline(in, line) ||
        line != "variant,k,recall,precision,coverage,users_evaluated")
        throw std::runtime_error("not an evaluation report: " + report_path);

    const std::map<std::string, std::size_t> columns{
        {"recall", 2}, {"precision", 3}, {"coverage", 4}};
    const std::size_t column = columns.at(metric);

    std::vector<std::string> variant_order;
    std::map<std::string, std::map<std::size_t, std::string>> cells;
    std::set<std::size_t> ks;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 6)
            throw std::runtime_error("malformed report row: " + line);
        const std::string& variant = fields[0];
        const std::size_t k = std::stoul(fields[1]);
        if (!cells.contains(variant)) variant_order.push_back(variant);
        cells[variant][k] = fields[column];
        ks.insert(k);
    }

    std::string out = "# k";
    for (const std::string& v : variant_order) out += " " + v;
    out += "\n";
    for (std::size_t k : ks) {
        out += std::to_string(k);
        for (const std::string& v : variant_order) {
            auto it = cells[v].find(k);
            out += " ";
            out += it == cells[v].end() ? "nan" : it->second;
        }
        out += "\n";
    }
    write_text(output, out);
    return kExitOk;
}

void add_layout_flags(CLI::App* cmd, tagcf::RunConfig& cfg, FlagStrings& s) {
    cmd->add_option("--user-col", cfg.layout.user_col, "User id column index");
    cmd->add_option("--item-col", cfg.layout.item_col, "Item id column index");
    cmd->add_option("--tag-col", cfg.layout.tag_col, "Tag column index");
    cmd->add_option("--timestamp-col", cfg.layout.timestamp_col,
                    "Timestamp column index, -1 if absent");
    cmd->add_option("--header", s.header, "Header line handling")
        ->check(CLI::IsMember({"auto", "yes", "no"}));
}

void add_split_flags(CLI::App* cmd, tagcf::RunConfig& cfg) {
    cmd->add_option("--min-taggers", cfg.min_taggers,
                    "Drop items with fewer distinct taggers than this");
    cmd->add_option("--test-fraction", cfg.test_fraction,
                    "Per-user share of transactions held out for testing")
        ->check(CLI::Range(0.0, 0.999999));
    cmd->add_option("--seed", cfg.seed, "Split shuffle seed");
}

void add_model_flags(CLI::App* cmd, tagcf::RunConfig& cfg, FlagStrings& s) {
    cmd->add_option("--lambda", cfg.lambda,
                    "Weight on similarity vs. trust in neighbor ranking")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--importance-pool", s.pool,
                    "Users counted in resource importance")
        ->check(CLI::IsMember({"reduced", "global"}));
    cmd->add_option("--trust-denominator", s.trust_denominator,
                    "Divisor for the trust aggregate")
        ->check(CLI::IsMember({"count", "importance-sum"}));
    cmd->add_option("--similarity-mode", s.similarity_mode,
                    "Cosine over matrix rows or strictly over common items")
        ->check(CLI::IsMember({"matrix", "strict"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trust-aware collaborative filtering over social tags"};
    app.require_subcommand(1);

    tagcf::RunConfig cfg;
    FlagStrings flags;

    CLI::App* ingest = app.add_subcommand(
        "ingest", "Parse, filter, split, and build profiles into a store");
    ingest->add_option("--input", cfg.input_path, "Tag assignment TSV file")
        ->envname("TAGCF_INPUT")
        ->required();
    ingest->add_option("--store", cfg.store_dir, "Store directory to create");
    ingest->add_option("--shard-count", cfg.shard_count, "Profile shards")
        ->check(CLI::PositiveNumber);
    ingest->add_option("--store-backend", flags.store_backend,
                       "file persists shards; memory is a dry run")
        ->check(CLI::IsMember({"file", "memory"}));
    add_layout_flags(ingest, cfg, flags);
    add_split_flags(ingest, cfg);

    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "Run the variant sweep and emit a CSV report");
    evaluate->add_option("--store", cfg.store_dir, "Ingested store directory");
    evaluate->add_option("--input", cfg.input_path,
                         "Raw TSV to ingest in-memory instead of a store")
        ->envname("TAGCF_INPUT");
    evaluate
        ->add_option("--output", cfg.output_path, "Report path (default stdout)")
        ->envname("TAGCF_OUTPUT");
    evaluate->add_option("--k-values", cfg.k_values, "Neighborhood sizes")
        ->delimiter(',');
    evaluate->add_option("--top-n", cfg.top_n, "Recommendation list length")
        ->check(CLI::PositiveNumber);
    evaluate->add_option("--variants", cfg.variant_names, "Variants to run")
        ->delimiter(',')
        ->check(CLI::IsMember(
            {"basic", "weighted", "basic_trust", "weighted_trust"}));
    evaluate->add_option("--precision-denominator", flags.precision_denominator,
                         "Divide hits by the list budget or actual length")
        ->check(CLI::IsMember({"top-n", "list-length"}));
    evaluate->add_option("--jobs", cfg.jobs,
                         "Worker threads (0 = all hardware threads)");
    evaluate->add_option("--shard-count", cfg.shard_count, "Profile shards")
        ->check(CLI::PositiveNumber);
    evaluate->add_option("--store-backend", flags.store_backend,
                         "file reads --store; memory ingests --input")
        ->check(CLI::IsMember({"file", "memory"}));
    add_layout_flags(evaluate, cfg, flags);
    add_split_flags(evaluate, cfg);
    add_model_flags(evaluate, cfg, flags);

    CLI::App* recommend = app.add_subcommand(
        "recommend", "Print the top-N recommendations for one user");
    std::string user, variant_name = "weighted_trust";
    std::size_t recommend_k = 10;
    recommend->add_option("--store", cfg.store_dir, "Ingested store directory");
    recommend->add_option("--input", cfg.input_path,
                          "Raw TSV to ingest in-memory instead of a store")
        ->envname("TAGCF_INPUT");
    recommend
        ->add_option("--output", cfg.output_path, "Output path (default stdout)")
        ->envname("TAGCF_OUTPUT");
    recommend->add_option("--user", user, "User to recommend for")->required();
    recommend->add_option("--variant", variant_name, "Model variant")
        ->check(CLI::IsMember(
            {"basic", "weighted", "basic_trust", "weighted_trust"}));
    recommend->add_option("--k", recommend_k, "Neighborhood size")
        ->check(CLI::PositiveNumber);
    recommend->add_option("--top-n", cfg.top_n, "List length")
        ->check(CLI::PositiveNumber);
    recommend->add_option("--shard-count", cfg.shard_count, "Profile shards")
        ->check(CLI::PositiveNumber);
    add_layout_flags(recommend, cfg, flags);
    add_split_flags(recommend, cfg);
    add_model_flags(recommend, cfg, flags);

    CLI::App* synth = app.add_subcommand(
        "synth", "Generate a deterministic synthetic tagging corpus");
    tagcf::SyntheticSpec spec;
    synth->add_option("--users", spec.users)->check(CLI::PositiveNumber);
    synth->add_option("--items", spec.items)->check(CLI::PositiveNumber);
    synth->add_option("--genres", spec.genres)->check(CLI::PositiveNumber);
    synth->add_option("--tags-per-genre", spec.tags_per_genre)
        ->check(CLI::PositiveNumber);
    synth->add_option("--noise-tags", spec.noise_tags)
        ->check(CLI::PositiveNumber);
    synth->add_option("--blockbusters", spec.blockbusters);
    synth->add_option("--spam-items", spec.spam_items);
    synth->add_option("--noisy-fraction", spec.noisy_user_fraction)
        ->check(CLI::Range(0.0, 1.0));
    synth->add_option("--min-items", spec.min_items_per_user)
        ->check(CLI::PositiveNumber);
    synth->add_option("--max-items", spec.max_items_per_user)
        ->check(CLI::PositiveNumber);
    synth->add_option("--seed", spec.seed);
    synth->add_option("--output", cfg.output_path, "TSV path (default stdout)")
        ->envname("TAGCF_OUTPUT");

    CLI::App* plot = app.add_subcommand(
        "plot", "Reshape a report CSV into gnuplot columns");
    std::string metric = "recall", report_path;
    plot->add_option("report", report_path, "Evaluation report CSV")
        ->required();
    plot->add_option("--metric", metric)
        ->check(CLI::IsMember({"recall", "precision", "coverage"}));
    plot->add_option("--output", cfg.output_path, "Output path (default stdout)")
        ->envname("TAGCF_OUTPUT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        apply_flag_strings(cfg, flags);
        if (ingest->parsed()) {
            if (cfg.store_backend == "file" && cfg.store_dir.empty()) {
                std::cerr << "error: ingest needs --store (or --store-backend "
                             "memory for a dry run)\n";
                return kExitConfig;
            }
            return run_ingest(cfg);
        }
        if (evaluate->parsed()) return run_evaluate(cfg, evaluate);
        if (recommend->parsed())
            return run_recommend(cfg, user, variant_name, recommend_k,
                                 recommend);
        if (synth->parsed()) {
            if (spec.max_items_per_user < spec.min_items_per_user) {
                std::cerr << "error: --max-items must be >= --min-items\n";
                return kExitConfig;
            }
            return run_synth(spec, cfg.output_path);
        }
        if (plot->parsed()) return run_plot(report_path, metric, cfg.output_path);
    } catch (const tagcf::ParseError& e) {
        std::cerr << "error: " << cfg.input_path << ": " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}
