#include "tagcf/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <string>

#include "tagcf/util.hpp"

namespace tagcf {
namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find('\t', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return s;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
}

}  // namespace

std::vector<TagAssignment> parse_tag_assignments(std::istream& in,
                                                 const FieldLayout& layout) {
    std::vector<TagAssignment> rows;
    std::size_t min_fields = std::max(
        {layout.user_col, layout.item_col, layout.tag_col,
         layout.timestamp_col >= 0 ? static_cast<std::size_t>(layout.timestamp_col)
                                   : std::size_t{0}});
    ++min_fields;

    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> fields = split_tabs(line);
        if (first) {
            first = false;
            if (layout.header == FieldLayout::Header::kYes) continue;
            if (layout.header == FieldLayout::Header::kAuto &&
                (fields.size() <= layout.user_col ||
                 !all_digits(trim(fields[layout.user_col]))))
                continue;
        }
        if (fields.size() < min_fields)
            throw ParseError(line_no, "expected at least " +
                                          std::to_string(min_fields) +
                                          " tab-separated fields, got " +
                                          std::to_string(fields.size()));

        TagAssignment ta;
        ta.user = trim(fields[layout.user_col]);
        ta.item = trim(fields[layout.item_col]);
        ta.tag = lower(trim(fields[layout.tag_col]));
        if (ta.user.empty()) throw ParseError(line_no, "empty user field");
        if (ta.item.empty()) throw ParseError(line_no, "empty item field");
        if (ta.tag.empty()) throw ParseError(line_no, "empty tag field");
        if (layout.timestamp_col >= 0) {
            const std::string ts =
                trim(fields[static_cast<std::size_t>(layout.timestamp_col)]);
            try {
                ta.timestamp = ts.empty() ? 0 : std::stoll(ts);
            } catch (const std::exception&) {
                throw ParseError(line_no, "bad timestamp: " + ts);
            }
        }
        rows.push_back(std::move(ta));
    }
    return rows;
}

Corpus group_transactions(const std::vector<TagAssignment>& rows) {
    // (user, item) -> distinct tags; std::map/std::set keep the corpus
    // ordering independent of input order.
    std::map<std::string, std::map<std::string, std::set<std::string>>> grouped;
    for (const TagAssignment& ta : rows)
        grouped[ta.user][ta.item].insert(ta.tag);

    Corpus corpus;
    for (const auto& [user, items] : grouped) {
        std::vector<Transaction>& txs = corpus.by_user[user];
        txs.reserve(items.size());
        for (const auto& [item, tags] : items)
            txs.push_back({user, item, {tags.begin(), tags.end()}});
    }
    return corpus;
}

Corpus filter_rare_items(const Corpus& corpus, std::size_t min_taggers) {
    std::map<std::string, std::set<std::string>> taggers;
    for (const auto& [user, txs] : corpus.by_user)
        for (const Transaction& tx : txs) taggers[tx.item].insert(user);

    Corpus kept;
    for (const auto& [user, txs] : corpus.by_user) {
        std::vector<Transaction> keep;
        for (const Transaction& tx : txs)
            if (taggers[tx.item].size() >= min_taggers) keep.push_back(tx);
        if (!keep.empty()) kept.by_user[user] = std::move(keep);
    }
    return kept;
}

void write_corpus_tsv(const Corpus& corpus, std::ostream& out) {
    for (const auto& [user, txs] : corpus.by_user)
        for (const Transaction& tx : txs)
            for (const std::string& tag : tx.tags)
                out << user << '\t' << tx.item << '\t' << tag << '\n';
}

SplitCorpus split_per_user(const Corpus& corpus, double test_fraction,
                           std::uint64_t seed) {
    SplitCorpus out;
    for (const auto& [user, txs] : corpus.by_user) {
        std::vector<Transaction> shuffled = txs;
        // Seeding from the user id makes each user's draw independent
        // of every other user's presence in the corpus.
        SplitMix64 rng(seed ^ fnv1a64(user));
        deterministic_shuffle(shuffled, rng);

        const std::size_t n_test = static_cast<std::size_t>(
            static_cast<double>(shuffled.size()) * test_fraction);
        std::vector<Transaction> test(shuffled.begin(),
                                      shuffled.begin() + n_test);
        std::vector<Transaction> training(shuffled.begin() + n_test,
                                          shuffled.end());

        auto by_item = [](const Transaction& a, const Transaction& b) {
            return a.item < b.item;
        };
        std::sort(test.begin(), test.end(), by_item);
        std::sort(training.begin(), training.end(), by_item);
        if (!training.empty()) out.training.by_user[user] = std::move(training);
        if (!test.empty()) out.test.by_user[user] = std::move(test);
    }
    return out;
}

}  // namespace tagcf
