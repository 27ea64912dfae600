#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "tagcf/types.hpp"

namespace tagcf {

// Column positions in the tab-separated input. Defaults match the
// common user/item/tag/timestamp layout; timestamp_col < 0 means the
// column is absent.
struct FieldLayout {
    enum class Header { kAuto, kYes, kNo };

    std::size_t user_col = 0;
    std::size_t item_col = 1;
    std::size_t tag_col = 2;
    int timestamp_col = 3;
    Header header = Header::kAuto;
};

// Reads tab-separated tag assignments. Rows shorter than the layout or
// with an empty user/item/tag field raise ParseError with the 1-based
// line number. Tags are trimmed and lowercased so "Sci-Fi " and
// "sci-fi" count as the same tag. With Header::kAuto the first line is
// skipped when its user column is not numeric.
std::vector<TagAssignment> parse_tag_assignments(std::istream& in,
                                                 const FieldLayout& layout = {});

// Groups assignments into per-(user, item) transactions with sorted,
// de-duplicated tag lists.
Corpus group_transactions(const std::vector<TagAssignment>& rows);

// Drops every transaction whose item was tagged by fewer than
// min_taggers distinct users. Run before splitting so test items have a
// chance of appearing in some training profile.
Corpus filter_rare_items(const Corpus& corpus, std::size_t min_taggers = 2);

// Moves floor(n * test_fraction) of each user's transactions into the
// test corpus, chosen by a per-user shuffle seeded from (seed, user
// id). Users keep at least their remaining transactions in training;
// the two halves partition the input exactly.
SplitCorpus split_per_user(const Corpus& corpus, double test_fraction,
                           std::uint64_t seed);

// One user<TAB>item<TAB>tag line per tag, sorted. Re-parsing with a
// three-column layout and no header reproduces the corpus exactly.
void write_corpus_tsv(const Corpus& corpus, std::ostream& out);

}  // namespace tagcf
