#include <tagcf/synthetic.hpp>

#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>

using namespace tagcf;

TEST_CASE("synthesis is deterministic for a fixed spec") {
    SyntheticSpec spec;
    spec.users = 40;
    spec.items = 60;
    spec.seed = 9;
    auto a = synthesize_assignments(spec);
    auto b = synthesize_assignments(spec);
    CHECK(a == b);

    spec.seed = 10;
    auto c = synthesize_assignments(spec);
    CHECK(a != c);
}

TEST_CASE("assignments come out sorted and within the id spaces") {
    SyntheticSpec spec;
    spec.users = 25;
    spec.items = 30;
    spec.seed = 4;
    auto rows = synthesize_assignments(spec);
    REQUIRE(!rows.empty());
    CHECK(std::is_sorted(rows.begin(), rows.end()));

    std::set<std::string> users, items;
    for (const auto& row : rows) {
        users.insert(row.user);
        items.insert(row.item);
        CHECK(row.user.starts_with("u"));
        CHECK(row.item.starts_with("m"));
        CHECK(row.tag.starts_with("t"));
    }
    CHECK(users.size() == spec.users);
    CHECK(items.size() <= spec.items);
}

TEST_CASE("per-user transaction counts respect the spec bounds") {
    SyntheticSpec spec;
    spec.users = 30;
    spec.items = 50;
    spec.min_items_per_user = 5;
    spec.max_items_per_user = 12;
    spec.seed = 77;
    auto corpus = synthesize(spec);
    CHECK(corpus.by_user.size() == spec.users);
    for (const auto& [user, txs] : corpus.by_user) {
        CHECK(txs.size() >= 1);
        CHECK(txs.size() <= spec.max_items_per_user);
        for (const auto& tx : txs) {
            CHECK(!tx.tags.empty());
            CHECK(tx.tags.size() <= 3);
        }
    }
}

TEST_CASE("the corpus leans on genre vocabulary") {
    // With few noise users, most tag mass should be genre tags; t0..t{g*p-1}
    // are genre vocabulary, the rest is noise.
    SyntheticSpec spec;
    spec.users = 120;
    spec.items = 150;
    spec.noisy_user_fraction = 0.1;
    spec.seed = 5;
    const std::size_t genre_tags = spec.genres * spec.tags_per_genre;
    auto rows = synthesize_assignments(spec);
    std::size_t genre_uses = 0;
    for (const auto& row : rows) {
        const std::size_t tag_index = std::stoul(row.tag.substr(1));
        if (tag_index < genre_tags) ++genre_uses;
    }
    CHECK(static_cast<double>(genre_uses) / static_cast<double>(rows.size()) >
          0.6);
}
