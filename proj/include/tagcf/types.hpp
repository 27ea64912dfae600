#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tagcf {

// One row of the input: user u attached tag t to item r. Timestamp is
// optional in the input format and unused by the models, but kept so
// ingested data can round-trip.
struct TagAssignment {
    std::string user;
    std::string item;
    std::string tag;
    std::int64_t timestamp = 0;

    friend bool operator==(const TagAssignment&, const TagAssignment&) = default;
    friend auto operator<=>(const TagAssignment&, const TagAssignment&) = default;
};

// All tags one user put on one item. This is the unit the evaluation
// split works on: an item either belongs to a user's training set or
// their test set, never both.
struct Transaction {
    std::string user;
    std::string item;
    std::vector<std::string> tags;  // sorted, distinct

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

// A corpus is every transaction, grouped per user and ordered by item
// id. std::map keeps iteration deterministic.
struct Corpus {
    std::map<std::string, std::vector<Transaction>> by_user;

    std::size_t transaction_count() const {
        std::size_t n = 0;
        for (const auto& [u, txs] : by_user) n += txs.size();
        return n;
    }

    std::set<std::string> item_ids() const {
        std::set<std::string> out;
        for (const auto& [u, txs] : by_user)
            for (const auto& tx : txs) out.insert(tx.item);
        return out;
    }
};

// Training/test halves of a corpus after the per-user split.
struct SplitCorpus {
    Corpus training;
    Corpus test;
};

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_number(line) {}
    std::size_t line_number;
};

struct DuplicateTransaction : std::runtime_error {
    DuplicateTransaction(const std::string& user, const std::string& item)
        : std::runtime_error("transaction already applied: user " + user +
                             ", item " + item) {}
};

}  // namespace tagcf
