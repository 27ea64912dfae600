#include "tagcf/profiles.hpp"

#include <json.hpp>

#include "tagcf/store.hpp"

namespace tagcf {

double tag_score(const UserProfile& user, const std::string& tag) {
    auto it = user.tag_freq.find(tag);
    if (it == user.tag_freq.end() || user.total_tag_uses == 0)
        throw std::out_of_range("user " + user.id + " never used tag " + tag);
    return static_cast<double>(it->second) /
           static_cast<double>(user.total_tag_uses);
}

double item_weight(const UserProfile& user, const std::string& item) {
    auto it = user.items.find(item);
    if (it == user.items.end())
        throw std::out_of_range("user " + user.id + " never tagged item " +
                                item);
    double w = 0.0;
    for (const std::string& tag : it->second) w += tag_score(user, tag);
    return w;
}

double tag_information_value(const ItemProfile& item, const std::string& tag) {
    auto it = item.tag_user_count.find(tag);
    if (it == item.tag_user_count.end())
        throw std::out_of_range("tag " + tag + " never used on item " +
                                item.id);
    std::uint64_t total = 0;
    for (const auto& [t, users] : item.tag_user_count) total += users;
    return static_cast<double>(it->second) / static_cast<double>(total);
}

double transaction_trust(const ItemProfile& item, const std::string& user) {
    auto it = item.taggers.find(user);
    if (it == item.taggers.end())
        throw std::out_of_range("user " + user + " never tagged item " +
                                item.id);
    double sum = 0.0;
    for (const std::string& tag : it->second)
        sum += tag_information_value(item, tag);
    return sum / static_cast<double>(it->second.size());
}

void apply_transaction(ProfileStore& store, const Transaction& tx) {
    UserProfile user;
    if (auto existing = store.get_user(tx.user)) user = *existing;
    user.id = tx.user;
    if (user.has_item(tx.item)) throw DuplicateTransaction(tx.user, tx.item);

    std::set<std::string>& item_tags = user.items[tx.item];
    for (const std::string& tag : tx.tags) {
        item_tags.insert(tag);
        ++user.tag_freq[tag];
        ++user.total_tag_uses;
    }

    ItemProfile item;
    if (auto existing = store.get_item(tx.item)) item = *existing;
    item.id = tx.item;
    std::set<std::string>& user_tags = item.taggers[tx.user];
    for (const std::string& tag : tx.tags) {
        // Distinct-user counts: bump only the first time this user
        // attaches this tag to this item.
        if (user_tags.insert(tag).second) ++item.tag_user_count[tag];
    }

    store.put_user(std::move(user));
    store.put_item(std::move(item));
}

ProfileStore build_profiles(const Corpus& corpus, std::size_t shard_count) {
    ProfileStore store(shard_count);
    for (const auto& [user, txs] : corpus.by_user)
        for (const Transaction& tx : txs) apply_transaction(store, tx);
    return store;
}

namespace {

using nlohmann::json;

json tags_by_key(const std::map<std::string, std::set<std::string>>& m) {
    json out = json::object();
    for (const auto& [key, tags] : m) out[key] = tags;
    return out;
}

std::map<std::string, std::set<std::string>> tags_by_key(const json& j) {
    std::map<std::string, std::set<std::string>> out;
    for (const auto& [key, tags] : j.items())
        out[key] = tags.get<std::set<std::string>>();
    return out;
}

}  // namespace

std::string to_json(const UserProfile& user) {
    json j;
    j["id"] = user.id;
    j["tag_freq"] = user.tag_freq;
    j["items"] = tags_by_key(user.items);
    j["total_tag_uses"] = user.total_tag_uses;
    return j.dump();
}

std::string to_json(const ItemProfile& item) {
    json j;
    j["id"] = item.id;
    j["taggers"] = tags_by_key(item.taggers);
    j["tag_user_count"] = item.tag_user_count;
    return j.dump();
}

UserProfile user_profile_from_json(const std::string& text) {
    json j = json::parse(text);
    UserProfile user;
    user.id = j.at("id").get<std::string>();
    user.tag_freq = j.at("tag_freq").get<std::map<std::string, std::uint64_t>>();
    user.items = tags_by_key(j.at("items"));
    user.total_tag_uses = j.at("total_tag_uses").get<std::uint64_t>();
    return user;
}

ItemProfile item_profile_from_json(const std::string& text) {
    json j = json::parse(text);
    ItemProfile item;
    item.id = j.at("id").get<std::string>();
    item.taggers = tags_by_key(j.at("taggers"));
    item.tag_user_count =
        j.at("tag_user_count").get<std::map<std::string, std::uint64_t>>();
    return item;
}

}  // namespace tagcf
