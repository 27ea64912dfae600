#include "tagcf/store.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "tagcf/util.hpp"

namespace tagcf {
namespace {

constexpr char kShardMagic[] = "tagcf-profile-shard";
constexpr int kFormatVersion = 1;

std::string shard_filename(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "shard-%04zu.tsv", index);
    return buf;
}

}  // namespace

std::size_t ShardMap::route(const ProfileKey& key) const {
    return fnv1a64(key.routing_token()) % shard_count;
}

ProfileStore::ProfileStore(std::size_t shard_count) {
    if (shard_count == 0)
        throw std::invalid_argument("shard count must be positive");
    shards_.reserve(shard_count);
    for (std::size_t i = 0; i < shard_count; ++i)
        shards_.push_back(std::make_unique<Shard>());
}

std::size_t ProfileStore::shard_of(const ProfileKey& key) const {
    return ShardMap{shards_.size()}.route(key);
}

std::shared_ptr<const UserProfile> ProfileStore::get_user(
    const std::string& id) const {
    ProfileKey key{ProfileKey::Kind::kUser, id};
    if (observer_) observer_(key);
    const Shard& shard = *shards_[shard_of(key)];
    std::shared_lock lock(shard.mutex);
    auto it = shard.users.find(id);
    return it == shard.users.end() ? nullptr : it->second;
}

std::shared_ptr<const ItemProfile> ProfileStore::get_item(
    const std::string& id) const {
    ProfileKey key{ProfileKey::Kind::kItem, id};
    if (observer_) observer_(key);
    const Shard& shard = *shards_[shard_of(key)];
    std::shared_lock lock(shard.mutex);
    auto it = shard.items.find(id);
    return it == shard.items.end() ? nullptr : it->second;
}

bool ProfileStore::contains(const ProfileKey& key) const {
    const Shard& shard = *shards_[shard_of(key)];
    std::shared_lock lock(shard.mutex);
    return key.kind == ProfileKey::Kind::kUser ? shard.users.contains(key.id)
                                               : shard.items.contains(key.id);
}

void ProfileStore::put_user(UserProfile profile) {
    ProfileKey key{ProfileKey::Kind::kUser, profile.id};
    Shard& shard = *shards_[shard_of(key)];
    auto ptr = std::make_shared<const UserProfile>(std::move(profile));
    std::unique_lock lock(shard.mutex);
    shard.users[ptr->id] = std::move(ptr);
}

void ProfileStore::put_item(ItemProfile profile) {
    ProfileKey key{ProfileKey::Kind::kItem, profile.id};
    Shard& shard = *shards_[shard_of(key)];
    auto ptr = std::make_shared<const ItemProfile>(std::move(profile));
    std::unique_lock lock(shard.mutex);
    shard.items[ptr->id] = std::move(ptr);
}

std::size_t ProfileStore::user_count() const {
    std::size_t n = 0;
    for (const auto& shard : shards_) {
        std::shared_lock lock(shard->mutex);
        n += shard->users.size();
    }
    return n;
}

std::size_t ProfileStore::item_count() const {
    std::size_t n = 0;
    for (const auto& shard : shards_) {
        std::shared_lock lock(shard->mutex);
        n += shard->items.size();
    }
    return n;
}

std::vector<std::string> ProfileStore::user_ids() const {
    std::vector<std::string> ids;
    for (const auto& shard : shards_) {
        std::shared_lock lock(shard->mutex);
        for (const auto& [id, profile] : shard->users) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<std::string> ProfileStore::item_ids() const {
    std::vector<std::string> ids;
    for (const auto& shard : shards_) {
        std::shared_lock lock(shard->mutex);
        for (const auto& [id, profile] : shard->items) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

void ProfileStore::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < shards_.size(); ++i) {
        const Shard& shard = *shards_[i];
        std::shared_lock lock(shard.mutex);

        // Shard maps are keyed by id, but the file interleaves both
        // kinds ordered by routing token so rewrites are byte-stable.
        std::map<std::string, std::string> lines;
        for (const auto& [id, profile] : shard.users)
            lines["user:" + id] = to_json(*profile);
        for (const auto& [id, profile] : shard.items)
            lines["item:" + id] = to_json(*profile);

        const std::filesystem::path path = dir / shard_filename(i);
        std::ofstream out(path, std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
        out << kShardMagic << '\t' << kFormatVersion << '\t' << i << '\t'
            << shards_.size() << '\n';
        for (const auto& [token, json] : lines)
            out << token << '\t' << json << '\n';
        if (!out.flush())
            throw std::runtime_error("short write to " + path.string());
    }
}

ProfileStore ProfileStore::load(const std::filesystem::path& dir) {
    // The first shard's header tells us how many to expect.
    const std::filesystem::path first = dir / shard_filename(0);
    std::ifstream probe(first);
    if (!probe)
        throw std::runtime_error("cannot open " + first.string());
    std::string header;
    std::getline(probe, header);
    probe.close();

    std::istringstream hs(header);
    std::string magic;
    int version = 0;
    std::size_t index = 0, count = 0;
    if (!(hs >> magic >> version >> index >> count) || magic != kShardMagic)
        throw std::runtime_error("bad shard header in " + first.string());
    if (version != kFormatVersion)
        throw std::runtime_error("unsupported shard format version " +
                                 std::to_string(version));
    if (count == 0)
        throw std::runtime_error("shard header declares zero shards");

    ProfileStore store(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::filesystem::path path = dir / shard_filename(i);
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("missing shard file " + path.string());
        std::string line;
        std::getline(in, line);
        std::istringstream shs(line);
        std::size_t file_index = 0, file_count = 0;
        if (!(shs >> magic >> version >> file_index >> file_count) ||
            magic != kShardMagic || version != kFormatVersion ||
            file_index != i || file_count != count)
            throw std::runtime_error("bad shard header in " + path.string());

        std::size_t line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            std::size_t tab = line.find('\t');
            if (tab == std::string::npos)
                throw std::runtime_error("malformed record at " +
                                         path.string() + ":" +
                                         std::to_string(line_no));
            std::string token = line.substr(0, tab);
            std::string json = line.substr(tab + 1);
            if (token.starts_with("user:")) {
                store.put_user(user_profile_from_json(json));
            } else if (token.starts_with("item:")) {
                store.put_item(item_profile_from_json(json));
            } else {
                throw std::runtime_error("unknown record kind at " +
                                         path.string() + ":" +
                                         std::to_string(line_no));
            }
        }
    }
    return store;
}

}  // namespace tagcf
