#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "tagcf/profiles.hpp"

namespace tagcf {

// Identifies one profile in the store. User and item namespaces are
// disjoint even when ids collide textually ("42" the user vs "42" the
// movie).
struct ProfileKey {
    enum class Kind { kUser, kItem };

    Kind kind;
    std::string id;

    // The string the shard router hashes; also the on-disk line prefix.
    std::string routing_token() const {
        return (kind == Kind::kUser ? "user:" : "item:") + id;
    }

    friend bool operator==(const ProfileKey&, const ProfileKey&) = default;
    friend auto operator<=>(const ProfileKey&, const ProfileKey&) = default;
};

// Stable key → shard assignment. A fixed hash (not std::hash) keeps the
// routing identical across builds, which the file backend's layout
// depends on.
struct ShardMap {
    std::size_t shard_count;

    std::size_t route(const ProfileKey& key) const;
};

// Profiles sharded by key hash. Each shard has its own lock, so eval
// workers reading disjoint users rarely contend; profiles are handed
// out as shared_ptr<const> snapshots, so a reader is never invalidated
// by a concurrent put.
class ProfileStore {
public:
    explicit ProfileStore(std::size_t shard_count = 16);

    ProfileStore(ProfileStore&&) noexcept = default;
    ProfileStore& operator=(ProfileStore&&) noexcept = default;

    std::size_t shard_count() const { return shards_.size(); }
    std::size_t shard_of(const ProfileKey& key) const;

    // nullptr when absent.
    std::shared_ptr<const UserProfile> get_user(const std::string& id) const;
    std::shared_ptr<const ItemProfile> get_item(const std::string& id) const;
    bool contains(const ProfileKey& key) const;

    // Replaces the stored profile wholesale. apply_transaction is the
    // usual writer; these exist for it and for the loader.
    void put_user(UserProfile profile);
    void put_item(ItemProfile profile);

    std::size_t user_count() const;
    std::size_t item_count() const;

    // Sorted, for deterministic iteration.
    std::vector<std::string> user_ids() const;
    std::vector<std::string> item_ids() const;

    // Called on every get_user/get_item, hit or miss. Tests use it to
    // check which profiles a computation touched. Not synchronized:
    // install it before readers start.
    using ReadObserver = std::function<void(const ProfileKey&)>;
    void set_read_observer(ReadObserver observer) {
        observer_ = std::move(observer);
    }

    // One file per shard under dir, text format with a versioned header
    // line. load() rebuilds an identical store and throws
    // std::runtime_error on a missing shard file or malformed header.
    void save(const std::filesystem::path& dir) const;
    static ProfileStore load(const std::filesystem::path& dir);

private:
    struct Shard {
        mutable std::shared_mutex mutex;
        std::map<std::string, std::shared_ptr<const UserProfile>> users;
        std::map<std::string, std::shared_ptr<const ItemProfile>> items;
    };

    std::vector<std::unique_ptr<Shard>> shards_;
    ReadObserver observer_;
};

}  // namespace tagcf
