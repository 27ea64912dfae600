#pragma once

#include <cstdint>
#include <string_view>

namespace tagcf {

// FNV-1a, used for shard routing, seeded per-user shuffles and config
// hashes. Stable across platforms and standard libraries, unlike
// std::hash.
constexpr std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// splitmix64 PRNG. Small state, deterministic everywhere; the output
// stream for a given seed never depends on the standard library.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). Modulo bias is irrelevant for shuffling
    // small per-user transaction lists.
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

    // Uniform double in [0, 1).
    double next_double() { return (next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Fisher-Yates with our own PRNG. std::shuffle's permutation is
// implementation-defined, which would make splits differ between
// standard libraries.
template <typename Vec>
void deterministic_shuffle(Vec& v, SplitMix64& rng) {
    using std::swap;
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        swap(v[i - 1], v[j]);
    }
}

}  // namespace tagcf
