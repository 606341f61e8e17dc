#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace seasearch {

using Rng = std::mt19937_64;

/// Named per-subsystem random streams derived from one root seed.
///
/// Each stream's seed depends only on (root, name), so adding or removing a
/// consumer never shifts the draws of another subsystem.
class RngStreams {
public:
    explicit RngStreams(std::uint64_t root) : root_(root) {}

    std::uint64_t root() const { return root_; }

    Rng stream(std::string_view name) const { return Rng(derive_seed(root_, name)); }

    static std::uint64_t derive_seed(std::uint64_t root, std::string_view name)
    {
        // FNV-1a over the name, mixed with the root through splitmix64.
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return splitmix64(root ^ splitmix64(h));
    }

    static std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t root_;
};

} // namespace seasearch
