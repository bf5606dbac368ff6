#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace mlgs {

// splitmix64, used for seed derivation so that (base_seed, index) pairs give
// decorrelated streams without coordinating across threads.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // two rounds so consecutive indices don't share low-bit structure
    return splitmix64(splitmix64(base) ^ splitmix64(index * 0x9e3779b97f4a7c15ull + 1));
}

// mt19937_64 with a rejection-based bounded draw. std::uniform_int_distribution
// is implementation-defined, which would break byte-identical outputs across
// standard libraries; this wrapper keeps every consumer portable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, n), n >= 1
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) throw std::logic_error("next_below(0): walk has no legal move");
        // rejection on the top of the range; at most one extra draw in
        // expectation even for adversarial n
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    std::uint32_t next_index(std::size_t n) {
        return static_cast<std::uint32_t>(next_below(static_cast<std::uint64_t>(n)));
    }

    // uniform in [0, 1) with 53-bit resolution
    double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

} // namespace mlgs
