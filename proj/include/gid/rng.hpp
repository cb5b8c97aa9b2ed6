#ifndef GID_RNG_HPP
#define GID_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace gid {

/// Deterministic random stream. All randomized routines in the library draw
/// from this wrapper (never from std distributions, whose output is not
/// pinned by the standard), so results are reproducible for a given seed
/// across platforms and standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(mix(seed)) {}

    /// Independent substream for worker/decomposition `index`.
    static Rng substream(uint64_t seed, uint64_t index) {
        return Rng(mix(seed) ^ mix(0x9e3779b97f4a7c15ULL + index));
    }

    uint64_t next_u64() { return gen_(); }

    /// Uniform integer in [0, bound) via Lemire rejection. bound > 0.
    uint64_t below(uint64_t bound) {
        __uint128_t m = (__uint128_t)next_u64() * bound;
        uint64_t lo = (uint64_t)m;
        if (lo < bound) {
            uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                m = (__uint128_t)next_u64() * bound;
                lo = (uint64_t)m;
            }
        }
        return (uint64_t)(m >> 64);
    }

    /// Uniform residue in [0, q).
    uint32_t residue(uint32_t q) { return (uint32_t)below(q); }

    /// Uniform nonzero residue in [1, q).
    uint32_t nonzero_residue(uint32_t q) { return 1u + (uint32_t)below(q - 1); }

    bool coin() { return next_u64() & 1u; }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = (size_t)below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    /// Random size-m subset of {0,..,n-1}, returned sorted.
    std::vector<size_t> subset(size_t n, size_t m);

private:
    static uint64_t mix(uint64_t z) {
        // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
};

} // namespace gid

#endif
