#ifndef EWB_RNG_HPP
#define EWB_RNG_HPP

#include <array>
#include <cstdint>

namespace ewb::stochastic {

// Purpose tag for a random stream. Streams derived from the same seed but
// different tags never share state, so e.g. audio dust noise cannot perturb
// bubble placement.
enum class StreamId : std::uint64_t {
    nucleation = 1,
    dust       = 2,
    frames     = 3,
};

// splitmix64 finalizer (Steele, Lea & Flood). Used for stream derivation and
// per-frame substream seeding.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// xoshiro256** (Blackman & Vigna, public domain), seeded through a splitmix64
// chain over (seed, stream id, substream index). Pure 64-bit integer state
// transitions, so the sequence is identical on every platform for a given
// (seed, stream, substream) triple.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, StreamId id, std::uint64_t substream = 0)
        : seed_(seed), id_(id) {
        std::uint64_t s = seed;
        s = mix64(s ^ (0x632BE59BD9B4E019ULL * (static_cast<std::uint64_t>(id) + 1)));
        s = mix64(s ^ (0xD1B54A32D192ED03ULL * (substream + 1)));
        for (auto& word : state_) {
            s += 0x9E3779B97F4A7C15ULL;
            word = mix64(s);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on the open interval (0, 1): ((x >> 11) + 0.5) * 2^-53.
    // Never hits an endpoint, which keeps inverse-CDF samples strictly inside
    // their domain.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) {
        return a + (b - a) * uniform01();
    }

    std::uint64_t seed() const noexcept { return seed_; }
    StreamId stream() const noexcept { return id_; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    std::uint64_t seed_ = 0;
    StreamId id_ = StreamId::nucleation;
};

} // namespace ewb::stochastic

#endif
