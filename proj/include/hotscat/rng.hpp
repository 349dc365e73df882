#ifndef HOTSCAT_RNG_HPP
#define HOTSCAT_RNG_HPP

#include <cstdint>

namespace hotscat {

// Seedable, splittable random stream based on the splitmix64 sequence.
// Contract: equal (seed, stream_id) pairs yield bit-identical sequences;
// distinct stream_ids give statistically independent streams, so every
// tracer and every replica can own a private stream without coordination.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : state_(derive_state(seed, stream_id)), seed_(seed), stream_id_(stream_id) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t next_u64() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // Uniform in [0,1) with 53 random mantissa bits.
    double next_u01() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0,1): the zero endpoint is resampled so that inverse-CDF
    // transforms never produce an infinite or zero variate.
    double next_open01() noexcept {
        double u = next_u01();
        while (u == 0.0) u = next_u01();
        return u;
    }

private:
    static std::uint64_t mix(std::uint64_t x) noexcept {
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static std::uint64_t derive_state(std::uint64_t seed, std::uint64_t stream_id) noexcept {
        // Two mixing rounds decorrelate neighbouring (seed, stream_id) pairs.
        std::uint64_t s = mix(seed + 0x9e3779b97f4a7c15ULL);
        s ^= mix(stream_id + 0x632be59bd9b4e019ULL);
        return mix(s + 0x9e3779b97f4a7c15ULL);
    }

    std::uint64_t state_;
    std::uint64_t seed_;
    std::uint64_t stream_id_;
};

} // namespace hotscat

#endif
