#pragma once

#include <cstdint>

namespace ssm {

// Counter-based splittable generator: stream(seed, index) yields an
// independent deterministic sequence per index, so parallel trials can be
// reproduced regardless of thread count or scheduling.
class SplitRng {
public:
    SplitRng(std::uint64_t seed, std::uint64_t stream) {
        state_ = mix(seed ^ 0x9e3779b97f4a7c15ULL) ^ mix(stream + 0xbf58476d1ce4e5b9ULL);
        // burn a couple of outputs so low-entropy (seed, stream) pairs decorrelate
        next_u64();
        next_u64();
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        return next_u64() % n;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace ssm
