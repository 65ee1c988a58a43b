#pragma once

#include <cstdint>

namespace rustseg {

// Minimal PCG32 (XSH-RR). Fixed algorithm so shuffles and synthetic data are
// byte-identical across platforms.
class Pcg32 {
public:
    explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0xda3e39cb94b95bdbULL) {
        state_ = 0;
        inc_ = (stream << 1) | 1u;
        next();
        state_ += seed;
        next();
    }

    std::uint32_t next() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18) ^ old) >> 27);
        std::uint32_t rot = static_cast<std::uint32_t>(old >> 59);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    // Uniform in [0, n). Multiplicative reduction; deterministic everywhere.
    std::uint32_t bounded(std::uint32_t n) {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(next()) * n) >> 32);
    }

    // Uniform integer in [lo, hi] inclusive.
    int range(int lo, int hi) {
        return lo + static_cast<int>(bounded(static_cast<std::uint32_t>(hi - lo + 1)));
    }

    // Uniform in [0, 1).
    double unit() { return next() * (1.0 / 4294967296.0); }

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

}  // namespace rustseg
