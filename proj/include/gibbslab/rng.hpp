// rng.hpp
// Counter-based random streams. Every stream is a pure function of a 64-bit
// key, so Monte Carlo results are independent of evaluation order and of the
// number of workers. Keys are derived from (seed, tag, mode/sample indices).
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace gibbslab {

namespace detail {
// SplitMix64 finalizer; a bijective 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace detail

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    return detail::mix64(a ^ (detail::mix64(b) + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2)));
}

// Key for a per-mode stream: seed, a role tag, and the frequency vector
// (zigzag-encoded so negative components hash distinctly).
inline std::uint64_t mode_stream_key(std::uint64_t seed, std::uint64_t tag,
                                     const std::array<int, 3>& n, int d) {
    std::uint64_t k = hash_combine(seed, tag);
    for (int i = 0; i < d; ++i) {
        const std::uint64_t z = static_cast<std::uint64_t>((n[i] << 1) ^ (n[i] >> 31));
        k = hash_combine(k, z + 1);
    }
    return k;
}

class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return detail::mix64(key_ + 0xD1B54A32D192ED03ull * ++ctr_); }

    // Uniform in (0,1); never returns 0.
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; draws two uniforms per call.
    double next_gaussian() {
        const double u1 = next_unit();
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Complex Gaussian with independent components of the given variance.
    std::complex<double> next_complex_gaussian(double varPerComponent) {
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1)) * std::sqrt(varPerComponent);
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

}  // namespace gibbslab
