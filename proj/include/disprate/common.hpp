#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace disprate {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Thrown when a quadrature grid is too coarse for the requested evaluation.
struct resolution_error : std::runtime_error {
    explicit resolution_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a constrained construction (bump normalization, c0 search)
// has no solution in its admissible range.
struct calibration_error : std::runtime_error {
    explicit calibration_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Deterministic pairwise summation. Fixed reduction tree, independent of
// thread count, so every norm/integral is bit-reproducible per input.
template <typename T>
T pairwise_sum(const T* data, std::size_t n) {
    if (n <= 32) {
        T acc{};
        for (std::size_t i = 0; i < n; ++i) acc += data[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v.data(), v.size());
}

// splitmix64: seed mixer for deriving independent per-trial streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
    std::uint64_t s = base ^ (0x9e3779b97f4a7c15ULL * (stream + 1)) ^ (0xc2b2ae3d27d4eb4fULL * (index + 1));
    splitmix64(s);
    return splitmix64(s);
}

}  // namespace disprate
