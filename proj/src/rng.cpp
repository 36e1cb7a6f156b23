#include "brownflow/rng.hpp"

#include <cmath>
#include <numbers>

namespace brownflow::rng {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;  // open interval (0, 1)
}

}  // namespace

Counter philox4x32(Counter c, Key k) {
    for (int r = 0; r < 10; ++r) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kW0;
        k[1] += kW1;
    }
    return c;
}

Stream::Stream(std::uint64_t seed, std::uint64_t trial) : seed_(seed), trial_(trial) {
    const std::uint64_t k = splitmix64(splitmix64(seed) ^ (trial * 0xD1B54A32D192ED03ull + 1));
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

void Stream::normals(std::uint64_t step, std::uint32_t purpose, double* out, std::size_t count) const {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const std::size_t blocks = (count + 1) / 2;
    for (std::size_t b = 0; b < blocks; ++b) {
        const Counter ctr{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(step),
                          static_cast<std::uint32_t>(step >> 32), purpose};
        const Counter r = philox4x32(ctr, key_);
        const double u1 = to_unit(r[0], r[1]);
        const double u2 = to_unit(r[2], r[3]);
        const double rad = std::sqrt(-2.0 * std::log(u1));
        out[2 * b] = rad * std::cos(two_pi * u2);
        if (2 * b + 1 < count) out[2 * b + 1] = rad * std::sin(two_pi * u2);
    }
}

}  // namespace brownflow::rng
