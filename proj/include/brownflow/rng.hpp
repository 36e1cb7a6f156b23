#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace brownflow::rng {

std::uint64_t splitmix64(std::uint64_t x);

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

// Philox4x32 with 10 rounds (Salmon et al., SC'11).
Counter philox4x32(Counter ctr, Key key);

// Purpose tags keep the draws of different increments apart.
enum Purpose : std::uint32_t {
    kIncrementA = 1,
    kIncrementB = 2,
    kOneShot = 3,
};

// Counter-based stream. The key comes from (seed, trial); every draw is
// addressed by (step, purpose, index), so results do not depend on the order
// in which trials or blocks are evaluated.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t trial);

    // count standard normal variates for block (step, purpose)
    void normals(std::uint64_t step, std::uint32_t purpose, double* out, std::size_t count) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t trial() const { return trial_; }

private:
    std::uint64_t seed_, trial_;
    Key key_;
};

}  // namespace brownflow::rng
