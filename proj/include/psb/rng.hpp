#pragma once

#include <cstdint>
#include <string>

#include "psb/bitstring.hpp"
#include "psb/natural.hpp"

namespace psb {

// Deterministic random stream: a (seed, counter) pair fully determines
// every output, so any randomized run is replayable bit for bit.
// Counter-mode splitmix over a digest of the seed bytes; not a
// cryptographic generator, it only carries "the coin tosses of A".
class SeededRng {
public:
    explicit SeededRng(const BitString& seed);
    explicit SeededRng(const std::string& seed_hex) : SeededRng(BitString::from_hex(seed_hex)) {}

    std::uint64_t next_u64();
    int next_bit();
    BitString next_bits(std::size_t n);

    // Uniform in [0, bound), bound >= 1, by rejection on bit blocks.
    Natural uniform_below(const Natural& bound);
    // Uniform in [lo, hi] inclusive.
    Natural uniform_range(const Natural& lo, const Natural& hi);
    // Uniform over Z_n^*, rejection on gcd.
    Natural uniform_zn_star(const Natural& n);

    double next_double(); // uniform in [0,1)

    // Independent child stream; children with distinct labels are
    // independent of each other and of the parent's future output.
    SeededRng fork(std::uint64_t label) const;

    std::uint64_t counter() const { return counter_; }

private:
    SeededRng(std::uint64_t base, std::uint64_t counter) : base_(base), counter_(counter) {}

    std::uint64_t base_ = 0;
    std::uint64_t counter_ = 0;
    std::uint64_t bit_buffer_ = 0;
    unsigned bits_left_ = 0;
};

} // namespace psb
