#include "psb/rng.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "psb/error.hpp"

namespace psb {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t absorb_seed(const BitString& seed) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV offset basis
    for (std::size_t i = 0; i < seed.size(); ++i) {
        h ^= static_cast<std::uint64_t>(seed[i]) + 0x100;
        h *= 0x100000001b3ULL;
        h = splitmix64(h ^ i);
    }
    // Empty seed is still a valid (fixed) stream.
    return splitmix64(h ^ seed.size());
}

} // namespace

SeededRng::SeededRng(const BitString& seed) : base_(absorb_seed(seed)) {}

std::uint64_t SeededRng::next_u64() {
    bits_left_ = 0; // bit buffer never straddles a u64 draw
    return splitmix64(base_ ^ splitmix64(counter_++ * 0xd1342543de82ef95ULL + base_));
}

int SeededRng::next_bit() {
    if (bits_left_ == 0) {
        std::uint64_t w = next_u64();
        bit_buffer_ = w;
        bits_left_ = 64;
    }
    int b = static_cast<int>(bit_buffer_ & 1);
    bit_buffer_ >>= 1;
    --bits_left_;
    return b;
}

BitString SeededRng::next_bits(std::size_t n) {
    BitString out(n, 0);
    for (std::size_t i = 0; i < n; ++i) out.set(i, next_bit());
    return out;
}

Natural SeededRng::uniform_below(const Natural& bound) {
    if (bound < 1) throw Error("invalid-bound", "uniform_below requires bound >= 1");
    if (bound == 1) return 0;
    std::size_t bits = bit_length(bound - 1);
    for (;;) {
        Natural candidate = decode_natural(next_bits(bits));
        if (candidate < bound) return candidate;
    }
}

Natural SeededRng::uniform_range(const Natural& lo, const Natural& hi) {
    if (lo > hi) throw Error("invalid-bound", "empty range");
    return lo + uniform_below(hi - lo + 1);
}

Natural SeededRng::uniform_zn_star(const Natural& n) {
    if (n < 2) throw Error("invalid-modulus", "Z_n^* needs n >= 2");
    for (;;) {
        Natural x = uniform_range(1, n - 1);
        if (boost::multiprecision::gcd(x, n) == 1) return x;
    }
}

double SeededRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

SeededRng SeededRng::fork(std::uint64_t label) const {
    return SeededRng(splitmix64(splitmix64(base_ ^ 0xa5a5a5a5deadbeefULL) ^ splitmix64(label)), 0);
}

} // namespace psb
