#pragma once

#include <functional>
#include <utility>

#include "psb/bitstring.hpp"
#include "psb/natural.hpp"
#include "psb/rng.hpp"
#include "psb/testlab.hpp"

namespace psb {

// Strong generator: iterate the squaring permutation on QR_n for a
// seed-derived Blum n, emit the GL inner-product bit of each state.
// Seed layout (MSB first): [|seed|-k bits of parameter entropy][k-bit GL
// mask r]; requires |seed| >= 2k and k >= 16.
BitString sprg_generate(const BitString& seed, std::size_t out_len, std::size_t k);

struct LfsrSpec {
    std::size_t degree = 0;
    BitString taps; // taps[j-1] = coefficient c_j of s_i = sum c_j s_{i-j}; c_L must be 1
    BitString seed; // length L, nonzero
};

BitString lfsr_generate(const LfsrSpec& spec, std::size_t out_len);

struct BmResult {
    std::size_t complexity = 0;
    BitString taps; // c_1 .. c_L, same convention as LfsrSpec
};

// Shortest GF(2) linear recurrence generating `bits`.
BmResult berlekamp_massey(const BitString& bits);

// Next bit under the BM-recovered recurrence (0 for the zero sequence).
int bm_predict_next(const BitString& prefix);

struct LcgSpec {
    Natural modulus;    // m >= 2
    Natural multiplier; // a < m
    Natural increment;  // b < m
    Natural seed;       // x0 < m
};

// x0, x1, ..., x_{count-1}.
std::vector<Natural> lcg_generate(const LcgSpec& spec, std::size_t count);

// (a, b) from three consecutive outputs and a known modulus. Throws
// `underdetermined` when x1 - x0 is not invertible mod m.
std::pair<Natural, Natural> lcg_recover(const Natural& x0, const Natural& x1, const Natural& x2,
                                        const Natural& m);

// Frequency with which predictor(first prefix_len bits) matches bit
// prefix_len, minus 1/2 (absolute value), with CI.
AdvantageEstimate next_bit_advantage(const std::function<BitString(SeededRng&)>& generator_sampler,
                                     const std::function<int(const BitString&)>& predictor,
                                     std::size_t prefix_len, std::size_t samples, SeededRng& rng);

// Statistically far but (empirically) indistinguishable: sprg on fresh
// k-bit seeds stretched to 2k bits versus uniform 2k-bit strings. The
// pseudo sampler's support covers at most 2^k of the 2^{2k} strings.
std::pair<Sampler, Sampler> constructed_indistinguishable_pair(std::size_t k);

} // namespace psb
