#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "psb/bitstring.hpp"
#include "psb/owf.hpp"
#include "psb/rng.hpp"

namespace psb {

// Inner product of x and r over GF(2); lengths must match.
int gl_predicate(const BitString& x, const BitString& r);

// The extended function f'(x . r) = f(x) . r with its public mask.
struct GlInstance {
    OwfIndex base_index;
    BitString r; // |r| == encoding_bits(base_index)
};

struct GlExtended {
    GlInstance instance;
    // f'(x) for a k-bit encoded domain element; nullopt when the encoding
    // is outside the base domain.
    std::function<std::optional<std::pair<Image, BitString>>(const BitString&)> eval;
};

GlExtended gl_extend(const OwfIndex& index, SeededRng& rng);

// The prediction adversary, reified: answers bit guesses for B(x, r) given
// only the image y.
struct PredictionOracle {
    std::function<int(const BitString& r)> query; // image y is fixed per oracle
    double epsilon = 0.0;                         // declared advantage in (0, 1/2]
};

// Self-correcting list decoder. Returns <= ceil(4/epsilon^2) candidate
// preimages; the true x is present with probability >= 1 - delta over the
// decoder's own coins when the oracle has advantage epsilon. Candidates
// are filtered through `accept` when supplied.
std::vector<BitString> gl_list_decode(const PredictionOracle& oracle, std::size_t k, double epsilon,
                                      double delta, SeededRng& rng,
                                      const std::function<bool(const BitString&)>& accept = nullptr);

} // namespace psb
