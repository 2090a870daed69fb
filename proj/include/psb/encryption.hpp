#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "psb/bitstring.hpp"
#include "psb/error.hpp"
#include "psb/prf.hpp"
#include "psb/rng.hpp"
#include "psb/testlab.hpp"
#include "psb/trapdoor.hpp"

namespace psb {

struct GmKeypair {
    QrPublicKey public_key;
    QrTrapdoor secret_key;
};

struct GmCiphertext {
    std::vector<QrElement> residues;
    std::size_t bit_count = 0;
};

GmKeypair gm_keygen(std::size_t k, SeededRng& rng); // k >= 10, even
GmCiphertext gm_encrypt(const QrPublicKey& pk, const BitString& m, SeededRng& rng);
BitString gm_decrypt(const GmKeypair& kp, const GmCiphertext& c);
BitString gm_decrypt(const QrTrapdoor& sk, const GmCiphertext& c);

// Ciphertext file: `gm-ciphertext bits=<decimal> n=<hex>`, one hex residue
// per line.
std::string serialize_ciphertext(const GmCiphertext& c, const Natural& n);
GmCiphertext parse_ciphertext(const std::string& text, Natural& n_out);

// Two-phase IND adversary: picks the message pair, then guesses which one
// a challenge ciphertext encrypts (1 = "second message").
struct IndAdversary {
    std::function<std::pair<BitString, BitString>(const QrPublicKey&)> choose;
    std::function<int(const QrPublicKey&, const GmCiphertext&)> guess;
};

// Pluggable scheme so deliberately broken variants (fixed coins, leaked
// trapdoor) can run in the same game harness.
struct GmScheme {
    std::function<GmKeypair(std::size_t, SeededRng&)> keygen;
    std::function<GmCiphertext(const QrPublicKey&, const BitString&, SeededRng&)> encrypt;
};
GmScheme gm_scheme();

// Empirical IND game: `trials` fresh-key games per message arm, challenge
// bit explicit, advantage = |P(guess=1 | m1) - P(guess=1 | m0)|.
AdvantageEstimate ind_game(const GmScheme& scheme, const IndAdversary& adversary, std::size_t k,
                           std::size_t trials, SeededRng& rng);

// --- Hybrid argument, generic over the per-bit encoding ---------------------

// Encodes one plaintext bit into one channel element with fresh coins.
template <typename Elem>
using BitChannel = std::function<Elem(int bit, SeededRng&)>;

// Distinguisher over a whole vector of channel elements.
template <typename Elem>
using VectorAdversary = std::function<int(const std::vector<Elem>&)>;

// Predicts the plaintext bit hidden in a single challenge element.
template <typename Elem>
using ElemPredictor = std::function<int(const Elem&)>;

struct HybridProfile {
    std::vector<BitString> chain;            // s_0 = m0 ... s_last = m1
    std::vector<std::size_t> accept_counts;  // adversary "1" outputs per hybrid
    std::size_t samples_per_hybrid = 0;
    std::size_t gap_index = 0;    // argmax of P_{j+1} - P_j, smallest j on ties
    std::size_t flip_position = 0; // bit where chain[gap_index] and its successor differ

    std::vector<double> estimates() const;
    double gap() const; // P_{gap_index+1} - P_{gap_index}
};

template <typename Elem>
HybridProfile build_hybrid_profile(const VectorAdversary<Elem>& adversary,
                                   const BitChannel<Elem>& channel, const BitString& m0,
                                   const BitString& m1, std::size_t samples_per_hybrid,
                                   SeededRng& rng) {
    if (m0.size() != m1.size())
        throw Error("invalid-lengths", "hybrid: message lengths differ");
    if (m0 == m1)
        throw Error("degenerate-pair", "hybrid: messages are identical");
    if (samples_per_hybrid == 0)
        throw Error("parameter-too-small", "hybrid: need at least one sample per hybrid");

    HybridProfile profile;
    profile.samples_per_hybrid = samples_per_hybrid;
    BitString s = m0;
    profile.chain.push_back(s);
    std::vector<std::size_t> flips; // flip position leading into chain[j+1]
    for (std::size_t i = 0; i < m0.size(); ++i) {
        if (m0[i] != m1[i]) {
            s.set(i, m1[i]);
            profile.chain.push_back(s);
            flips.push_back(i);
        }
    }

    for (const BitString& hybrid : profile.chain) {
        std::size_t accepts = 0;
        for (std::size_t t = 0; t < samples_per_hybrid; ++t) {
            std::vector<Elem> cipher;
            cipher.reserve(hybrid.size());
            for (std::size_t i = 0; i < hybrid.size(); ++i)
                cipher.push_back(channel(hybrid[i], rng));
            if (adversary(cipher) == 1)
                ++accepts;
        }
        profile.accept_counts.push_back(accepts);
    }

    long long best = std::numeric_limits<long long>::min();
    for (std::size_t j = 0; j + 1 < profile.accept_counts.size(); ++j) {
        long long diff = static_cast<long long>(profile.accept_counts[j + 1]) -
                         static_cast<long long>(profile.accept_counts[j]);
        if (diff > best) {
            best = diff;
            profile.gap_index = j;
        }
    }
    profile.flip_position = flips[profile.gap_index];
    return profile;
}

// Splice the challenge element at the gap's flip position inside fresh
// encodings of s_{j*}; adversary output 0 guesses s_{j*,l}, output 1 the
// complement.
template <typename Elem>
ElemPredictor<Elem> predictor_from_distinguisher(const VectorAdversary<Elem>& adversary,
                                                 const BitChannel<Elem>& channel,
                                                 const HybridProfile& profile, SeededRng rng) {
    auto state = std::make_shared<SeededRng>(std::move(rng));
    BitString base = profile.chain.at(profile.gap_index);
    std::size_t l = profile.flip_position;
    return [adversary, channel, base, l, state](const Elem& y) {
        std::vector<Elem> cipher;
        cipher.reserve(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (i == l)
                cipher.push_back(y);
            else
                cipher.push_back(channel(base[i], *state));
        }
        int verdict = adversary(cipher);
        return verdict == 0 ? base[l] : 1 - base[l];
    };
}

// GM instantiations of the generic machinery.
HybridProfile build_hybrid_profile(const IndAdversary& adversary, const GmKeypair& kp,
                                   const BitString& m0, const BitString& m1,
                                   std::size_t samples_per_hybrid, SeededRng& rng);
ElemPredictor<QrElement> predictor_from_distinguisher(const IndAdversary& adversary,
                                                      const GmKeypair& kp,
                                                      const HybridProfile& profile, SeededRng rng);

// --- Planted-leak reduction demo ---------------------------------------------

// Channel element whose side channel equals the encoded bit with
// probability 1/2 + delta; the payload carries no information.
struct LeakyElem {
    std::uint64_t payload = 0;
    int leak = 0;
};

BitChannel<LeakyElem> leaky_channel(double delta);
VectorAdversary<LeakyElem> leaky_majority_adversary(const BitString& m0, const BitString& m1);

struct DemoReport {
    std::size_t k_msg = 0;
    double delta = 0.0;
    std::size_t trials = 0;
    HybridProfile profile;
    double bound = 0.0;              // delta / (2 k_msg)
    std::size_t challenges = 0;
    double predictor_advantage = 0.0;
    double ci_half_width = 0.0;      // 1.96 / sqrt(challenges)
    std::string verdict;             // PASS / FAIL / INCONCLUSIVE

    std::string serialize() const;
};

// Plants the delta-leaky predicate, runs gap-finding and the predictor
// construction, then measures the predictor against the bound
// delta/(2 k_msg). The challenge count is grown until 3 CI half-widths fit
// inside half the bound (capped at 2e6); INCONCLUSIVE when the cap cannot
// resolve the bound.
DemoReport demo_reduction(std::size_t k_msg, double delta, std::size_t trials, SeededRng& rng);

// --- PRF private-key scheme ---------------------------------------------------

std::pair<BitString, BitString> prf_private_encrypt(const GgmKey& s, const BitString& m,
                                                    SeededRng& rng);
BitString prf_private_decrypt(const GgmKey& s, const BitString& r, const BitString& masked);

} // namespace psb
