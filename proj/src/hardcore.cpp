#include "psb/hardcore.hpp"

#include <cmath>

#include "psb/error.hpp"

namespace psb {

int gl_predicate(const BitString& x, const BitString& r) {
    if (x.size() != r.size()) throw Error("invalid-lengths", "gl_predicate needs |x| == |r|");
    int acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) acc ^= (x[i] & r[i]);
    return acc;
}

GlExtended gl_extend(const OwfIndex& index, SeededRng& rng) {
    const std::size_t k = encoding_bits(index);
    GlInstance instance{index, rng.next_bits(k)};
    OwfIndex base = index;
    auto eval = [base, k](const BitString& x) -> std::optional<std::pair<Image, BitString>> {
        if (x.size() != 2 * k) throw Error("invalid-lengths", "f' input is x . r with |x| = |r|");
        auto domain = decode_domain(base, x.slice(0, k));
        if (!domain) return std::nullopt;
        return std::make_pair(evaluate(base, *domain), x.slice(k, k));
    };
    return {std::move(instance), std::move(eval)};
}

std::vector<BitString> gl_list_decode(const PredictionOracle& oracle, std::size_t k, double epsilon,
                                      double delta, SeededRng& rng,
                                      const std::function<bool(const BitString&)>& accept) {
    if (k == 0) throw Error("invalid-parameter", "nothing to decode for k = 0");
    if (!(epsilon > 0.0 && epsilon <= 0.5)) throw Error("invalid-advantage", "epsilon in (0, 1/2]");
    if (!(delta > 0.0 && delta < 1.0)) throw Error("invalid-parameter", "delta in (0, 1)");
    const std::size_t list_cap = static_cast<std::size_t>(std::ceil(4.0 / (epsilon * epsilon)));

    // l uniform strings give 2^l - 1 pairwise-independent probes; one
    // candidate per guess of the l true inner products. The candidate list
    // has exactly 2^l entries, so l is capped by the list-size bound.
    const double delta_prime = delta / 2.0;
    std::size_t l = static_cast<std::size_t>(
        std::ceil(std::log2(static_cast<double>(k) / delta_prime)));
    std::size_t l_cap = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(list_cap))));
    l = std::max<std::size_t>(1, std::min(l, l_cap));

    std::vector<BitString> u;
    u.reserve(l);
    for (std::size_t i = 0; i < l; ++i) u.push_back(rng.next_bits(k));

    const std::size_t probes = (std::size_t{1} << l) - 1;

    // r_S = xor_{i in S} u_i for every nonempty S, plus the oracle's answer
    // on every r_S ^ e_j. Answers are independent of the guess loop.
    std::vector<BitString> r_of_s(probes + 1, BitString(k, 0));
    for (std::size_t s = 1; s <= probes; ++s) {
        BitString r(k, 0);
        for (std::size_t i = 0; i < l; ++i)
            if ((s >> i) & 1) r = r ^ u[i];
        r_of_s[s] = std::move(r);
    }
    std::vector<std::vector<int>> answers(probes + 1, std::vector<int>(k, 0));
    for (std::size_t s = 1; s <= probes; ++s) {
        for (std::size_t j = 0; j < k; ++j) {
            BitString probe = r_of_s[s];
            probe.set(j, probe[j] ^ 1); // r_S ^ e_j
            answers[s][j] = oracle.query(probe) & 1;
        }
    }

    std::vector<BitString> candidates;
    for (std::size_t guess = 0; guess < (std::size_t{1} << l); ++guess) {
        // Guessed B(x, r_S) is the parity of guessed bits over S.
        std::vector<int> guessed(probes + 1, 0);
        for (std::size_t s = 1; s <= probes; ++s) {
            int g = 0;
            for (std::size_t i = 0; i < l; ++i)
                if ((s >> i) & 1) g ^= static_cast<int>((guess >> i) & 1);
            guessed[s] = g;
        }
        BitString candidate(k, 0);
        for (std::size_t j = 0; j < k; ++j) {
            std::size_t votes_one = 0;
            for (std::size_t s = 1; s <= probes; ++s)
                votes_one += static_cast<std::size_t>(answers[s][j] ^ guessed[s]);
            candidate.set(j, votes_one * 2 > probes ? 1 : 0);
        }
        if (!accept || accept(candidate)) candidates.push_back(std::move(candidate));
        if (candidates.size() >= list_cap) break;
    }
    return candidates;
}

} // namespace psb
