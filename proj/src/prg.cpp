#include "psb/prg.hpp"

#include <cassert>
#include <cstdint>

#include "psb/error.hpp"
#include "psb/hardcore.hpp"
#include "psb/numeric.hpp"

namespace psb {

BitString sprg_generate(const BitString& seed, std::size_t out_len, std::size_t k) {
    if (k < 16) throw Error("invalid-parameter", "sprg needs k >= 16");
    if (out_len < 1) throw Error("invalid-parameter", "out_len >= 1");
    if (seed.size() < 2 * k) throw Error("invalid-seed", "seed must be at least 2k bits");

    BitString mask = seed.slice(seed.size() - k, k);
    SeededRng rng(seed.slice(0, seed.size() - k));

    Natural p = gen_blum_prime(k / 2, rng);
    Natural q = p;
    std::size_t tries = 0;
    while (q == p) {
        if (++tries > 50 * k) throw Error("prime-search-exhausted", "no distinct second prime");
        q = gen_blum_prime(k / 2, rng);
    }
    Natural n = p * q;
    Natural r0 = rng.uniform_zn_star(n);
    Natural x = (r0 * r0) % n; // start inside QR_n

    BitString out(out_len, 0);
    if (bit_length(n) <= 63 && k <= 64) {
        // Native path: encode(x, k) & mask is a plain word AND.
        const std::uint64_t n64 = n.convert_to<std::uint64_t>();
        const std::uint64_t mask64 = decode_natural(mask).convert_to<std::uint64_t>();
        std::uint64_t x64 = x.convert_to<std::uint64_t>();
        for (std::size_t i = 0; i < out_len; ++i) {
            out.set(i, static_cast<int>(__builtin_popcountll(x64 & mask64) & 1));
            x64 = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x64) * x64) %
                                             n64);
#ifndef NDEBUG
            // Class check at toy sizes only: the state must stay in QR_n.
            if (k <= 24)
                assert(jacobi(Natural(x64) % p, p) == 1 && jacobi(Natural(x64) % q, q) == 1);
#endif
        }
        return out;
    }
    for (std::size_t i = 0; i < out_len; ++i) {
        out.set(i, gl_predicate(encode_natural(x, k), mask));
        x = (x * x) % n;
    }
    return out;
}

BitString lfsr_generate(const LfsrSpec& spec, std::size_t out_len) {
    if (spec.degree == 0 || spec.taps.size() != spec.degree || spec.seed.size() != spec.degree)
        throw Error("invalid-parameter", "taps and seed must both have length L >= 1");
    if (spec.taps[spec.degree - 1] != 1)
        throw Error("invalid-parameter", "leading feedback coefficient c_L must be 1");
    if (spec.seed.count_ones() == 0) throw Error("invalid-seed", "zero seed");

    BitString stream = spec.seed;
    for (std::size_t i = spec.degree; i < out_len; ++i) {
        int bit = 0;
        for (std::size_t j = 1; j <= spec.degree; ++j) bit ^= spec.taps[j - 1] & stream[i - j];
        stream.push_back(bit);
    }
    return out_len <= spec.degree ? stream.slice(0, out_len) : stream;
}

BmResult berlekamp_massey(const BitString& bits) {
    if (bits.size() < 2) throw Error("invalid-parameter", "need at least 2 bits");
    const std::size_t n = bits.size();
    // C(x) = 1 + c_1 x + ... : current connection polynomial.
    std::vector<int> c(n + 1, 0), b(n + 1, 0);
    c[0] = b[0] = 1;
    std::size_t L = 0, m = 1;
    for (std::size_t i = 0; i < n; ++i) {
        int d = bits[i];
        for (std::size_t j = 1; j <= L; ++j) d ^= c[j] & bits[i - j];
        if (d == 0) {
            ++m;
        } else if (2 * L <= i) {
            std::vector<int> t = c;
            for (std::size_t j = 0; j + m <= n; ++j) c[j + m] ^= b[j];
            L = i + 1 - L;
            b = t;
            m = 1;
        } else {
            for (std::size_t j = 0; j + m <= n; ++j) c[j + m] ^= b[j];
            ++m;
        }
    }
    BmResult result;
    result.complexity = L;
    result.taps = BitString(L, 0);
    for (std::size_t j = 1; j <= L; ++j) result.taps.set(j - 1, c[j]);
    return result;
}

int bm_predict_next(const BitString& prefix) {
    if (prefix.size() < 2 || prefix.count_ones() == 0) return 0;
    BmResult bm = berlekamp_massey(prefix);
    if (bm.complexity == 0 || bm.complexity > prefix.size()) return 0;
    int bit = 0;
    for (std::size_t j = 1; j <= bm.complexity; ++j)
        bit ^= bm.taps[j - 1] & prefix[prefix.size() - j];
    return bit;
}

std::vector<Natural> lcg_generate(const LcgSpec& spec, std::size_t count) {
    if (spec.modulus < 2) throw Error("invalid-modulus", "LCG modulus must be >= 2");
    std::vector<Natural> out;
    out.reserve(count);
    Natural x = spec.seed % spec.modulus;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(x);
        x = (spec.multiplier * x + spec.increment) % spec.modulus;
    }
    return out;
}

std::pair<Natural, Natural> lcg_recover(const Natural& x0, const Natural& x1, const Natural& x2,
                                        const Natural& m) {
    if (m < 2) throw Error("invalid-modulus", "modulus must be >= 2");
    Natural d = (x1 + m - (x0 % m)) % m;
    Natural a;
    try {
        a = ((x2 + m - (x1 % m)) % m * mod_inv(d, m)) % m;
    } catch (const Error&) {
        throw Error("underdetermined", "x1 - x0 not invertible mod m");
    }
    Natural b = (x1 + m - (a * x0) % m) % m;
    return {a, b};
}

AdvantageEstimate next_bit_advantage(const std::function<BitString(SeededRng&)>& generator_sampler,
                                     const std::function<int(const BitString&)>& predictor,
                                     std::size_t prefix_len, std::size_t samples, SeededRng& rng) {
    if (samples < 100) throw Error("invalid-parameter", "samples >= 100 required");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        BitString stream = generator_sampler(rng);
        if (stream.size() < prefix_len + 1)
            throw Error("invalid-parameter", "generator emits too few bits");
        int predicted = predictor(stream.slice(0, prefix_len)) & 1;
        correct += static_cast<std::size_t>(predicted == stream[prefix_len]);
    }
    double freq = static_cast<double>(correct) / static_cast<double>(samples);
    return make_estimate(std::abs(freq - 0.5), samples);
}

std::pair<Sampler, Sampler> constructed_indistinguishable_pair(std::size_t k) {
    if (k < 32) throw Error("invalid-parameter", "k >= 32 required");
    Sampler pseudo{2 * k, [k](SeededRng& rng) {
                       return sprg_generate(rng.next_bits(k), 2 * k, k / 2);
                   }};
    return {pseudo, uniform_sampler(2 * k)};
}

} // namespace psb
