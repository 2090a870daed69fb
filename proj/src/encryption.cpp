#include "psb/encryption.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "psb/numeric.hpp"

namespace psb {

GmKeypair gm_keygen(std::size_t k, SeededRng& rng) {
    if (k < 10 || k % 2 != 0)
        throw Error("parameter-too-small", "gm_keygen: k must be even and at least 10");
    auto [pk, td] = qr_keygen(k, rng);
    return GmKeypair{pk, td};
}

GmCiphertext gm_encrypt(const QrPublicKey& pk, const BitString& m, SeededRng& rng) {
    if (m.empty())
        throw Error("invalid-message", "gm_encrypt: message must be non-empty");
    GmCiphertext c;
    c.bit_count = m.size();
    c.residues.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        c.residues.push_back(qr_sample(pk, m[i], rng));
    return c;
}

BitString gm_decrypt(const QrTrapdoor& sk, const GmCiphertext& c) {
    if (c.residues.size() != c.bit_count)
        throw Error("malformed-ciphertext", "gm_decrypt: residue count does not match bit count");
    const Natural n = sk.n();
    BitString m;
    for (const QrElement& r : c.residues) {
        try {
            check_qr_element(n, r.value);
        } catch (const Error&) {
            throw Error("malformed-ciphertext", "gm_decrypt: residue outside J_n^{+1}");
        }
        m.push_back(qr_decide_with_trapdoor(sk, r));
    }
    return m;
}

BitString gm_decrypt(const GmKeypair& kp, const GmCiphertext& c) {
    return gm_decrypt(kp.secret_key, c);
}

std::string serialize_ciphertext(const GmCiphertext& c, const Natural& n) {
    std::ostringstream out;
    out << "gm-ciphertext bits=" << c.bit_count << " n=" << to_hex(n) << "\n";
    for (const QrElement& r : c.residues)
        out << to_hex(r.value) << "\n";
    return out.str();
}

GmCiphertext parse_ciphertext(const std::string& text, Natural& n_out) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header))
        throw Error("malformed-ciphertext", "ciphertext file: missing header");
    std::size_t bits = 0;
    char n_hex[1024] = {0};
    if (std::sscanf(header.c_str(), "gm-ciphertext bits=%zu n=%1023s", &bits, n_hex) != 2 ||
        bits == 0)
        throw Error("malformed-ciphertext", "ciphertext file: bad header");
    GmCiphertext c;
    c.bit_count = bits;
    n_out = natural_from_hex(n_hex);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        try {
            c.residues.push_back(QrElement{natural_from_hex(line)});
        } catch (const Error&) {
            throw Error("malformed-ciphertext", "ciphertext file: bad residue line");
        }
    }
    if (c.residues.size() != bits)
        throw Error("malformed-ciphertext", "ciphertext file: residue count mismatch");
    return c;
}

GmScheme gm_scheme() {
    return GmScheme{
        [](std::size_t k, SeededRng& rng) { return gm_keygen(k, rng); },
        [](const QrPublicKey& pk, const BitString& m, SeededRng& rng) {
            return gm_encrypt(pk, m, rng);
        },
    };
}

AdvantageEstimate ind_game(const GmScheme& scheme, const IndAdversary& adversary, std::size_t k,
                           std::size_t trials, SeededRng& rng) {
    if (trials < 100)
        throw Error("parameter-too-small", "ind_game: need at least 100 trials per arm");
    std::size_t accepts[2] = {0, 0};
    SeededRng game_rng = rng.fork(31);
    for (int arm = 0; arm < 2; ++arm) {
        for (std::size_t t = 0; t < trials; ++t) {
            SeededRng trial_rng = game_rng.fork((static_cast<std::uint64_t>(arm) << 32) | t);
            GmKeypair kp = scheme.keygen(k, trial_rng);
            auto [m0, m1] = adversary.choose(kp.public_key);
            if (m0.size() != m1.size() || m0.empty())
                throw Error("adversary-protocol-violation",
                            "ind_game: adversary emitted unequal-length or empty messages");
            GmCiphertext c = scheme.encrypt(kp.public_key, arm == 0 ? m0 : m1, trial_rng);
            if (adversary.guess(kp.public_key, c) == 1)
                ++accepts[arm];
        }
    }
    double p0 = static_cast<double>(accepts[0]) / static_cast<double>(trials);
    double p1 = static_cast<double>(accepts[1]) / static_cast<double>(trials);
    return make_estimate(p0 > p1 ? p0 - p1 : p1 - p0, trials);
}

std::vector<double> HybridProfile::estimates() const {
    std::vector<double> out;
    out.reserve(accept_counts.size());
    for (std::size_t c : accept_counts)
        out.push_back(static_cast<double>(c) / static_cast<double>(samples_per_hybrid));
    return out;
}

double HybridProfile::gap() const {
    auto p = estimates();
    return p.at(gap_index + 1) - p.at(gap_index);
}

HybridProfile build_hybrid_profile(const IndAdversary& adversary, const GmKeypair& kp,
                                   const BitString& m0, const BitString& m1,
                                   std::size_t samples_per_hybrid, SeededRng& rng) {
    QrPublicKey pk = kp.public_key;
    BitChannel<QrElement> channel = [pk](int bit, SeededRng& r) { return qr_sample(pk, bit, r); };
    VectorAdversary<QrElement> guess = [pk, &adversary](const std::vector<QrElement>& elems) {
        return adversary.guess(pk, GmCiphertext{elems, elems.size()});
    };
    return build_hybrid_profile<QrElement>(guess, channel, m0, m1, samples_per_hybrid, rng);
}

ElemPredictor<QrElement> predictor_from_distinguisher(const IndAdversary& adversary,
                                                      const GmKeypair& kp,
                                                      const HybridProfile& profile,
                                                      SeededRng rng) {
    QrPublicKey pk = kp.public_key;
    BitChannel<QrElement> channel = [pk](int bit, SeededRng& r) { return qr_sample(pk, bit, r); };
    VectorAdversary<QrElement> guess = [pk, adversary](const std::vector<QrElement>& elems) {
        return adversary.guess(pk, GmCiphertext{elems, elems.size()});
    };
    return predictor_from_distinguisher<QrElement>(guess, channel, profile, std::move(rng));
}

BitChannel<LeakyElem> leaky_channel(double delta) {
    if (delta <= 0.0 || delta > 0.5)
        throw Error("invalid-parameter", "leaky_channel: delta must be in (0, 0.5]");
    return [delta](int bit, SeededRng& rng) {
        LeakyElem e;
        e.payload = rng.next_u64();
        e.leak = rng.next_double() < 0.5 + delta ? bit : 1 - bit;
        return e;
    };
}

VectorAdversary<LeakyElem> leaky_majority_adversary(const BitString& m0, const BitString& m1) {
    return [m0, m1](const std::vector<LeakyElem>& elems) {
        // Nearest-message decoding on the leak bits: output 1 iff the leaks
        // agree with m1 at least as often as with m0.
        std::size_t agree0 = 0, agree1 = 0;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (elems[i].leak == m0[i])
                ++agree0;
            if (elems[i].leak == m1[i])
                ++agree1;
        }
        return agree1 >= agree0 ? 1 : 0;
    };
}

std::string DemoReport::serialize() const {
    std::ostringstream out;
    out << "demo-reduction k_msg=" << k_msg << " delta=" << delta << " trials=" << trials << "\n";
    auto p = profile.estimates();
    out << "hybrids=" << p.size() << " samples_per_hybrid=" << profile.samples_per_hybrid << "\n";
    char buf[160];
    for (std::size_t j = 0; j < p.size(); ++j) {
        std::snprintf(buf, sizeof buf, "P_%zu = %.6f (%zu/%zu)", j, p[j],
                      profile.accept_counts[j], profile.samples_per_hybrid);
        out << buf << "\n";
    }
    std::snprintf(buf, sizeof buf, "gap_index=%zu flip_position=%zu gap=%.6f", profile.gap_index,
                  profile.flip_position, profile.gap());
    out << buf << "\n";
    std::snprintf(buf, sizeof buf,
                  "predictor_advantage=%.6f ci=%.6f challenges=%zu bound=%.6f verdict=%s",
                  predictor_advantage, ci_half_width, challenges, bound, verdict.c_str());
    out << buf << "\n";
    return out.str();
}

DemoReport demo_reduction(std::size_t k_msg, double delta, std::size_t trials, SeededRng& rng) {
    if (k_msg < 2 || k_msg > 16)
        throw Error("invalid-parameter", "demo_reduction: k_msg must be in [2, 16]");
    if (delta <= 0.0 || delta > 0.5)
        throw Error("invalid-parameter", "demo_reduction: delta must be in (0, 0.5]");
    if (trials < 100)
        throw Error("parameter-too-small", "demo_reduction: need at least 100 trials");

    DemoReport report;
    report.k_msg = k_msg;
    report.delta = delta;
    report.trials = trials;
    report.bound = delta / (2.0 * static_cast<double>(k_msg));

    BitString m0(k_msg, 0);
    BitString m1(k_msg, 1);
    BitChannel<LeakyElem> channel = leaky_channel(delta);
    VectorAdversary<LeakyElem> adversary = leaky_majority_adversary(m0, m1);

    SeededRng profile_rng = rng.fork(41);
    report.profile =
        build_hybrid_profile<LeakyElem>(adversary, channel, m0, m1, trials, profile_rng);
    ElemPredictor<LeakyElem> predictor =
        predictor_from_distinguisher<LeakyElem>(adversary, channel, report.profile, rng.fork(42));

    // Challenge budget: grow until 3 CI half-widths fit in half the bound.
    const std::size_t cap = 2'000'000;
    double needed = 6.0 * 1.96 / report.bound;
    std::size_t challenges = static_cast<std::size_t>(std::ceil(needed * needed));
    challenges = std::max(challenges, trials);
    bool resolvable = challenges <= cap;
    challenges = std::min(challenges, cap);
    report.challenges = challenges;
    report.ci_half_width = 1.96 / std::sqrt(static_cast<double>(challenges));

    SeededRng challenge_rng = rng.fork(43);
    std::size_t correct = 0;
    for (std::size_t t = 0; t < challenges; ++t) {
        int b = challenge_rng.next_bit();
        LeakyElem y = channel(b, challenge_rng);
        if (predictor(y) == b)
            ++correct;
    }
    report.predictor_advantage =
        static_cast<double>(correct) / static_cast<double>(challenges) - 0.5;

    if (!resolvable)
        report.verdict = "INCONCLUSIVE";
    else if (report.predictor_advantage >= report.bound - 3.0 * report.ci_half_width)
        report.verdict = "PASS";
    else
        report.verdict = "FAIL";
    return report;
}

std::pair<BitString, BitString> prf_private_encrypt(const GgmKey& s, const BitString& m,
                                                    SeededRng& rng) {
    if (m.size() != s.k)
        throw Error("invalid-message", "prf encrypt: message length must equal the block size");
    BitString r = rng.next_bits(s.k);
    return {r, ggm_eval(s, r) ^ m};
}

BitString prf_private_decrypt(const GgmKey& s, const BitString& r, const BitString& masked) {
    if (r.size() != s.k || masked.size() != s.k)
        throw Error("invalid-message", "prf decrypt: block length mismatch");
    return ggm_eval(s, r) ^ masked;
}

} // namespace psb
