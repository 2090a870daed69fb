#include "psb/trapdoor.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "psb/error.hpp"

namespace psb {

namespace {

using boost::multiprecision::gcd;

// Blum primes of `bits` bits for tiny widths, by enumeration.
std::size_t count_blum_primes(std::size_t bits, SeededRng& rng) {
    std::size_t count = 0;
    Natural lo = Natural(1) << (bits - 1);
    Natural hi = Natural(1) << bits;
    for (Natural c = lo + 3 - (lo % 4); c < hi; c += 4)
        if (is_probable_prime(c, 20, rng)) ++count;
    return count;
}

std::map<std::string, std::string> parse_fields(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::string> fields;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        fields[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return fields;
}

} // namespace

std::pair<QrPublicKey, QrTrapdoor> qr_keygen(std::size_t k, SeededRng& rng) {
    if (k < 8 || k % 2 != 0) throw Error("invalid-parameter", "qr_keygen needs even k >= 8");
    const std::size_t half = k / 2;
    if (half <= 6) {
        SeededRng counter = rng.fork(0xb1);
        if (count_blum_primes(half, counter) < 2)
            throw Error("parameter-too-small",
                        "fewer than two distinct Blum primes of " + std::to_string(half) + " bits");
    }
    Natural p = gen_blum_prime(half, rng);
    Natural q = p;
    for (std::size_t tries = 0; q == p; ++tries) {
        if (tries > 50 * half) throw Error("prime-search-exhausted", "no distinct second prime");
        q = gen_blum_prime(half, rng);
    }
    if (p > q) std::swap(p, q);
    BlumFactorization fact{p, q};
    return {QrPublicKey{fact.modulus()}, QrTrapdoor{fact}};
}

QrElement qr_sample(const QrPublicKey& pk, int bit, SeededRng& rng) {
    Natural r = rng.uniform_zn_star(pk.n);
    Natural square = (r * r) % pk.n;
    return QrElement{bit == 0 ? square : pk.n - square};
}

void check_qr_element(const Natural& n, const Natural& x) {
    if (x < 1 || x >= n || gcd(x, n) != 1 || jacobi(x, n) != 1)
        throw Error("invalid-element", "element not in J_n^{+1}");
}

int qr_decide_with_trapdoor(const QrTrapdoor& td, const QrElement& x) {
    const auto& f = td.factorization;
    check_qr_element(td.n(), x.value);
    int lp = jacobi(x.value % f.p, f.p);
    int lq = jacobi(x.value % f.q, f.q);
    return (lp == 1 && lq == 1) ? 0 : 1;
}

std::array<Natural, 4> rabin_sqrt(const QrTrapdoor& td, const Natural& y) {
    const auto& f = td.factorization;
    const Natural n = td.n();
    if (gcd(y, n) != 1) throw Error("not-a-residue", "y not coprime to n");
    Natural rp = sqrt_mod_blum_prime(y % f.p, f.p); // throws not-a-residue
    Natural rq = sqrt_mod_blum_prime(y % f.q, f.q);
    std::array<Natural, 4> roots{
        crt_combine(rp, f.p, rq, f.q),
        crt_combine(rp, f.p, (f.q - rq) % f.q, f.q),
        crt_combine((f.p - rp) % f.p, f.p, rq, f.q),
        crt_combine((f.p - rp) % f.p, f.p, (f.q - rq) % f.q, f.q),
    };
    std::sort(roots.begin(), roots.end());
    return roots;
}

Natural williams_eval_unchecked(const Natural& n, const Natural& x) {
    return (x * x) % n;
}

Natural williams_eval(const QrPublicKey& pk, const QrTrapdoor& td_check, const Natural& x) {
    const auto& f = td_check.factorization;
    if (x < 1 || x >= pk.n || gcd(x, pk.n) != 1 || jacobi(x % f.p, f.p) != 1 ||
        jacobi(x % f.q, f.q) != 1)
        throw Error("out-of-domain", "williams_eval domain is QR_n");
    return williams_eval_unchecked(pk.n, x);
}

Natural williams_invert(const QrTrapdoor& td, const Natural& y) {
    const auto& f = td.factorization;
    if (jacobi(y % f.p, f.p) != 1 || jacobi(y % f.q, f.q) != 1)
        throw Error("out-of-domain", "williams_invert domain is QR_n");
    for (const auto& root : rabin_sqrt(td, y))
        if (jacobi(root % f.p, f.p) == 1 && jacobi(root % f.q, f.q) == 1) return root;
    throw Error("not-a-residue", "no QR root found"); // unreachable for Blum n
}

FactoringResult factor_from_sqrt_oracle(const QrPublicKey& pk, const SqrtOracle& oracle,
                                        SeededRng& rng, std::size_t max_trials) {
    const Natural& n = pk.n;
    for (std::size_t trial = 1; trial <= max_trials; ++trial) {
        Natural r = rng.uniform_zn_star(n);
        Natural y = oracle((r * r) % n);
        if (y == r || y == n - r) continue;
        Natural diff = y > r ? y - r : r - y;
        Natural p = gcd(diff, n);
        if (p == 1 || p == n) continue; // oracle answered outside contract
        Natural q = n / p;
        if (p > q) std::swap(p, q);
        return {BlumFactorization{p, q}, trial};
    }
    throw Error("oracle-uncooperative",
                "no factor after " + std::to_string(max_trials) + " trials");
}

std::vector<Natural> enumerate_jn_plus1(const Natural& n) {
    std::vector<Natural> out;
    for (Natural x = 1; x < n; ++x)
        if (gcd(x, n) == 1 && jacobi(x, n) == 1) out.push_back(x);
    return out;
}

WorstToAverageReport qr_worst_to_average_check(const QrTrapdoor& td, const QrDistinguisher& dist,
                                               std::size_t samples, SeededRng& rng) {
    const Natural n = td.n();
    WorstToAverageReport report;
    report.samples_per_element = samples;
    for (const Natural& x : enumerate_jn_plus1(n)) {
        // Randomize: x*r^2 preserves the class, x*(n - r^2) flips it.
        std::size_t votes_nonresidue = 0;
        for (std::size_t i = 0; i < samples; ++i) {
            Natural r = rng.uniform_zn_star(n);
            Natural square = (r * r) % n;
            int flip = rng.next_bit();
            Natural query = (x * (flip ? (n - square) : square)) % n;
            int answer = dist(query, n) & 1;
            votes_nonresidue += static_cast<std::size_t>(answer ^ flip);
        }
        int decision = votes_nonresidue * 2 > samples ? 1 : 0;
        int truth = qr_decide_with_trapdoor(td, QrElement{x});
        report.per_element.emplace_back(x, decision == truth);
        report.elements += 1;
        report.correct += static_cast<std::size_t>(decision == truth);
    }
    return report;
}

std::string serialize_public_key(const QrPublicKey& pk) {
    return "type = qr-public\nn = " + to_hex(pk.n) + "\n";
}

std::string serialize_secret_key(const QrTrapdoor& td) {
    return "type = qr-secret\np = " + to_hex(td.factorization.p) + "\nq = " +
           to_hex(td.factorization.q) + "\n";
}

QrPublicKey parse_public_key(const std::string& text) {
    auto fields = parse_fields(text);
    if (fields["type"] != "qr-public" || !fields.count("n"))
        throw Error("invalid-key-file", "expected a qr-public key file");
    return QrPublicKey{natural_from_hex(fields["n"])};
}

QrTrapdoor parse_secret_key(const std::string& text) {
    auto fields = parse_fields(text);
    if (fields["type"] != "qr-secret" || !fields.count("p") || !fields.count("q"))
        throw Error("invalid-key-file", "expected a qr-secret key file");
    return QrTrapdoor{BlumFactorization{natural_from_hex(fields["p"]), natural_from_hex(fields["q"])}};
}

} // namespace psb
