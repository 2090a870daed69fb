#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "psb/natural.hpp"
#include "psb/numeric.hpp"
#include "psb/rng.hpp"

namespace psb {

// Blum integer published without its factorization.
struct QrPublicKey {
    Natural n;
};

// The factorization; pairs with a QrPublicKey via p*q == n.
struct QrTrapdoor {
    BlumFactorization factorization;
    Natural n() const { return factorization.modulus(); }
};

// Element of J_n^{+1}: 1 <= value < n, gcd(value,n) = 1, Jacobi +1.
struct QrElement {
    Natural value;
};

// Index sampler: n = p*q, |p| = |q| = k/2, both Blum primes, p != q.
std::pair<QrPublicKey, QrTrapdoor> qr_keygen(std::size_t k, SeededRng& rng);

// Element sampler: bit 0 -> r^2 mod n, bit 1 -> n - r^2 mod n.
QrElement qr_sample(const QrPublicKey& pk, int bit, SeededRng& rng);

// Trapdoor decider: 0 iff x is a square mod both prime factors.
int qr_decide_with_trapdoor(const QrTrapdoor& td, const QrElement& x);

void check_qr_element(const Natural& n, const Natural& x); // throws invalid-element

// All four square roots of y mod n from the factorization.
std::array<Natural, 4> rabin_sqrt(const QrTrapdoor& td, const Natural& y);

// Squaring restricted to QR_n: a permutation.
Natural williams_eval(const QrPublicKey& pk, const QrTrapdoor& td_check, const Natural& x);
Natural williams_eval_unchecked(const Natural& n, const Natural& x); // caller guarantees x in QR_n
Natural williams_invert(const QrTrapdoor& td, const Natural& y);

// Rabin's reduction: factoring from any square-root oracle.
struct FactoringResult {
    BlumFactorization factorization;
    std::size_t trials = 0;
};
using SqrtOracle = std::function<Natural(const Natural& y)>;
FactoringResult factor_from_sqrt_oracle(const QrPublicKey& pk, const SqrtOracle& oracle,
                                        SeededRng& rng, std::size_t max_trials);

// Random self-reduction amplifier: per-x majority decision versus trapdoor
// truth over all of J_n^{+1} (small n only).
struct WorstToAverageReport {
    std::size_t samples_per_element = 0;
    std::size_t elements = 0;
    std::size_t correct = 0;
    std::vector<std::pair<Natural, bool>> per_element; // (x, amplified decision correct)
    double accuracy() const {
        return elements == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(elements);
    }
};
using QrDistinguisher = std::function<int(const Natural& x, const Natural& n)>;
WorstToAverageReport qr_worst_to_average_check(const QrTrapdoor& td, const QrDistinguisher& dist,
                                               std::size_t samples, SeededRng& rng);

// Enumerate J_n^{+1} in ascending order (test/report helper, small n).
std::vector<Natural> enumerate_jn_plus1(const Natural& n);

// Key files: `type = qr-public` / `type = qr-secret`, one field per line.
std::string serialize_public_key(const QrPublicKey& pk);
std::string serialize_secret_key(const QrTrapdoor& td);
QrPublicKey parse_public_key(const std::string& text);
QrTrapdoor parse_secret_key(const std::string& text);

} // namespace psb
