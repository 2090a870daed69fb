#pragma once

#include <cstddef>

#include "psb/natural.hpp"
#include "psb/rng.hpp"

namespace psb {

// Distinct primes p, q, both = 3 (mod 4), equal bit length. The trapdoor
// for squaring-based constructions.
struct BlumFactorization {
    Natural p;
    Natural q;
    Natural modulus() const { return p * q; }
};

// base^exp mod modulus, square-and-multiply. Throws invalid-modulus for
// modulus < 2.
Natural mod_pow(const Natural& base, const Natural& exp, const Natural& modulus);

// Multiplicative inverse of a mod m. Throws not-invertible when
// gcd(a, m) != 1, invalid-modulus for m < 2.
Natural mod_inv(const Natural& a, const Natural& m);

// Jacobi symbol (a/n) in {-1, 0, +1}; n must be odd and >= 3.
int jacobi(const Natural& a, const Natural& n);

// Miller-Rabin. Composites rejected except with probability <= 4^-rounds;
// primes always accepted.
bool is_probable_prime(const Natural& n, unsigned rounds, SeededRng& rng);

// Random prime with exactly `bits` bits and p = 3 (mod 4). Rejection
// sampling with forced top bit and low bits 11, bounded at 50*bits
// attempts.
Natural gen_blum_prime(std::size_t bits, SeededRng& rng);

// Square root of a residue a modulo a Blum prime p, canonical min(r, p-r).
// Throws not-a-residue when a has no root.
Natural sqrt_mod_blum_prime(const Natural& a, const Natural& p);

// Unique x < p*q with x = r1 (mod p), x = r2 (mod q); moduli must be
// coprime.
Natural crt_combine(const Natural& r1, const Natural& p, const Natural& r2, const Natural& q);

// Generator of Z_p^* for a safe prime p = 2q'+1; verified with two
// exponentiations. Throws unsupported-prime-shape otherwise.
Natural find_generator(const Natural& p, SeededRng& rng);

// Safe prime of exactly `bits` bits (p and (p-1)/2 both pass Miller-Rabin).
Natural gen_safe_prime(std::size_t bits, SeededRng& rng);

} // namespace psb
