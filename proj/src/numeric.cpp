#include "psb/numeric.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#include "psb/error.hpp"

namespace psb {

namespace {

constexpr std::array<std::uint32_t, 54> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
    191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251};

bool fits_u64(const Natural& n) { return n >= 0 && bit_length(n) <= 63; }

std::uint64_t to_u64(const Natural& n) { return n.convert_to<std::uint64_t>(); }

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

// One Miller-Rabin round with witness a; false means "definitely composite".
bool miller_rabin_round(const Natural& n, const Natural& a, const Natural& d, std::size_t s) {
    Natural x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (std::size_t i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

Natural mod_pow(const Natural& base, const Natural& exp, const Natural& modulus) {
    if (modulus < 2) throw Error("invalid-modulus", "mod_pow needs modulus >= 2");
    if (fits_u64(modulus) && fits_u64(exp)) {
        Natural b = base % modulus;
        return Natural(powmod_u64(to_u64(b), to_u64(exp), to_u64(modulus)));
    }
    Natural result = 1;
    Natural b = base % modulus;
    Natural e = exp;
    while (e > 0) {
        if (boost::multiprecision::bit_test(e, 0)) result = (result * b) % modulus;
        b = (b * b) % modulus;
        e >>= 1;
    }
    return result;
}

Natural mod_inv(const Natural& a, const Natural& m) {
    if (m < 2) throw Error("invalid-modulus", "mod_inv needs m >= 2");
    // Extended Euclid on signed intermediates.
    using Int = boost::multiprecision::cpp_int;
    Int old_r = Int(a % m), r = Int(m);
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw Error("not-invertible", "gcd(a, m) != 1");
    Int inv = old_s % Int(m);
    if (inv < 0) inv += Int(m);
    return Natural(inv);
}

int jacobi(const Natural& a_in, const Natural& n_in) {
    if (n_in < 3 || !boost::multiprecision::bit_test(n_in, 0))
        throw Error("invalid-modulus", "jacobi needs odd n >= 3");
    if (fits_u64(n_in)) {
        std::uint64_t n = to_u64(n_in);
        std::uint64_t a = to_u64(a_in % n_in);
        int result = 1;
        while (a != 0) {
            while ((a & 1) == 0) {
                a >>= 1;
                std::uint64_t r = n & 7;
                if (r == 3 || r == 5) result = -result;
            }
            std::swap(a, n);
            if ((a & 3) == 3 && (n & 3) == 3) result = -result;
            a %= n;
        }
        return n == 1 ? result : 0;
    }
    Natural a = a_in % n_in;
    Natural n = n_in;
    int result = 1;
    while (a != 0) {
        while (!boost::multiprecision::bit_test(a, 0)) {
            a >>= 1;
            unsigned r = static_cast<unsigned>(n & 7);
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

bool is_probable_prime(const Natural& n, unsigned rounds, SeededRng& rng) {
    if (rounds < 1) throw Error("invalid-parameter", "rounds >= 1 required");
    if (n < 2) return false;
    for (auto p : kSmallPrimes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // n > 251 and odd here.
    Natural d = n - 1;
    std::size_t s = 0;
    while (!boost::multiprecision::bit_test(d, 0)) {
        d >>= 1;
        ++s;
    }
    for (unsigned i = 0; i < rounds; ++i) {
        Natural a = rng.uniform_range(2, n - 2);
        if (!miller_rabin_round(n, a, d, s)) return false;
    }
    return true;
}

Natural gen_blum_prime(std::size_t bits, SeededRng& rng) {
    if (bits < 4) throw Error("invalid-parameter", "gen_blum_prime needs bits >= 4");
    const std::size_t max_attempts = 50 * bits;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        Natural candidate = decode_natural(rng.next_bits(bits));
        boost::multiprecision::bit_set(candidate, static_cast<unsigned>(bits - 1)); // exact bit length
        boost::multiprecision::bit_set(candidate, 1); // low bits 11: candidate = 3 (mod 4)
        boost::multiprecision::bit_set(candidate, 0);
        if (is_probable_prime(candidate, 20, rng)) return candidate;
    }
    throw Error("prime-search-exhausted",
                "no Blum prime found in " + std::to_string(max_attempts) + " attempts");
}

Natural sqrt_mod_blum_prime(const Natural& a_in, const Natural& p) {
    if (p < 3 || p % 4 != 3) throw Error("invalid-modulus", "p must be a Blum prime");
    Natural a = a_in % p;
    if (a == 0) return 0;
    Natural r = mod_pow(a, (p + 1) / 4, p);
    if ((r * r) % p != a) throw Error("not-a-residue", to_hex(a) + " is not a residue mod " + to_hex(p));
    return std::min(r, Natural(p - r));
}

Natural crt_combine(const Natural& r1, const Natural& p, const Natural& r2, const Natural& q) {
    if (boost::multiprecision::gcd(p, q) != 1)
        throw Error("invalid-moduli", "crt_combine needs coprime moduli");
    // x = r1 + p * ((r2 - r1) * p^-1 mod q)
    Natural pr1 = r1 % p;
    Natural qr2 = r2 % q;
    Natural pinv = mod_inv(p % q, q);
    Natural diff = (qr2 + q - (pr1 % q)) % q;
    Natural t = (diff * pinv) % q;
    return pr1 + p * t;
}

Natural find_generator(const Natural& p, SeededRng& rng) {
    if (p < 5) throw Error("unsupported-prime-shape", "p too small for a safe prime");
    Natural qprime = (p - 1) / 2;
    SeededRng check_rng = rng.fork(0x67656e); // primality witnesses
    if (!is_probable_prime(p, 20, check_rng) || !is_probable_prime(qprime, 20, check_rng))
        throw Error("unsupported-prime-shape", "p is not a safe prime");
    for (;;) {
        Natural g = rng.uniform_range(2, p - 2);
        if (mod_pow(g, 2, p) != 1 && mod_pow(g, qprime, p) != 1) return g;
    }
}

Natural gen_safe_prime(std::size_t bits, SeededRng& rng) {
    if (bits < 5) throw Error("invalid-parameter", "gen_safe_prime needs bits >= 5");
    const std::size_t max_attempts = 4000 * bits;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        Natural candidate = decode_natural(rng.next_bits(bits));
        boost::multiprecision::bit_set(candidate, static_cast<unsigned>(bits - 1));
        boost::multiprecision::bit_set(candidate, 1); // safe primes > 5 are 3 (mod 4)
        boost::multiprecision::bit_set(candidate, 0);
        if (!is_probable_prime(candidate, 20, rng)) continue;
        if (is_probable_prime((candidate - 1) / 2, 20, rng)) return candidate;
    }
    throw Error("prime-search-exhausted", "no safe prime found");
}

} // namespace psb
