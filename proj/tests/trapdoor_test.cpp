#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "psb/error.hpp"
#include "psb/numeric.hpp"
#include "psb/trapdoor.hpp"

using namespace psb;

namespace {
const QrTrapdoor kToy{BlumFactorization{3, 7}}; // n = 21
}

TEST_CASE("keygen produces distinct ordered Blum primes") {
    SeededRng rng("21");
    auto [pk, td] = qr_keygen(16, rng);
    CHECK(td.factorization.p < td.factorization.q);
    CHECK(td.factorization.p != td.factorization.q);
    CHECK(td.n() == pk.n);
    CHECK(bit_length(td.factorization.p) == 8);
    CHECK(bit_length(td.factorization.q) == 8);
    CHECK(td.factorization.p % 4 == 3);
    CHECK(td.factorization.q % 4 == 3);

    CHECK_THROWS_AS(qr_keygen(8, rng), Error);  // too few 4-bit Blum primes
    CHECK_THROWS_AS(qr_keygen(15, rng), Error); // odd k
}

TEST_CASE("J_21^{+1} and its residue classes") {
    CHECK(enumerate_jn_plus1(21) == std::vector<Natural>{1, 4, 5, 16, 17, 20});
    std::set<Natural> qr, qnr;
    for (const Natural& x : enumerate_jn_plus1(21))
        (qr_decide_with_trapdoor(kToy, QrElement{x}) == 0 ? qr : qnr).insert(x);
    CHECK(qr == std::set<Natural>{1, 4, 16});
    CHECK(qnr == std::set<Natural>{5, 17, 20});
}

TEST_CASE("sampler hits the right class") {
    SeededRng rng("22");
    QrPublicKey pk{21};
    for (int i = 0; i < 40; ++i) {
        QrElement zero = qr_sample(pk, 0, rng);
        QrElement one = qr_sample(pk, 1, rng);
        CHECK(qr_decide_with_trapdoor(kToy, zero) == 0);
        CHECK(qr_decide_with_trapdoor(kToy, one) == 1);
        CHECK(std::set<Natural>{1, 4, 16}.count(zero.value) == 1);
        CHECK(std::set<Natural>{5, 17, 20}.count(one.value) == 1);
    }
}

TEST_CASE("element validation") {
    check_qr_element(21, 17);
    CHECK_THROWS_AS(check_qr_element(21, 2), Error);  // jacobi(2,21) = -1
    CHECK_THROWS_AS(check_qr_element(21, 0), Error);
    CHECK_THROWS_AS(check_qr_element(21, 21), Error);
    CHECK_THROWS_AS(check_qr_element(21, 3), Error);  // gcd > 1
}

TEST_CASE("rabin square roots") {
    auto roots = rabin_sqrt(kToy, 16);
    CHECK(std::vector<Natural>(roots.begin(), roots.end()) ==
          std::vector<Natural>{4, 10, 11, 17});
    for (const Natural& r : roots)
        CHECK((r * r) % 21 == 16);
    CHECK_THROWS_AS(rabin_sqrt(kToy, 5), Error); // NQR has no root
}

TEST_CASE("squaring is a permutation of QR_n") {
    // forward table on QR_21 = {1, 4, 16}
    CHECK(williams_eval(QrPublicKey{21}, kToy, 1) == 1);
    CHECK(williams_eval(QrPublicKey{21}, kToy, 4) == 16);
    CHECK(williams_eval(QrPublicKey{21}, kToy, 16) == 4);
    CHECK_THROWS_AS(williams_eval(QrPublicKey{21}, kToy, 5), Error); // not a QR

    for (const Natural& x : {Natural(1), Natural(4), Natural(16)})
        CHECK(williams_invert(kToy, williams_eval(QrPublicKey{21}, kToy, x)) == x);

    // and at realistic sizes: invert is a true inverse on QR_n
    SeededRng rng("23");
    auto [pk, td] = qr_keygen(32, rng);
    for (int i = 0; i < 20; ++i) {
        Natural x = (rng.uniform_zn_star(pk.n) * rng.uniform_zn_star(pk.n)) % pk.n;
        x = (x * x) % pk.n; // definitely a QR
        CHECK(williams_invert(td, williams_eval_unchecked(pk.n, x)) == x);
    }
}

TEST_CASE("square-root oracle leaks the factorization") {
    SeededRng rng("24");
    for (int i = 0; i < 10; ++i) {
        SeededRng inst = rng.fork(i);
        auto [pk, td] = qr_keygen(32, inst);
        SeededRng oracle_rng = inst.fork(99);
        Natural p = td.factorization.p, q = td.factorization.q;
        SqrtOracle oracle = [&td, &oracle_rng](const Natural& y) {
            auto roots = rabin_sqrt(td, y);
            return roots[static_cast<std::size_t>(oracle_rng.uniform_below(4))];
        };
        auto result = factor_from_sqrt_oracle(pk, oracle, inst, 200);
        CHECK(result.factorization.p == p);
        CHECK(result.factorization.q == q);
        CHECK(result.trials >= 1);
    }
}

TEST_CASE("an unhelpful oracle exhausts the trial budget") {
    SeededRng rng("25");
    auto [pk, td] = qr_keygen(24, rng);
    // answers with garbage that never squares to y
    SqrtOracle garbage = [](const Natural&) { return Natural(1); };
    CHECK_THROWS_AS(factor_from_sqrt_oracle(pk, garbage, rng, 5), Error);
}

TEST_CASE("random self-reduction amplifies a noisy distinguisher") {
    SeededRng rng("26");
    SeededRng noise = rng.fork(1);
    QrTrapdoor td{BlumFactorization{19, 23}}; // n = 437, small enough to enumerate
    // distinguisher: correct on QRs with probability 0.85, from the trapdoor
    QrDistinguisher dist = [&td, &noise](const Natural& x, const Natural&) {
        int truth = qr_decide_with_trapdoor(td, QrElement{x});
        return noise.next_double() < 0.85 ? truth : 1 - truth;
    };
    auto report = qr_worst_to_average_check(td, dist, 151, rng);
    CHECK(report.elements == enumerate_jn_plus1(437).size());
    CHECK(report.samples_per_element == 151);
    CHECK(report.accuracy() >= 0.99);
}

TEST_CASE("key files round trip and reject tampering") {
    SeededRng rng("27");
    auto [pk, td] = qr_keygen(20, rng);
    QrPublicKey pk2 = parse_public_key(serialize_public_key(pk));
    CHECK(pk2.n == pk.n);
    QrTrapdoor td2 = parse_secret_key(serialize_secret_key(td));
    CHECK(td2.factorization.p == td.factorization.p);
    CHECK(td2.factorization.q == td.factorization.q);

    CHECK(serialize_public_key(pk).find("type = qr-public") != std::string::npos);
    // the public key never leaks the factors
    CHECK(serialize_public_key(pk).find(to_hex(td.factorization.p)) == std::string::npos);

    CHECK_THROWS_AS(parse_public_key("type = qr-secret\nn = 15\n"), Error);
    CHECK_THROWS_AS(parse_public_key("garbage"), Error);
    CHECK_THROWS_AS(parse_secret_key("type = qr-secret\np = 7\n"), Error); // missing q
}
