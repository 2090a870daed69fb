#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "psb/bitstring.hpp"
#include "psb/error.hpp"
#include "psb/natural.hpp"
#include "psb/rng.hpp"

using namespace psb;

TEST_CASE("bitstring text and hex forms agree") {
    BitString b = BitString::from_string("10110100");
    CHECK(b.size() == 8);
    CHECK(b.to_hex() == "b4");
    CHECK(BitString::from_hex("b4") == b);
    CHECK(b.to_string() == "10110100");
    CHECK(b.count_ones() == 4);
    CHECK(b.parity() == 0);

    // index 0 is the first emitted / most significant bit
    CHECK(b[0] == 1);
    CHECK(b[7] == 0);
}

TEST_CASE("bitstring bytes are MSB-first per byte") {
    BitString b = BitString::from_bytes({0x80, 0x01});
    CHECK(b.to_string() == "1000000000000001");
    CHECK(b.to_bytes() == std::vector<std::uint8_t>{0x80, 0x01});
}

TEST_CASE("slice, concat and xor") {
    BitString b = BitString::from_string("110010");
    CHECK(b.slice(1, 3).to_string() == "100");
    CHECK(b.slice(0, 0).empty());
    CHECK(b.concat(BitString::from_string("01")).to_string() == "11001001");
    CHECK((BitString::from_string("1100") ^ BitString::from_string("1010")).to_string() == "0110");
    CHECK_THROWS_AS(BitString::from_string("1") ^ BitString::from_string("11"), Error);
    CHECK_THROWS_AS(b.slice(5, 3), Error);
}

TEST_CASE("malformed text inputs are rejected") {
    CHECK_THROWS_AS(BitString::from_string("10x1"), Error);
    CHECK_THROWS_AS(BitString::from_hex("0g"), Error);
    CHECK_THROWS_AS(BitString::from_string("101").to_hex(), Error);
    CHECK_THROWS_AS(BitString::from_string("101").to_bytes(), Error);
}

TEST_CASE("natural hex round trip") {
    CHECK(to_hex(Natural(0)) == "0");
    CHECK(to_hex(Natural(255)) == "ff");
    CHECK(natural_from_hex("ff") == 255);
    CHECK(natural_from_hex(to_hex(Natural("123456789123456789123456789"))) ==
          Natural("123456789123456789123456789"));
    CHECK_THROWS_AS(natural_from_hex("xyz"), Error);
    CHECK(bit_length(Natural(0)) == 0);
    CHECK(bit_length(Natural(1)) == 1);
    CHECK(bit_length(Natural(255)) == 8);
    CHECK(bit_length(Natural(256)) == 9);
}

TEST_CASE("natural bit encoding pads MSB-first") {
    CHECK(encode_natural(Natural(5), 8).to_string() == "00000101");
    CHECK(decode_natural(BitString::from_string("00000101")) == 5);
    CHECK(decode_natural(encode_natural(Natural(12345), 20)) == 12345);
    CHECK_THROWS_AS(encode_natural(Natural(256), 8), Error); // does not fit
}

TEST_CASE("rng is a pure function of seed and counter") {
    SeededRng a("00ff");
    SeededRng b("00ff");
    for (int i = 0; i < 100; ++i)
        CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_bits(77) == b.next_bits(77));

    SeededRng c("00fe");
    CHECK(SeededRng("00ff").next_u64() != c.next_u64());
}

TEST_CASE("forked streams are independent of the parent") {
    SeededRng parent("abcd");
    SeededRng child1 = parent.fork(1);
    SeededRng child2 = parent.fork(2);
    CHECK(child1.next_bits(64) != child2.next_bits(64));

    // forking does not consume parent state
    SeededRng replay("abcd");
    (void)replay.fork(1);
    SeededRng parent2("abcd");
    CHECK(replay.next_bits(64) == parent2.next_bits(64));
}

TEST_CASE("uniform_below stays in range and hits all residues") {
    SeededRng rng("17");
    CHECK(rng.uniform_below(1) == 0);
    std::set<int> seen;
    for (int i = 0; i < 500; ++i) {
        Natural v = rng.uniform_below(7);
        CHECK(v < 7);
        seen.insert(static_cast<int>(v));
    }
    CHECK(seen.size() == 7);

    Natural big = Natural(1) << 200;
    Natural v = rng.uniform_below(big);
    CHECK(v < big);
    CHECK_THROWS_AS(rng.uniform_below(0), Error);
}

TEST_CASE("uniform_zn_star returns units only") {
    SeededRng rng("18");
    for (int i = 0; i < 50; ++i) {
        Natural v = rng.uniform_zn_star(21);
        CHECK(v >= 1);
        CHECK(v < 21);
        CHECK(boost::multiprecision::gcd(v, Natural(21)) == 1);
    }
}

TEST_CASE("next_double covers the unit interval") {
    SeededRng rng("19");
    double sum = 0;
    for (int i = 0; i < 2000; ++i) {
        double d = rng.next_double();
        CHECK(d >= 0.0);
        CHECK(d < 1.0);
        sum += d;
    }
    CHECK(sum / 2000 == doctest::Approx(0.5).epsilon(0.1));
}
