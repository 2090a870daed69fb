#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "psb/error.hpp"
#include "psb/numeric.hpp"
#include "psb/owf.hpp"

using namespace psb;

TEST_CASE("MULT evaluates and inverts at toy sizes") {
    OwfIndex idx{Family::MULT, MultParams{4}};
    DomainElement x{std::make_pair(Natural(7), Natural(11))};
    Image y = evaluate(idx, x);
    CHECK(y == Image{Natural(77)});

    auto pre = brute_force_invert(idx, y, Natural(1) << 10);
    REQUIRE(pre.has_value());
    // canonical scan order returns the lexicographically first factorization
    CHECK(*pre == DomainElement{std::make_pair(Natural(7), Natural(11))});

    // composite with a smaller factor pair available
    auto pre12 = brute_force_invert(idx, Image{Natural(12)}, Natural(1) << 10);
    REQUIRE(pre12.has_value());
    CHECK(*pre12 == DomainElement{std::make_pair(Natural(1), Natural(12))});

    CHECK(!brute_force_invert(idx, Image{Natural(0)}, Natural(1) << 10).has_value());
    CHECK_THROWS_AS(evaluate(idx, DomainElement{std::make_pair(Natural(0), Natural(3))}), Error);
    CHECK_THROWS_AS(evaluate(idx, DomainElement{std::make_pair(Natural(16), Natural(3))}), Error);
}

TEST_CASE("brute force refuses large scans") {
    OwfIndex idx{Family::MULT, MultParams{20}};
    CHECK_THROWS_AS(brute_force_invert(idx, Image{Natural(6)}, Natural(1) << 30), Error);
    CHECK_THROWS_AS(brute_force_invert(idx, Image{Natural(6)}, Natural(1) << 10), Error);
}

TEST_CASE("DL sampling and evaluation") {
    SeededRng rng("07");
    OwfIndex idx = sample_index(Family::DL, 12, rng);
    const auto& p = std::get<DlParams>(idx.params);
    CHECK(bit_length(p.p) == 12);
    CHECK(is_probable_prime(p.p, 30, rng));

    DomainElement x = sample_domain(idx, rng);
    const Natural& e = std::get<Natural>(x.value);
    CHECK(e < p.p - 1);
    CHECK(evaluate(idx, x) == Image{mod_pow(p.g, e, p.p)});
    CHECK_THROWS_AS(evaluate(idx, DomainElement{Natural(p.p - 1)}), Error); // exponent domain Z_{p-1}
    CHECK_THROWS_AS(sample_index(Family::DL, 4, rng), Error);
}

TEST_CASE("SQUARING domain excludes non-units") {
    SeededRng rng("08");
    OwfIndex idx = sample_index(Family::SQUARING, 10, rng);
    const Natural& n = std::get<SquaringParams>(idx.params).n;
    for (int i = 0; i < 30; ++i) {
        DomainElement x = sample_domain(idx, rng);
        const Natural& v = std::get<Natural>(x.value);
        CHECK(boost::multiprecision::gcd(v, n) == 1);
        CHECK(evaluate(idx, x) == Image{(v * v) % n});
    }
    // a prime factor of n is outside Z_n^*
    Natural p = 3;
    while (n % p != 0) p += 2;
    CHECK_THROWS_AS(evaluate(idx, DomainElement{p}), Error);
    CHECK_THROWS_AS(sample_index(Family::SQUARING, 9, rng), Error); // odd k
}

TEST_CASE("AJTAI honest parameters and linearity") {
    SeededRng rng("09");
    OwfIndex idx = sample_index(Family::AJTAI, 16, rng);
    const auto& p = std::get<AjtaiParams>(idx.params);
    CHECK(Natural(p.rows) * bit_length(p.q) < p.cols);
    CHECK(Natural(p.cols) * 2 * p.rows * p.rows * p.rows * p.rows <= p.q);

    // f(x) + f(y) = f(x|y) mod q when supports are disjoint
    BitString x(p.cols, 0), y(p.cols, 0), both(p.cols, 0);
    x.set(3, 1);
    y.set(90, 1);
    both.set(3, 1);
    both.set(90, 1);
    auto fx = std::get<std::vector<Natural>>(evaluate(idx, DomainElement{x}).value);
    auto fy = std::get<std::vector<Natural>>(evaluate(idx, DomainElement{y}).value);
    auto fb = std::get<std::vector<Natural>>(evaluate(idx, DomainElement{both}).value);
    for (std::size_t r = 0; r < p.rows; ++r)
        CHECK((fx[r] + fy[r]) % p.q == fb[r]);

    CHECK_THROWS_AS(evaluate(idx, DomainElement{BitString(p.cols - 1, 0)}), Error);

    // dishonest shapes are rejected unless marked toy
    CHECK_THROWS_AS(make_ajtai_index(2, 8, Natural(13), false, rng), Error);
    OwfIndex toy = make_ajtai_index(2, 8, Natural(13), true, rng);
    CHECK(std::get<AjtaiParams>(toy.params).toy_mode);
}

TEST_CASE("ajtai toy mode pigeonholes into collisions") {
    SeededRng rng("0a");
    OwfIndex toy = make_ajtai_index(2, 8, Natural(13), true, rng);
    std::map<std::string, BitString> seen;
    bool collided = false;
    for (Natural i = 0; i < domain_size(toy); ++i) {
        BitString x = std::get<BitString>(domain_element_at(toy, i).value);
        std::string img = evaluate(toy, DomainElement{x}).serialize();
        auto it = seen.find(img);
        if (it != seen.end()) {
            collided = true;
            CHECK(it->second != x);
        } else {
            seen.emplace(img, x);
        }
    }
    CHECK(collided); // 256 inputs, at most 169 outputs
}

TEST_CASE("index files round trip") {
    SeededRng rng("0b");
    for (Family f : {Family::DL, Family::SQUARING, Family::MULT}) {
        OwfIndex idx = sample_index(f, f == Family::DL ? 10 : 10, rng);
        OwfIndex back = OwfIndex::deserialize(idx.serialize());
        CHECK(back.family == idx.family);
        CHECK(back.serialize() == idx.serialize());
    }
    OwfIndex toy = make_ajtai_index(2, 8, Natural(13), true, rng);
    std::string text = toy.serialize();
    CHECK(text.find("INSECURE") != std::string::npos);
    CHECK(OwfIndex::deserialize(text).serialize() == text);

    CHECK_THROWS_AS(OwfIndex::deserialize("family = BLAH\n"), Error);
    CHECK_THROWS_AS(OwfIndex::deserialize("junk"), Error);
    OwfIndex prod = amplify_direct_product(Family::MULT, 4, 2, rng);
    CHECK_THROWS_AS(prod.serialize(), Error);
}

TEST_CASE("domain bit encoding round trips and rejects junk") {
    SeededRng rng("0c");
    for (Family f : {Family::DL, Family::SQUARING, Family::MULT}) {
        OwfIndex idx = sample_index(f, 10, rng);
        for (int i = 0; i < 20; ++i) {
            DomainElement x = sample_domain(idx, rng);
            BitString enc = encode_domain(idx, x);
            CHECK(enc.size() == encoding_bits(idx));
            auto back = decode_domain(idx, enc);
            REQUIRE(back.has_value());
            CHECK(*back == x);
        }
    }
    // encodings of out-of-domain values decode to nullopt
    OwfIndex mult{Family::MULT, MultParams{4}};
    CHECK(encoding_bits(mult) == 8);
    CHECK(!decode_domain(mult, BitString::from_string("00000011")).has_value()); // x = 0
}

TEST_CASE("direct product evaluates componentwise") {
    SeededRng rng("0d");
    OwfIndex prod = amplify_direct_product(Family::MULT, 4, 3, rng);
    CHECK(prod.family == Family::PRODUCT);
    const auto& comps = std::get<std::vector<OwfIndex>>(prod.params);
    REQUIRE(comps.size() == 3);

    DomainElement x = sample_domain(prod, rng);
    Image y = evaluate(prod, x);
    const auto& tuple = std::get<std::vector<DomainElement>>(x.value);
    const auto& images = std::get<std::vector<Image>>(y.value);
    REQUIRE(images.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(images[i] == evaluate(comps[i], tuple[i]));

    // each component ranges over 15 x 15 factor pairs
    CHECK(domain_size(prod) == Natural(225) * 225 * 225);
    // t = 1 collapses to the base family
    OwfIndex single = amplify_direct_product(Family::MULT, 4, 1, rng);
    CHECK(single.family == Family::MULT);
}

TEST_CASE("product inversion walks the odometer") {
    SeededRng rng("0e");
    OwfIndex prod = amplify_direct_product(Family::MULT, 3, 2, rng);
    DomainElement x{std::vector<DomainElement>{
        DomainElement{std::make_pair(Natural(3), Natural(5))},
        DomainElement{std::make_pair(Natural(2), Natural(7))}}};
    Image y = evaluate(prod, x);
    auto pre = brute_force_invert(prod, y, Natural(1) << 12);
    REQUIRE(pre.has_value());
    CHECK(evaluate(prod, *pre) == y);
}
