#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "psb/bitstring.hpp"
#include "psb/natural.hpp"
#include "psb/rng.hpp"

namespace psb {

enum class Family { DL, SQUARING, AJTAI, MULT, PRODUCT };

std::string family_name(Family f);

struct DlParams {
    Natural p; // safe prime
    Natural g; // verified generator
};

struct SquaringParams {
    Natural n; // odd composite
};

struct AjtaiParams {
    std::size_t rows = 0;           // n
    std::size_t cols = 0;           // m
    Natural q;                      // modulus, prime
    bool toy_mode = false;          // relaxed constraints, marked insecure
    std::vector<Natural> matrix;    // row-major rows x cols, entries < q

    // Honest parameters must satisfy n*log2(q) < m <= q/(2n^4), q prime.
    void validate(SeededRng& rng) const;
};

struct MultParams {
    std::size_t bits = 0; // per-factor input bit length, >= 2
};

struct OwfIndex;
using IndexParams =
    std::variant<DlParams, SquaringParams, AjtaiParams, MultParams, std::vector<OwfIndex>>;

struct OwfIndex {
    Family family;
    IndexParams params;

    std::string serialize() const; // line-oriented `name = value` text
    static OwfIndex deserialize(const std::string& text);
};

// Family-tagged domain element.
struct DomainElement {
    // Natural: DL or SQUARING; BitString: AJTAI; pair: MULT; vector: PRODUCT.
    std::variant<Natural, BitString, std::pair<Natural, Natural>, std::vector<DomainElement>> value;

    bool operator==(const DomainElement& other) const = default;
};

// Image of an evaluation. AJTAI yields one Natural per matrix row.
struct Image {
    std::variant<Natural, std::vector<Natural>, std::vector<Image>> value;

    bool operator==(const Image& other) const = default;
    std::string serialize() const;
};

// Def-5 interface: index sampler, domain sampler, evaluator.
OwfIndex sample_index(Family family, std::size_t k, SeededRng& rng);
OwfIndex make_ajtai_index(std::size_t rows, std::size_t cols, const Natural& q, bool toy_mode,
                          SeededRng& rng);

DomainElement sample_domain(const OwfIndex& index, SeededRng& rng);
Image evaluate(const OwfIndex& index, const DomainElement& x);

// Exhaustive scan in canonical domain order (ascending integers, tuples
// lexicographic); first preimage of y or nullopt. Test oracle only.
std::optional<DomainElement> brute_force_invert(const OwfIndex& index, const Image& y,
                                                const Natural& bound);

Natural domain_size(const OwfIndex& index);
DomainElement domain_element_at(const OwfIndex& index, const Natural& ordinal);

// Bit encoding of domain elements: exactly encoding_bits(index) bits,
// MSB first, left-padded. Used by the hard-core machinery.
std::size_t encoding_bits(const OwfIndex& index);
BitString encode_domain(const OwfIndex& index, const DomainElement& x);
std::optional<DomainElement> decode_domain(const OwfIndex& index, const BitString& bits);

// Direct product f^t over t independently sampled indices.
OwfIndex amplify_direct_product(Family family, std::size_t k, std::size_t t, SeededRng& rng);

} // namespace psb
