#include "psb/natural.hpp"

#include "psb/error.hpp"

namespace psb {

std::string to_hex(const Natural& n) {
    if (n == 0) return "0";
    if (n < 0) throw Error("invalid-natural", "negative value has no Natural serialization");
    static const char* digits = "0123456789abcdef";
    std::string s;
    Natural v = n;
    while (v > 0) {
        s.push_back(digits[static_cast<unsigned>(v & 0xf)]);
        v >>= 4;
    }
    return std::string(s.rbegin(), s.rend());
}

Natural natural_from_hex(const std::string& hex) {
    if (hex.empty()) throw Error("invalid-hex", "empty hex string");
    Natural v = 0;
    for (char c : hex) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw Error("invalid-hex", "bad hex digit '" + std::string(1, c) + "'");
        v = (v << 4) | d;
    }
    return v;
}

std::size_t bit_length(const Natural& n) {
    if (n == 0) return 0;
    return boost::multiprecision::msb(n) + 1;
}

BitString encode_natural(const Natural& n, std::size_t bits) {
    if (bit_length(n) > bits)
        throw Error("invalid-lengths", "value does not fit in " + std::to_string(bits) + " bits");
    BitString out(bits, 0);
    for (std::size_t i = 0; i < bits; ++i)
        out.set(bits - 1 - i, static_cast<int>(boost::multiprecision::bit_test(n, static_cast<unsigned>(i))));
    return out;
}

Natural decode_natural(const BitString& bits) {
    Natural v = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) v = (v << 1) | bits[i];
    return v;
}

} // namespace psb
