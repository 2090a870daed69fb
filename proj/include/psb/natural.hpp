#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "psb/bitstring.hpp"

namespace psb {

// Arbitrary-precision non-negative integer. cpp_int is canonical by
// construction; all repo operations keep values >= 0.
using Natural = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Serialization used everywhere: lowercase big-endian hex, no leading
// zeros, "0" for zero.
std::string to_hex(const Natural& n);
Natural natural_from_hex(const std::string& hex);

std::size_t bit_length(const Natural& n); // bit_length(0) == 0

// Exactly `bits` output bits, MSB first, left-padded with zeros.
// Requires n < 2^bits.
BitString encode_natural(const Natural& n, std::size_t bits);
Natural decode_natural(const BitString& bits);

} // namespace psb
