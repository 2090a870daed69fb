#include "psb/bitstring.hpp"

#include <algorithm>

namespace psb {

namespace {
int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}
} // namespace

BitString BitString::from_string(const std::string& s) {
    BitString out;
    out.bits_.reserve(s.size());
    for (char c : s) {
        if (c == '0') out.bits_.push_back(0);
        else if (c == '1') out.bits_.push_back(1);
        else throw Error("invalid-bitstring", "expected only 0/1, got '" + std::string(1, c) + "'");
    }
    return out;
}

BitString BitString::from_hex(const std::string& hex) {
    BitString out;
    out.bits_.reserve(hex.size() * 4);
    for (char c : hex) {
        int d = hex_digit(c);
        if (d < 0) throw Error("invalid-hex", "bad hex digit '" + std::string(1, c) + "'");
        for (int i = 3; i >= 0; --i) out.bits_.push_back((d >> i) & 1);
    }
    return out;
}

BitString BitString::from_bytes(const std::vector<std::uint8_t>& bytes) {
    BitString out;
    out.bits_.reserve(bytes.size() * 8);
    for (auto b : bytes)
        for (int i = 7; i >= 0; --i) out.bits_.push_back((b >> i) & 1);
    return out;
}

BitString BitString::slice(std::size_t from, std::size_t len) const {
    if (from + len > bits_.size()) throw Error("invalid-slice", "slice out of range");
    BitString out;
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(from),
                     bits_.begin() + static_cast<std::ptrdiff_t>(from + len));
    return out;
}

BitString BitString::concat(const BitString& other) const {
    BitString out = *this;
    out.bits_.insert(out.bits_.end(), other.bits_.begin(), other.bits_.end());
    return out;
}

BitString BitString::operator^(const BitString& other) const {
    if (size() != other.size()) throw Error("invalid-lengths", "xor of unequal-length bitstrings");
    BitString out = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] ^= other.bits_[i];
    return out;
}

int BitString::parity() const {
    return static_cast<int>(count_ones() & 1);
}

std::size_t BitString::count_ones() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

std::string BitString::to_hex() const {
    if (bits_.size() % 4 != 0) throw Error("invalid-lengths", "hex encoding needs a multiple of 4 bits");
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(bits_.size() / 4);
    for (std::size_t i = 0; i < bits_.size(); i += 4) {
        int d = (bits_[i] << 3) | (bits_[i + 1] << 2) | (bits_[i + 2] << 1) | bits_[i + 3];
        s.push_back(digits[d]);
    }
    return s;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
    if (bits_.size() % 8 != 0) throw Error("invalid-lengths", "byte encoding needs a multiple of 8 bits");
    std::vector<std::uint8_t> out(bits_.size() / 8, 0);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        out[i / 8] = static_cast<std::uint8_t>((out[i / 8] << 1) | bits_[i]);
    return out;
}

} // namespace psb
