#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "psb/error.hpp"

namespace psb {

// Ordered finite sequence of bits. Index 0 is the most significant /
// first-emitted bit everywhere in the repo.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n, int fill = 0) : bits_(n, static_cast<std::uint8_t>(fill != 0)) {}
    explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        for (auto& b : bits_) b = (b != 0);
    }

    static BitString from_string(const std::string& zeros_ones);
    static BitString from_hex(const std::string& hex);   // 4 bits per digit, MSB first
    static BitString from_bytes(const std::vector<std::uint8_t>& bytes); // MSB-first per byte

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    int operator[](std::size_t i) const { return bits_[i]; }
    void set(std::size_t i, int v) { bits_[i] = (v != 0); }
    void push_back(int v) { bits_.push_back(v != 0); }

    BitString slice(std::size_t from, std::size_t len) const;
    BitString concat(const BitString& other) const;
    BitString operator^(const BitString& other) const;
    int parity() const;
    std::size_t count_ones() const;

    bool operator==(const BitString& other) const = default;

    std::string to_string() const;  // "0101..."
    std::string to_hex() const;     // size must be a multiple of 4
    std::vector<std::uint8_t> to_bytes() const; // size must be a multiple of 8

    const std::vector<std::uint8_t>& raw() const { return bits_; }

private:
    std::vector<std::uint8_t> bits_;
};

} // namespace psb
