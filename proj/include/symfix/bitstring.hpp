#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace symfix {

// A binary word of 1..64 digits packed right-aligned into a 64-bit value.
// Digit 0 is the leftmost (first transmitted) bit and sits at position
// length-1 of the packed value. Comparison is the canonical order used
// everywhere for tie-breaking: shorter words first, then lexicographic.
class Bitstring {
public:
    static constexpr int kMaxLength = 64;

    Bitstring() = default;

    // Throws std::invalid_argument when length is outside [1, 64] or when
    // `bits` has set bits above `length`.
    Bitstring(std::uint64_t bits, int length);

    // Parses an ASCII word over {0,1}. Throws std::invalid_argument.
    static Bitstring parse(std::string_view text);

    // Length-`length` word of a single repeated digit.
    static Bitstring repeat(bool digit, int length);

    int length() const noexcept { return length_; }
    std::uint64_t bits() const noexcept { return bits_; }

    bool digit(int i) const noexcept { return (bits_ >> (length_ - 1 - i)) & 1u; }
    bool first_digit() const noexcept { return digit(0); }

    // The first k digits, 1 <= k <= length.
    Bitstring prefix(int k) const;

    // w.is_prefix_of(w) is true; is_proper_prefix_of excludes equality.
    bool is_prefix_of(const Bitstring& other) const noexcept {
        return length_ <= other.length_ && (other.bits_ >> (other.length_ - length_)) == bits_;
    }
    bool is_proper_prefix_of(const Bitstring& other) const noexcept {
        return length_ < other.length_ && is_prefix_of(other);
    }

    Bitstring reversed() const noexcept;
    Bitstring flipped() const noexcept;

    // Concatenation; throws std::length_error past 64 digits.
    Bitstring operator+(const Bitstring& tail) const;

    std::string str() const;

    friend bool operator==(const Bitstring&, const Bitstring&) = default;
    friend std::strong_ordering operator<=>(const Bitstring& a, const Bitstring& b) noexcept {
        if (auto c = a.length_ <=> b.length_; c != 0) return c;
        return a.bits_ <=> b.bits_;
    }

private:
    std::uint64_t bits_ = 0;
    int length_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Bitstring& w);

struct BitstringHash {
    std::size_t operator()(const Bitstring& w) const noexcept {
        std::uint64_t h = w.bits() * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(w.length()) + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

}  // namespace symfix

template <>
struct std::hash<symfix::Bitstring> : symfix::BitstringHash {};
