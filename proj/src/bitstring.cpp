#include "symfix/bitstring.hpp"

#include <ostream>
#include <stdexcept>

namespace symfix {

namespace {

std::uint64_t low_mask(int length) {
    return length >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << length) - 1;
}

std::uint64_t reverse64(std::uint64_t v) {
    v = ((v >> 1) & 0x5555555555555555ull) | ((v & 0x5555555555555555ull) << 1);
    v = ((v >> 2) & 0x3333333333333333ull) | ((v & 0x3333333333333333ull) << 2);
    v = ((v >> 4) & 0x0F0F0F0F0F0F0F0Full) | ((v & 0x0F0F0F0F0F0F0F0Full) << 4);
    return __builtin_bswap64(v);
}

}  // namespace

Bitstring::Bitstring(std::uint64_t bits, int length) : bits_(bits), length_(length) {
    if (length < 1 || length > kMaxLength)
        throw std::invalid_argument("bitstring length must be in [1, 64], got " + std::to_string(length));
    if ((bits & ~low_mask(length)) != 0)
        throw std::invalid_argument("bitstring value has bits above its length");
}

Bitstring Bitstring::parse(std::string_view text) {
    if (text.empty() || text.size() > kMaxLength)
        throw std::invalid_argument("bitstring must have 1..64 digits: '" + std::string(text) + "'");
    std::uint64_t bits = 0;
    for (char c : text) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bitstring may only contain 0 and 1: '" + std::string(text) + "'");
        bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return Bitstring(bits, static_cast<int>(text.size()));
}

Bitstring Bitstring::repeat(bool digit, int length) {
    if (length < 1 || length > kMaxLength)
        throw std::invalid_argument("bitstring length must be in [1, 64]");
    return Bitstring(digit ? low_mask(length) : 0, length);
}

Bitstring Bitstring::prefix(int k) const {
    if (k < 1 || k > length_) throw std::out_of_range("prefix length out of range");
    return Bitstring(bits_ >> (length_ - k), k);
}

Bitstring Bitstring::reversed() const noexcept {
    Bitstring out;
    out.length_ = length_;
    out.bits_ = reverse64(bits_) >> (64 - length_);
    return out;
}

Bitstring Bitstring::flipped() const noexcept {
    Bitstring out;
    out.length_ = length_;
    out.bits_ = ~bits_ & low_mask(length_);
    return out;
}

Bitstring Bitstring::operator+(const Bitstring& tail) const {
    const int total = length_ + tail.length_;
    if (total > kMaxLength) throw std::length_error("concatenation exceeds 64 digits");
    Bitstring out;
    out.length_ = total;
    out.bits_ = (bits_ << tail.length_) | tail.bits_;
    return out;
}

std::string Bitstring::str() const {
    std::string s(static_cast<std::size_t>(length_), '0');
    for (int i = 0; i < length_; ++i)
        if (digit(i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

std::ostream& operator<<(std::ostream& os, const Bitstring& w) { return os << w.str(); }

}  // namespace symfix
