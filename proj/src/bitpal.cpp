#include "symfix/bitpal.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "symfix/code.hpp"
#include "symfix/error.hpp"

namespace symfix {

namespace {

// Palindrome of length `length` whose first ceil(length/2) digits are `half`.
Bitstring mirror(const Bitstring& half, int length) {
    const int tail = length / 2;
    if (tail == 0) return half;
    return half + half.prefix(tail).reversed();
}

void require_palindrome(const Bitstring& sigma) {
    if (!is_palindrome(sigma)) throw ValidationError("not a palindrome: " + sigma.str());
}

void require_capacity(int n) {
    if (n < 1 || n > Bitstring::kMaxLength)
        throw RangeError("length bound must be in [1, 64], got " + std::to_string(n));
}

// Palindromes of exactly `length` digits having sigma as a prefix.
template <class F>
void for_each_extension(const Bitstring& sigma, int length, F&& f) {
    const int half = (length + 1) / 2;
    if (sigma.length() >= half) {
        const Bitstring w = mirror(sigma.prefix(half), length);
        if (sigma.is_prefix_of(w)) f(w);
        return;
    }
    const int free_bits = half - sigma.length();
    if (free_bits > 30) throw RangeError("palindrome extension set too large to enumerate");
    const std::uint64_t count = std::uint64_t{1} << free_bits;
    for (std::uint64_t v = 0; v < count; ++v) {
        const Bitstring left((sigma.bits() << free_bits) | v, half);
        f(mirror(left, length));
    }
}

}  // namespace

bool is_palindrome(const Bitstring& w) noexcept { return w.reversed() == w; }

Bitstring complement(const Bitstring& w) noexcept { return w.flipped(); }

std::optional<Bitstring> longest_palindromic_proper_prefix(const Bitstring& w) {
    for (int k = w.length() - 1; k >= 1; --k) {
        Bitstring p = w.prefix(k);
        if (is_palindrome(p)) return p;
    }
    return std::nullopt;
}

std::vector<Bitstring> enumerate_palindromes(int length) {
    if (length < 1 || length > Bitstring::kMaxLength)
        throw RangeError("palindrome length must be in [1, 64], got " + std::to_string(length));
    const int half = (length + 1) / 2;
    if (half > 24) throw RangeError("too many palindromes of length " + std::to_string(length) + " to list");
    std::vector<Bitstring> out;
    out.reserve(std::size_t{1} << half);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << half); ++v)
        out.push_back(mirror(Bitstring(v, half), length));
    return out;
}

std::vector<Bitstring> descendants(const Bitstring& sigma, int n) {
    require_palindrome(sigma);
    require_capacity(n);
    std::vector<Bitstring> out;
    for (int length = sigma.length() + 1; length <= n; ++length)
        for_each_extension(sigma, length, [&](const Bitstring& w) { out.push_back(w); });
    return out;
}

std::vector<Bitstring> neighbors(const Bitstring& sigma, int n) {
    require_palindrome(sigma);
    require_capacity(n);
    std::vector<Bitstring> out;
    for (int length = sigma.length() + 1; length <= n; ++length) {
        for_each_extension(sigma, length, [&](const Bitstring& w) {
            for (int k = w.length() - 1; k > sigma.length(); --k)
                if (is_palindrome(w.prefix(k))) return;
            out.push_back(w);
        });
    }
    return out;
}

Bitstring root_word(int i) {
    if (i < 1 || i > Bitstring::kMaxLength) throw RangeError("root word index out of range");
    if (i == 1) return Bitstring(0, 1);
    return Bitstring((std::uint64_t{1} << (i - 1)) | 1u, i);
}

std::optional<int> root_index(const Bitstring& w) noexcept {
    if (w.length() == 1) return w.bits() == 0 ? std::optional<int>(1) : std::nullopt;
    if (w.bits() == ((std::uint64_t{1} << (w.length() - 1)) | 1u)) return w.length();
    return std::nullopt;
}

Code root_code(int n) {
    if (n < 3 || n > Bitstring::kMaxLength)
        throw RangeError("root code needs 3 <= n <= 64, got " + std::to_string(n));
    std::vector<Bitstring> words;
    words.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) words.push_back(root_word(i));
    return Code::from_sorted(std::move(words), n);
}

Code cluster_code(int n) {
    if (n % 2 != 0) throw RangeError("cluster code needs an even n, got " + std::to_string(n));
    if (n < 8 || n > Bitstring::kMaxLength)
        throw RangeError("cluster code needs 8 <= n <= 64, got " + std::to_string(n));
    const int half = n / 2;
    std::vector<Bitstring> words{Bitstring::repeat(false, n)};
    // Past j = half every truncated block repeats an earlier left half.
    for (int j = 2; j <= half && static_cast<int>(words.size()) < n; ++j) {
        for (int k = 1; k < j && static_cast<int>(words.size()) < n; ++k) {
            std::uint64_t left = 0;
            for (int i = 0; i < half; ++i) left = (left << 1) | ((i % j) >= k ? 1u : 0u);
            words.push_back(mirror(Bitstring(left, half), n));
        }
    }
    // Short only for n = 8: fill with the smallest unused 0-led palindromes.
    for (std::uint64_t v = 0; static_cast<int>(words.size()) < n; ++v) {
        const Bitstring w = mirror(Bitstring(v, half), n);
        if (std::find(words.begin(), words.end(), w) == words.end()) words.push_back(w);
    }
    std::sort(words.begin(), words.end());
    if (std::adjacent_find(words.begin(), words.end()) != words.end())
        throw std::logic_error("cluster code construction produced a duplicate word");
    return Code::from_sorted(std::move(words), n);
}

std::vector<Bitstring> prefix_palindromes(const Code& code) {
    const Bitstring one(1, 1);
    std::set<Bitstring> found;
    for (const Bitstring& w : code.words())
        for (int k = 1; k < w.length(); ++k) {
            Bitstring p = w.prefix(k);
            if (p != one && is_palindrome(p)) found.insert(p);
        }
    return {found.begin(), found.end()};
}

std::size_t count_palindromic_proper_prefixes(const Code& code) { return prefix_palindromes(code).size(); }

const std::vector<Bitstring>& NeighborCache::neighbors(const Bitstring& sigma, int n) {
    const auto key = std::make_pair(sigma, n);
    {
        std::shared_lock lock(mutex_);
        if (auto it = table_.find(key); it != table_.end()) return it->second;
    }
    auto computed = symfix::neighbors(sigma, n);
    std::unique_lock lock(mutex_);
    return table_.try_emplace(key, std::move(computed)).first->second;
}

std::size_t NeighborCache::size() const {
    std::shared_lock lock(mutex_);
    return table_.size();
}

}  // namespace symfix
