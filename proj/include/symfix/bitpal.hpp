#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "symfix/bitstring.hpp"

namespace symfix {

class Code;

bool is_palindrome(const Bitstring& w) noexcept;

// Bitwise 0 <-> 1 flip of every digit.
Bitstring complement(const Bitstring& w) noexcept;

// Longest strict prefix of w that is a palindrome; nullopt for one-digit words.
std::optional<Bitstring> longest_palindromic_proper_prefix(const Bitstring& w);

// All 2^ceil(L/2) palindromes of length L in canonical order.
// Throws RangeError outside [1, 64] and for L > 48, where the listing cannot
// be materialized.
std::vector<Bitstring> enumerate_palindromes(int length);

// Palindromes w with |sigma| < |w| <= n whose longest palindromic proper
// prefix is exactly sigma, sorted canonically. Throws ValidationError when
// sigma is not a palindrome and RangeError when n is outside [1, 64].
std::vector<Bitstring> neighbors(const Bitstring& sigma, int n);

// Palindromes of length <= n having sigma as a strict prefix, sorted.
std::vector<Bitstring> descendants(const Bitstring& sigma, int n);

// s_i of the root code: "0" for i == 1, "1 0^(i-2) 1" otherwise.
Bitstring root_word(int i);

// Index i with root_word(i) == w, or nullopt.
std::optional<int> root_index(const Bitstring& w) noexcept;

// {0, 11, 101, 1001, ...} with n codewords. Throws RangeError unless 3 <= n <= 64.
Code root_code(int n);

// n palindromes of length n that begin and end with 0, grouped in clusters:
// cluster 1 is all zeros; cluster j >= 2 holds j-1 words whose left half
// repeats the block 0^k 1^(j-k), for j up to n/2. When those run out (only
// at n = 8) the rest are the smallest unused palindromes with left half
// starting in 0. Throws RangeError unless n is even and 8 <= n <= 64.
Code cluster_code(int n);

// Palindromes other than "1" that are strict prefixes of some codeword.
std::vector<Bitstring> prefix_palindromes(const Code& code);

// Number of distinct members of prefix_palindromes(code).
std::size_t count_palindromic_proper_prefixes(const Code& code);

// Memoized neighbors()/descendants(). Lookups are safe from several threads:
// readers share the lock, a miss computes outside the lock and inserts once.
class NeighborCache {
public:
    const std::vector<Bitstring>& neighbors(const Bitstring& sigma, int n);

    std::size_t size() const;

private:
    mutable std::shared_mutex mutex_;
    std::map<std::pair<Bitstring, int>, std::vector<Bitstring>> table_;
};

}  // namespace symfix
