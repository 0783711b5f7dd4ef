#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "symfix/bitstring.hpp"

namespace symfix {

// A set of codewords with a declared capacity n. Words are kept in canonical
// order; the container does not enforce validity so that validate() can
// report on arbitrary input.
class Code {
public:
    Code() = default;
    Code(std::vector<Bitstring> words, int capacity);
    explicit Code(std::vector<Bitstring> words);

    // Capacity defaults to the number of words.
    static Code parse(std::initializer_list<std::string_view> words, int capacity = -1);
    static Code parse(const std::vector<std::string>& words, int capacity = -1);

    // Words must already be in strictly increasing canonical order.
    static Code from_sorted(std::vector<Bitstring> words, int capacity);

    const std::vector<Bitstring>& words() const noexcept { return words_; }
    int capacity() const noexcept { return capacity_; }
    std::size_t size() const noexcept { return words_.size(); }
    bool empty() const noexcept { return words_.empty(); }

    bool contains(const Bitstring& w) const noexcept;
    int total_length() const noexcept;
    int max_length() const noexcept;

    // Every word bitwise complemented; re-sorted.
    Code complemented() const;

    std::vector<std::string> strings() const;

    friend bool operator==(const Code&, const Code&) = default;
    friend std::strong_ordering operator<=>(const Code& a, const Code& b) noexcept;

private:
    std::vector<Bitstring> words_;
    int capacity_ = 0;
};

struct CodeHash {
    std::size_t operator()(const Code& c) const noexcept;
};

// Sorted codeword lengths with exact partial sums.
class LengthSequence {
public:
    LengthSequence() = default;
    // Sorts the input.
    explicit LengthSequence(std::vector<int> lengths);

    const std::vector<int>& lengths() const noexcept { return lengths_; }
    const std::vector<std::int64_t>& prefix_sums() const noexcept { return prefix_sums_; }
    std::size_t size() const noexcept { return lengths_.size(); }
    std::int64_t total() const noexcept { return prefix_sums_.empty() ? 0 : prefix_sums_.back(); }
    int operator[](std::size_t i) const { return lengths_[i]; }

    std::string str() const;

    friend bool operator==(const LengthSequence& a, const LengthSequence& b) { return a.lengths_ == b.lengths_; }
    friend auto operator<=>(const LengthSequence& a, const LengthSequence& b) { return a.lengths_ <=> b.lengths_; }

private:
    std::vector<int> lengths_;
    std::vector<std::int64_t> prefix_sums_;
};

struct LengthSequenceHash {
    std::size_t operator()(const LengthSequence& l) const noexcept;
};

LengthSequence length_sequence(const Code& code);

// True when l != l_prime and every partial sum of l_prime is >= the matching
// partial sum of l, i.e. l_prime never needs to be considered for an optimal
// code. Throws std::invalid_argument when the counts differ.
bool dominates(const LengthSequence& l, const LengthSequence& l_prime);

struct Violation {
    enum class Rule { word_count, duplicate, not_palindrome, forbidden_one, prefix_condition, too_long };
    Rule rule;
    std::vector<Bitstring> words;

    std::string message() const;
};

std::string_view rule_name(Violation::Rule rule);

// Empty when the code belongs to S_n for its declared capacity n.
std::vector<Violation> validate(const Code& code);
inline bool is_valid(const Code& code) { return validate(code).empty(); }

// The pooled set (S \ {sigma}) u N_n(sigma) split at the boundary length of
// its n shortest words: every `fixed` word is kept, and any `take` of the
// `boundary` words complete a result.
struct ArrowStep {
    int capacity = 0;
    std::vector<Bitstring> fixed;
    std::vector<Bitstring> boundary;
    std::size_t take = 0;
    bool feasible = false;

    // Binomial(boundary, take), saturating at UINT64_MAX.
    std::uint64_t alternative_count() const noexcept;

    // Calls f(Code&&) for each result, boundary subsets in lexicographic
    // index order so the first one uses the canonically smallest words.
    // Stops early when f returns false.
    template <class F>
    void for_each(F&& f) const;
};

// `nbrs` must be neighbors(sigma, S.capacity()). Throws ValidationError when
// sigma is not a word of S.
ArrowStep arrow_step(const Code& S, const Bitstring& sigma, const std::vector<Bitstring>& nbrs);

// Every code related to S by the shortest-n-words transformation at sigma;
// results are validated. Empty when the pool holds fewer than n words.
std::vector<Code> double_arrow_all(const Code& S, const Bitstring& sigma);

// The member of double_arrow_all with canonically smallest boundary words.
// Throws ValidationError when the result set is empty.
Code double_arrow_canonical(const Code& S, const Bitstring& sigma);

// Every word of S_hat lies in (S \ {sigma}) u N_n(sigma).
bool verify_arrow(const Code& S, const Code& S_hat, const Bitstring& sigma);

// Every word has a word of root_code(n) as a (not necessarily proper) prefix.
bool has_root_prefix_property(const Code& code);

template <class F>
void ArrowStep::for_each(F&& f) const {
    if (!feasible) return;
    const std::size_t m = boundary.size();
    std::vector<std::size_t> idx(take);
    for (std::size_t i = 0; i < take; ++i) idx[i] = i;
    while (true) {
        std::vector<Bitstring> words;
        words.reserve(fixed.size() + take);
        words.insert(words.end(), fixed.begin(), fixed.end());
        for (std::size_t i : idx) words.push_back(boundary[i]);
        if (!f(Code::from_sorted(std::move(words), capacity))) return;
        // next combination
        std::size_t i = take;
        while (i > 0 && idx[i - 1] == m - take + (i - 1)) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < take; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace symfix
