#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "symfix/code.hpp"
#include "symfix/search.hpp"

namespace symfix {

inline constexpr int kOracleMinN = 3;
inline constexpr int kOracleMaxN = 8;

// Every palindrome of length <= n apart from "1", in canonical order, with
// prefix-conflict masks. A code is a mask over `words`.
class PalindromeUniverse {
public:
    // Throws RangeError unless kOracleMinN <= n <= kOracleMaxN.
    explicit PalindromeUniverse(int n);

    int capacity() const noexcept { return n_; }
    const std::vector<Bitstring>& words() const noexcept { return words_; }
    // Bit j of conflicts()[i]: words i and j are equal or one prefixes the other.
    const std::vector<std::uint64_t>& conflicts() const noexcept { return conflicts_; }
    // Bit i of length_masks()[L]: word i has length L.
    const std::vector<std::uint64_t>& length_masks() const noexcept { return length_masks_; }

    Code decode(std::uint64_t mask) const;

private:
    int n_;
    std::vector<Bitstring> words_;
    std::vector<std::uint64_t> conflicts_;
    std::vector<std::uint64_t> length_masks_;
};

enum class EnumerationOrder { canonical, reversed };

// Calls f(mask) for every member of S_n. Canonical order emits codes in
// increasing lexicographic order of their word indices.
void for_each_code_mask(const PalindromeUniverse& u, EnumerationOrder order,
                        const std::function<void(std::uint64_t)>& f);

// Every member of S_n exactly once.
void enumerate_all_codes(int n, const std::function<void(const Code&)>& f,
                         EnumerationOrder order = EnumerationOrder::canonical);

std::uint64_t count_codes(int n);

struct OracleReport {
    int n = 0;
    std::uint64_t total_codes = 0;
    std::uint64_t distinct_sequences = 0;
    // Sorted by decreasing total.
    std::vector<LengthSequence> dominant_sequences;
    // Canonical order.
    std::vector<Code> dominant_codes;
    double elapsed_seconds = 0;
};

OracleReport oracle_dominant(int n, EnumerationOrder order = EnumerationOrder::canonical, int threads = 1);

struct Discrepancy {
    int n = 0;
    PruneConfig config;
    bool search_complete = true;
    std::vector<LengthSequence> oracle_only_sequences;
    std::vector<LengthSequence> search_only_sequences;
    std::vector<Code> oracle_only_codes;
    std::vector<Code> search_only_codes;

    bool sequences_match() const { return oracle_only_sequences.empty() && search_only_sequences.empty(); }
    bool codes_match() const { return oracle_only_codes.empty() && search_only_codes.empty(); }
    bool empty() const { return sequences_match() && codes_match(); }
};

Discrepancy compare_with_search(int n, const PruneConfig& config, int threads = 1);
Discrepancy compare_with_search(const OracleReport& oracle, const SearchResult& result);

}  // namespace symfix
