#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symfix/code.hpp"
#include "symfix/search.hpp"

namespace symfix {

inline constexpr double kNormalizationTolerance = 1e-9;
inline constexpr double kExpectedLengthTolerance = 1e-12;

// Probabilities of a memoryless source, stored non-increasing.
class Source {
public:
    // Throws ValidationError when a probability is not positive and finite or
    // when the sum is farther than kNormalizationTolerance from 1.
    explicit Source(std::vector<double> probs);

    // Divides by the sum first; still rejects non-positive entries.
    static Source normalized(std::vector<double> weights);
    static Source uniform(int n);

    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }

private:
    std::vector<double> probs_;
};

// Sum of p_i * l_i with the largest probability on the shortest length.
// Throws std::invalid_argument on a count mismatch.
double expected_length(const LengthSequence& l, const Source& s);

// Binary entropy in bits.
double entropy(const Source& s);

struct Selection {
    Code code;
    // words[i] is the codeword of the i-th most probable symbol.
    std::vector<Bitstring> assignment;
    double expected_length = 0;
};

// Dominant code of least expected length; near-ties within
// kExpectedLengthTolerance go to the canonically smallest code.
// Throws std::invalid_argument when n or the source size does not match the
// result, and ValidationError when the dominant set is empty.
Selection best_code(int n, const Source& s, const SearchResult& result);
Selection best_code(const Source& s, const std::vector<Code>& candidates);

struct RedundancyCheck {
    int n = 0;
    int trials = 0;
    int violations = 0;
    double worst_gap = 0;  // max of E - (2H + 1); <= 0 when the bound held every time
};

// Draws `trials` random sources and tests E <= 2H + 1 for the best dominant code.
RedundancyCheck check_redundancy(const SearchResult& result, int trials, std::uint64_t seed);

}  // namespace symfix
