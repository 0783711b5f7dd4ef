#include "symfix/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "symfix/error.hpp"

namespace symfix {

namespace {

void require_positive(const std::vector<double>& probs) {
    if (probs.empty()) throw ValidationError("a source needs at least one probability");
    for (double p : probs)
        if (!(p > 0) || !std::isfinite(p))
            throw ValidationError("probabilities must be positive and finite, got " + std::to_string(p));
}

}  // namespace

Source::Source(std::vector<double> probs) : probs_(std::move(probs)) {
    require_positive(probs_);
    const double sum = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (std::abs(sum - 1.0) > kNormalizationTolerance)
        throw ValidationError("probabilities sum to " + std::to_string(sum) + ", not 1");
    std::sort(probs_.begin(), probs_.end(), std::greater<>());
}

Source Source::normalized(std::vector<double> weights) {
    require_positive(weights);
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (double& w : weights) w /= sum;
    return Source(std::move(weights));
}

Source Source::uniform(int n) {
    if (n < 1) throw ValidationError("uniform source needs n >= 1");
    return Source(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

double expected_length(const LengthSequence& l, const Source& s) {
    if (l.size() != s.size())
        throw std::invalid_argument("length sequence has " + std::to_string(l.size()) + " entries but the source has " +
                                    std::to_string(s.size()));
    double e = 0;
    for (std::size_t i = 0; i < l.size(); ++i) e += s.probs()[i] * l[i];
    return e;
}

double entropy(const Source& s) {
    double h = 0;
    for (double p : s.probs()) h -= p * std::log2(p);
    return h;
}

Selection best_code(const Source& s, const std::vector<Code>& candidates) {
    if (candidates.empty()) throw ValidationError("no dominant codes to choose from");
    std::vector<const Code*> order;
    for (const auto& c : candidates) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const Code* a, const Code* b) { return *a < *b; });
    const Code* best = nullptr;
    double best_e = 0;
    for (const Code* c : order) {
        const double e = expected_length(length_sequence(*c), s);
        if (!best || e < best_e - kExpectedLengthTolerance) {
            best = c;
            best_e = e;
        }
    }
    return Selection{*best, best->words(), best_e};
}

Selection best_code(int n, const Source& s, const SearchResult& result) {
    if (result.n != n) throw std::invalid_argument("search result is for n=" + std::to_string(result.n));
    if (s.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("source has " + std::to_string(s.size()) + " symbols, expected " + std::to_string(n));
    return best_code(s, result.dominant_codes());
}

RedundancyCheck check_redundancy(const SearchResult& result, int trials, std::uint64_t seed) {
    RedundancyCheck out;
    out.n = result.n;
    out.trials = trials;
    out.worst_gap = -std::numeric_limits<double>::infinity();
    const auto codes = result.dominant_codes();
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> draw(1.0);
    for (int t = 0; t < trials; ++t) {
        std::vector<double> w(static_cast<std::size_t>(result.n));
        for (double& x : w) x = draw(rng) + 1e-300;
        const Source s = Source::normalized(std::move(w));
        const double gap = best_code(s, codes).expected_length - (2 * entropy(s) + 1);
        out.worst_gap = std::max(out.worst_gap, gap);
        if (gap > 0) ++out.violations;
    }
    return out;
}

}  // namespace symfix
