#include "symfix/code.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "symfix/bitpal.hpp"
#include "symfix/error.hpp"

namespace symfix {

Code::Code(std::vector<Bitstring> words, int capacity) : words_(std::move(words)), capacity_(capacity) {
    std::sort(words_.begin(), words_.end());
}

Code::Code(std::vector<Bitstring> words) : Code(std::move(words), 0) {
    capacity_ = static_cast<int>(words_.size());
}

Code Code::parse(std::initializer_list<std::string_view> words, int capacity) {
    std::vector<Bitstring> out;
    out.reserve(words.size());
    for (auto w : words) out.push_back(Bitstring::parse(w));
    const int cap = capacity < 0 ? static_cast<int>(out.size()) : capacity;
    return Code(std::move(out), cap);
}

Code Code::parse(const std::vector<std::string>& words, int capacity) {
    std::vector<Bitstring> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(Bitstring::parse(w));
    const int cap = capacity < 0 ? static_cast<int>(out.size()) : capacity;
    return Code(std::move(out), cap);
}

Code Code::from_sorted(std::vector<Bitstring> words, int capacity) {
    Code c;
    c.words_ = std::move(words);
    c.capacity_ = capacity;
    return c;
}

bool Code::contains(const Bitstring& w) const noexcept {
    return std::binary_search(words_.begin(), words_.end(), w);
}

int Code::total_length() const noexcept {
    int total = 0;
    for (const auto& w : words_) total += w.length();
    return total;
}

int Code::max_length() const noexcept { return words_.empty() ? 0 : words_.back().length(); }

Code Code::complemented() const {
    std::vector<Bitstring> out;
    out.reserve(words_.size());
    for (const auto& w : words_) out.push_back(w.flipped());
    return Code(std::move(out), capacity_);
}

std::vector<std::string> Code::strings() const {
    std::vector<std::string> out;
    out.reserve(words_.size());
    for (const auto& w : words_) out.push_back(w.str());
    return out;
}

std::strong_ordering operator<=>(const Code& a, const Code& b) noexcept {
    if (auto c = a.capacity_ <=> b.capacity_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.words_.begin(), a.words_.end(), b.words_.begin(),
                                                  b.words_.end());
}

std::size_t CodeHash::operator()(const Code& c) const noexcept {
    std::size_t h = static_cast<std::size_t>(c.capacity()) * 0x100000001B3ull;
    const BitstringHash wh;
    for (const auto& w : c.words()) h = (h ^ wh(w)) * 0x100000001B3ull;
    return h;
}

LengthSequence::LengthSequence(std::vector<int> lengths) : lengths_(std::move(lengths)) {
    std::sort(lengths_.begin(), lengths_.end());
    prefix_sums_.reserve(lengths_.size());
    std::int64_t running = 0;
    for (int l : lengths_) prefix_sums_.push_back(running += l);
}

std::string LengthSequence::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < lengths_.size(); ++i) os << (i ? "," : "") << lengths_[i];
    os << ')';
    return os.str();
}

std::size_t LengthSequenceHash::operator()(const LengthSequence& l) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int x : l.lengths()) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001B3ull;
    return h;
}

LengthSequence length_sequence(const Code& code) {
    std::vector<int> lengths;
    lengths.reserve(code.size());
    for (const auto& w : code.words()) lengths.push_back(w.length());
    return LengthSequence(std::move(lengths));
}

bool dominates(const LengthSequence& l, const LengthSequence& l_prime) {
    if (l.size() != l_prime.size())
        throw std::invalid_argument("dominance needs sequences of equal count (" + std::to_string(l.size()) +
                                    " vs " + std::to_string(l_prime.size()) + ")");
    if (l == l_prime) return false;
    const auto& a = l.prefix_sums();
    const auto& b = l_prime.prefix_sums();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] < a[i]) return false;
    return true;
}

std::string_view rule_name(Violation::Rule rule) {
    switch (rule) {
        case Violation::Rule::word_count: return "word count";
        case Violation::Rule::duplicate: return "duplicate word";
        case Violation::Rule::not_palindrome: return "not a palindrome";
        case Violation::Rule::forbidden_one: return "contains the word 1";
        case Violation::Rule::prefix_condition: return "prefix condition";
        case Violation::Rule::too_long: return "exceeds length bound";
    }
    return "unknown";
}

std::string Violation::message() const {
    std::string out(rule_name(rule));
    for (std::size_t i = 0; i < words.size(); ++i) out += (i ? ", " : ": ") + words[i].str();
    return out;
}

std::vector<Violation> validate(const Code& code) {
    using Rule = Violation::Rule;
    std::vector<Violation> out;
    const auto& words = code.words();
    if (static_cast<int>(words.size()) != code.capacity()) out.push_back({Rule::word_count, {}});
    for (std::size_t i = 0; i < words.size(); ++i) {
        const Bitstring& w = words[i];
        if (i > 0 && words[i - 1] == w) {
            out.push_back({Rule::duplicate, {w}});
            continue;
        }
        if (!is_palindrome(w)) out.push_back({Rule::not_palindrome, {w}});
        if (w == Bitstring(1, 1)) out.push_back({Rule::forbidden_one, {w}});
        if (w.length() > code.capacity()) out.push_back({Rule::too_long, {w}});
    }
    // Canonical order puts every proper prefix before its extensions.
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i + 1; j < words.size(); ++j)
            if (words[i].is_proper_prefix_of(words[j])) out.push_back({Rule::prefix_condition, {words[i], words[j]}});
    return out;
}

std::uint64_t ArrowStep::alternative_count() const noexcept {
    if (!feasible) return 0;
    const std::uint64_t m = boundary.size();
    std::uint64_t k = std::min<std::uint64_t>(take, m - take);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t num = m - k + i;
        if (result > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
        result = result * num / i;
    }
    return result;
}

ArrowStep arrow_step(const Code& S, const Bitstring& sigma, const std::vector<Bitstring>& nbrs) {
    if (!S.contains(sigma)) throw ValidationError("pivot " + sigma.str() + " is not a word of the code");
    ArrowStep step;
    step.capacity = S.capacity();
    const std::size_t n = static_cast<std::size_t>(S.capacity());

    std::vector<Bitstring> pool;
    pool.reserve(S.size() - 1 + nbrs.size());
    auto rest_end = std::remove_copy(S.words().begin(), S.words().end(), std::back_inserter(pool), sigma);
    (void)rest_end;
    const auto mid = static_cast<std::ptrdiff_t>(pool.size());
    pool.insert(pool.end(), nbrs.begin(), nbrs.end());
    std::inplace_merge(pool.begin(), pool.begin() + mid, pool.end());

    if (pool.size() < n) return step;
    const int boundary_length = pool[n - 1].length();
    for (const Bitstring& w : pool) {
        if (w.length() < boundary_length)
            step.fixed.push_back(w);
        else if (w.length() == boundary_length)
            step.boundary.push_back(w);
        else
            break;
    }
    step.take = n - step.fixed.size();
    step.feasible = true;
    return step;
}

std::vector<Code> double_arrow_all(const Code& S, const Bitstring& sigma) {
    const auto nbrs = neighbors(sigma, S.capacity());
    const ArrowStep step = arrow_step(S, sigma, nbrs);
    std::vector<Code> out;
    step.for_each([&](Code&& c) {
        if (auto v = validate(c); !v.empty())
            throw std::logic_error("transformation produced an invalid code: " + v.front().message());
        out.push_back(std::move(c));
        return true;
    });
    return out;
}

Code double_arrow_canonical(const Code& S, const Bitstring& sigma) {
    const auto nbrs = neighbors(sigma, S.capacity());
    const ArrowStep step = arrow_step(S, sigma, nbrs);
    if (!step.feasible)
        throw ValidationError("pivot " + sigma.str() + " leaves fewer than " + std::to_string(S.capacity()) +
                              " pooled words");
    std::optional<Code> first;
    step.for_each([&](Code&& c) {
        first = std::move(c);
        return false;
    });
    return *first;
}

bool verify_arrow(const Code& S, const Code& S_hat, const Bitstring& sigma) {
    if (!S.contains(sigma)) throw ValidationError("pivot " + sigma.str() + " is not a word of the code");
    const auto nbrs = neighbors(sigma, S.capacity());
    for (const Bitstring& w : S_hat.words()) {
        if (w == sigma) return false;
        if (!S.contains(w) && !std::binary_search(nbrs.begin(), nbrs.end(), w)) return false;
    }
    return true;
}

bool has_root_prefix_property(const Code& code) {
    const int n = code.capacity();
    for (const Bitstring& w : code.words()) {
        bool covered = false;
        for (int i = 1; i <= std::min(n, w.length()) && !covered; ++i) covered = root_word(i).is_prefix_of(w);
        if (!covered) return false;
    }
    return true;
}

}  // namespace symfix
