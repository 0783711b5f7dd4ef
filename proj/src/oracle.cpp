#include "symfix/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <string>
#include <thread>
#include <unordered_set>

#include "symfix/error.hpp"

namespace symfix {

namespace {

void require_oracle_range(int n) {
    if (n < kOracleMinN || n > kOracleMaxN)
        throw RangeError("oracle supports " + std::to_string(kOracleMinN) + " <= n <= " +
                         std::to_string(kOracleMaxN) + ", got " + std::to_string(n));
}

std::uint64_t all_bits(std::size_t count) {
    return count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
}

// Depth-first over increasing (or decreasing) word indices. `key` packs the
// length histogram, four bits per length. The last word is handed over in
// batches: leaf(chosen, key, options) with every bit of `options` a valid
// final word of one length.
template <class Leaf>
void descend(const PalindromeUniverse& u, EnumerationOrder order, std::uint64_t avail, std::uint64_t chosen,
             std::uint64_t key, int k, Leaf& leaf) {
    const int n = u.capacity();
    if (k == n) {
        leaf(chosen, key, std::uint64_t{0});
        return;
    }
    if (__builtin_popcountll(avail) < n - k) return;
    if (k == n - 1) {
        for (int step = 0; step < n; ++step) {
            const int len = order == EnumerationOrder::canonical ? step + 1 : n - step;
            if (const std::uint64_t options = avail & u.length_masks()[static_cast<std::size_t>(len)])
                leaf(chosen, key + (std::uint64_t{1} << (4 * (len - 1))), options);
        }
        return;
    }
    const auto& conf = u.conflicts();
    const auto& words = u.words();
    while (avail) {
        int i;
        if (order == EnumerationOrder::canonical) {
            i = __builtin_ctzll(avail);
            avail &= avail - 1;
        } else {
            i = 63 - __builtin_clzll(avail);
            avail &= ~(std::uint64_t{1} << i);
        }
        const std::uint64_t bit = std::uint64_t{1} << i;
        descend(u, order, avail & ~conf[i], chosen | bit, key + (std::uint64_t{1} << (4 * (words[i].length() - 1))),
                k + 1, leaf);
        if (__builtin_popcountll(avail) < n - k) return;
    }
}

// Expands a batch into single codes in the requested order.
template <class F>
void each_option(EnumerationOrder order, std::uint64_t chosen, std::uint64_t options, F&& f) {
    if (options == 0) {
        f(chosen);
        return;
    }
    while (options) {
        int i;
        if (order == EnumerationOrder::canonical) {
            i = __builtin_ctzll(options);
            options &= options - 1;
        } else {
            i = 63 - __builtin_clzll(options);
            options &= ~(std::uint64_t{1} << i);
        }
        f(chosen | (std::uint64_t{1} << i));
    }
}

LengthSequence sequence_of_key(std::uint64_t key, int n) {
    std::vector<int> lengths;
    for (int len = 1; len <= n; ++len)
        for (std::uint64_t c = (key >> (4 * (len - 1))) & 0xF; c > 0; --c) lengths.push_back(len);
    return LengthSequence(std::move(lengths));
}

// Runs `make_leaf()` per shard of first words, `threads` shards at a time.
template <class MakeLeaf, class Merge>
void sharded(const PalindromeUniverse& u, EnumerationOrder order, int threads, MakeLeaf make_leaf, Merge merge) {
    const std::size_t count = u.words().size();
    std::vector<int> firsts(count);
    for (std::size_t i = 0; i < count; ++i) firsts[i] = static_cast<int>(i);
    if (order == EnumerationOrder::reversed) std::reverse(firsts.begin(), firsts.end());
    const auto run_shard = [&](int i, auto& leaf) {
        const std::uint64_t higher = order == EnumerationOrder::canonical ? ~all_bits(static_cast<std::size_t>(i) + 1)
                                                                          : all_bits(static_cast<std::size_t>(i));
        const std::uint64_t avail = all_bits(count) & higher & ~u.conflicts()[static_cast<std::size_t>(i)];
        descend(u, order, avail, std::uint64_t{1} << i,
                std::uint64_t{1} << (4 * (u.words()[static_cast<std::size_t>(i)].length() - 1)), 1, leaf);
    };
    const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
    for (std::size_t base = 0; base < count; base += workers) {
        const std::size_t batch = std::min(workers, count - base);
        std::vector<decltype(make_leaf())> leaves;
        for (std::size_t w = 0; w < batch; ++w) leaves.push_back(make_leaf());
        if (batch == 1) {
            run_shard(firsts[base], leaves[0]);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < batch; ++w)
                pool.emplace_back([&, w] { run_shard(firsts[base + w], leaves[w]); });
            for (auto& t : pool) t.join();
        }
        for (auto& leaf : leaves) merge(leaf);
    }
}

}  // namespace

PalindromeUniverse::PalindromeUniverse(int n) : n_(n) {
    require_oracle_range(n);
    // Plain string scan, independent of the mirrored constructions elsewhere.
    for (int len = 1; len <= n; ++len) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
            std::string s;
            for (int b = len - 1; b >= 0; --b) s += static_cast<char>('0' + ((v >> b) & 1));
            if (s == "1" || !std::equal(s.begin(), s.end(), s.rbegin())) continue;
            words_.push_back(Bitstring::parse(s));
        }
    }
    length_masks_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < words_.size(); ++i)
        length_masks_[static_cast<std::size_t>(words_[i].length())] |= std::uint64_t{1} << i;
    conflicts_.assign(words_.size(), 0);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        const std::string a = words_[i].str();
        for (std::size_t j = 0; j < words_.size(); ++j) {
            const std::string b = words_[j].str();
            if (a.compare(0, std::min(a.size(), b.size()), b, 0, std::min(a.size(), b.size())) == 0)
                conflicts_[i] |= std::uint64_t{1} << j;
        }
    }
}

Code PalindromeUniverse::decode(std::uint64_t mask) const {
    std::vector<Bitstring> out;
    for (std::uint64_t m = mask; m; m &= m - 1) out.push_back(words_[static_cast<std::size_t>(__builtin_ctzll(m))]);
    return Code::from_sorted(std::move(out), n_);
}

void for_each_code_mask(const PalindromeUniverse& u, EnumerationOrder order,
                        const std::function<void(std::uint64_t)>& f) {
    auto leaf = [&](std::uint64_t chosen, std::uint64_t, std::uint64_t options) { each_option(order, chosen, options, f); };
    descend(u, order, all_bits(u.words().size()), 0, 0, 0, leaf);
}

void enumerate_all_codes(int n, const std::function<void(const Code&)>& f, EnumerationOrder order) {
    const PalindromeUniverse u(n);
    for_each_code_mask(u, order, [&](std::uint64_t mask) { f(u.decode(mask)); });
}

std::uint64_t count_codes(int n) {
    const PalindromeUniverse u(n);
    std::uint64_t total = 0;
    auto leaf = [&](std::uint64_t, std::uint64_t, std::uint64_t options) {
        total += options ? static_cast<std::uint64_t>(__builtin_popcountll(options)) : 1;
    };
    descend(u, EnumerationOrder::canonical, all_bits(u.words().size()), 0, 0, 0, leaf);
    return total;
}

OracleReport oracle_dominant(int n, EnumerationOrder order, int threads) {
    const auto start = std::chrono::steady_clock::now();
    const PalindromeUniverse u(n);
    OracleReport report;
    report.n = n;

    // Pass 1: distinct length histograms.
    struct Histograms {
        std::unordered_set<std::uint64_t> keys;
        std::uint64_t count = 0;
        void operator()(std::uint64_t, std::uint64_t key, std::uint64_t options) {
            count += options ? static_cast<std::uint64_t>(__builtin_popcountll(options)) : 1;
            keys.insert(key);
        }
    };
    std::unordered_set<std::uint64_t> keys;
    sharded(u, order, threads, [] { return Histograms{}; }, [&](Histograms& h) {
        report.total_codes += h.count;
        keys.insert(h.keys.begin(), h.keys.end());
    });
    report.distinct_sequences = keys.size();

    std::vector<LengthSequence> seqs;
    std::vector<std::uint64_t> key_list(keys.begin(), keys.end());
    std::sort(key_list.begin(), key_list.end());
    for (auto k : key_list) seqs.push_back(sequence_of_key(k, n));
    std::unordered_set<std::uint64_t> dominant_keys;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < seqs.size() && !dominated; ++j) dominated = dominates(seqs[j], seqs[i]);
        if (!dominated) {
            dominant_keys.insert(key_list[i]);
            report.dominant_sequences.push_back(seqs[i]);
        }
    }
    sort_by_total_desc(report.dominant_sequences);

    // Pass 2: the codes realizing a dominant histogram.
    struct Collect {
        const std::unordered_set<std::uint64_t>* wanted;
        std::vector<std::uint64_t> masks;
        EnumerationOrder order;
        void operator()(std::uint64_t chosen, std::uint64_t key, std::uint64_t options) {
            if (wanted->count(key)) each_option(order, chosen, options, [&](std::uint64_t m) { masks.push_back(m); });
        }
    };
    std::vector<std::uint64_t> masks;
    sharded(u, order, threads, [&] { return Collect{&dominant_keys, {}, order}; },
            [&](Collect& c) { masks.insert(masks.end(), c.masks.begin(), c.masks.end()); });
    for (auto m : masks) report.dominant_codes.push_back(u.decode(m));
    std::sort(report.dominant_codes.begin(), report.dominant_codes.end());

    const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start;
    report.elapsed_seconds = spent.count();
    return report;
}

namespace {

template <class T>
void set_differences(std::vector<T> a, std::vector<T> b, std::vector<T>& a_only, std::vector<T>& b_only) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(a_only));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(b_only));
}

}  // namespace

Discrepancy compare_with_search(const OracleReport& oracle, const SearchResult& result) {
    if (oracle.n != result.n) throw std::invalid_argument("oracle and search capacities differ");
    Discrepancy d;
    d.n = oracle.n;
    d.config = result.config;
    d.search_complete = result.complete;
    set_differences(oracle.dominant_sequences, result.dominant_sequences, d.oracle_only_sequences,
                    d.search_only_sequences);
    std::vector<Code> found = result.dominant_codes();
    if (result.config.complement_dedup) {
        // Each stored code stands for its complement too, when that is a member of S_n.
        const std::size_t k = found.size();
        for (std::size_t i = 0; i < k; ++i)
            if (Code c = found[i].complemented(); is_valid(c)) found.push_back(std::move(c));
        std::sort(found.begin(), found.end());
        found.erase(std::unique(found.begin(), found.end()), found.end());
    }
    set_differences(oracle.dominant_codes, found, d.oracle_only_codes, d.search_only_codes);
    sort_by_total_desc(d.oracle_only_sequences);
    sort_by_total_desc(d.search_only_sequences);
    return d;
}

Discrepancy compare_with_search(int n, const PruneConfig& config, int threads) {
    require_oracle_range(n);
    const OracleReport oracle = oracle_dominant(n, EnumerationOrder::canonical, threads);
    SearchOptions opts;
    opts.config = config;
    opts.threads = threads;
    return compare_with_search(oracle, search(n, opts));
}

}  // namespace symfix
