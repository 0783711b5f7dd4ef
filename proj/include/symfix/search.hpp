#pragma once

#include <cstddef>
#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "symfix/bitstring.hpp"
#include "symfix/code.hpp"

namespace symfix {

enum class SearchMode { exhaustive, optimal_complete };

std::string_view mode_name(SearchMode mode);
// Accepts "exhaustive", "optimal-complete" and "optimal_complete".
std::optional<SearchMode> parse_mode(std::string_view text);

struct PruneConfig {
    SearchMode mode = SearchMode::optimal_complete;
    bool half_index = true;
    bool monotone_max = true;
    bool strict_sum = true;
    bool depth2_dominated = true;
    bool complement_mirror = true;
    // Pivots along a path strictly increase in canonical order.
    bool canonical_order = true;
    // Collapse each code with its complement. Counting only; exhaustive only.
    bool complement_dedup = false;

    static PruneConfig exhaustive();
    static PruneConfig optimal_complete();

    // Exhaustive mode clears every pruning flag.
    PruneConfig normalized() const;

    // Throws std::invalid_argument for combinations the engine rejects.
    void check() const;

    friend bool operator==(const PruneConfig&, const PruneConfig&) = default;
};

struct Budget {
    std::uint64_t max_nodes = 0;  // reached codes; 0 = unlimited
    double max_seconds = 0;       // 0 = unlimited
};

struct SearchOptions {
    PruneConfig config;
    Budget budget;
    int threads = 1;
    // Keep every edge that lies on a shortest path from the root.
    bool record_dag = false;
};

struct TreeEdge {
    std::size_t parent = 0;
    std::size_t child = 0;
    Bitstring pivot;

    friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

struct SearchStats {
    std::uint64_t states_expanded = 0;
    std::uint64_t states_queued = 0;
    std::uint64_t duplicate_states = 0;
    std::uint64_t children_generated = 0;
    std::uint64_t infeasible_pivots = 0;
    std::uint64_t pruned_canonical_order = 0;
    std::uint64_t pruned_half_index = 0;
    std::uint64_t pruned_complement_mirror = 0;
    std::uint64_t pruned_monotone_max = 0;
    std::uint64_t pruned_dead_flag = 0;
    std::uint64_t flags_raised = 0;
    std::uint64_t depth2_cut = 0;
    int levels = 0;

    friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

// Open-addressing set of code ids; the codes themselves live elsewhere and
// are reached through the callbacks.
class CodeIndex {
public:
    // `hash_of(id)` and `matches(id)` describe the stored codes.
    template <class Matches>
    std::optional<std::size_t> find(std::size_t hash, Matches&& matches) const;
    // Adds `id`, which must not already be present.
    template <class HashOf>
    void insert(std::size_t hash, std::size_t id, HashOf&& hash_of);
    std::size_t size() const noexcept { return size_; }

private:
    static constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;
    std::vector<std::uint32_t> slots_;
    std::size_t size_ = 0;
};

struct SearchResult {
    int n = 0;
    PruneConfig config;
    // Discovery order; a code's id is its index here and reached[0] is R_n.
    std::vector<Code> reached;
    std::vector<int> depth;
    // First-discovery parent of every non-root code, ordered by child id.
    std::vector<TreeEdge> tree;
    // Shortest-path edges, only when SearchOptions::record_dag is set.
    std::vector<TreeEdge> dag;
    std::vector<std::size_t> dominant_ids;
    // Sorted by decreasing total, then increasing sequence.
    std::vector<LengthSequence> dominant_sequences;
    SearchStats stats;
    bool complete = true;
    std::string incomplete_reason;

    std::optional<std::size_t> find(const Code& code) const;
    std::vector<Code> dominant_codes() const;
    bool is_dominant(std::size_t id) const;

    CodeIndex index;
};

template <class Matches>
std::optional<std::size_t> CodeIndex::find(std::size_t hash, Matches&& matches) const {
    if (slots_.empty()) return std::nullopt;
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash & mask;; i = (i + 1) & mask) {
        if (slots_[i] == kEmpty) return std::nullopt;
        if (matches(slots_[i])) return slots_[i];
    }
}

template <class HashOf>
void CodeIndex::insert(std::size_t hash, std::size_t id, HashOf&& hash_of) {
    if (id >= kEmpty) throw std::length_error("too many codes for the index");
    if ((size_ + 1) * 2 > slots_.size()) {
        std::vector<std::uint32_t> old(std::max<std::size_t>(16, slots_.size() * 2), kEmpty);
        old.swap(slots_);
        const std::size_t mask = slots_.size() - 1;
        for (std::uint32_t v : old) {
            if (v == kEmpty) continue;
            std::size_t i = hash_of(v) & mask;
            while (slots_[i] != kEmpty) i = (i + 1) & mask;
            slots_[i] = v;
        }
    }
    const std::size_t mask = slots_.size() - 1;
    std::size_t i = hash & mask;
    while (slots_[i] != kEmpty) i = (i + 1) & mask;
    slots_[i] = static_cast<std::uint32_t>(id);
    ++size_;
}

// Breadth-first closure of double_arrow_all from root_code(n).
// Throws RangeError unless 3 <= n <= 40 and std::invalid_argument for a
// rejected configuration. Exceeding the budget returns a partial result with
// complete == false.
SearchResult search(int n, const SearchOptions& options = {});

struct DominantSet {
    std::vector<std::size_t> ids;
    std::vector<LengthSequence> sequences;
};

// Codes whose sequence no other distinct present sequence dominates.
// Throws std::invalid_argument on mixed capacities.
DominantSet dominant_filter(const std::vector<Code>& codes);

// Incremental non-dominated set of length sequences. The final front does
// not depend on insertion order.
class ParetoFront {
public:
    // False when `l` is dominated by or equal to a member.
    bool insert(const LengthSequence& l);
    bool is_dominated(const LengthSequence& l) const;
    // Sorted by decreasing total, then increasing sequence.
    std::vector<LengthSequence> sequences() const;
    std::size_t size() const noexcept { return front_.size(); }

private:
    std::vector<LengthSequence> front_;
};

void sort_by_total_desc(std::vector<LengthSequence>& seqs);

bool prune_half_index(const Bitstring& sigma, int n);
// Complement of s_i with i >= n/2.
bool prune_complement_half_index(const Bitstring& sigma, int n);
bool prune_monotone_max(const Code& parent, const Code& child);
// The pivot when the child's total is not smaller than the parent's.
std::optional<Bitstring> flag_sum_nonincrease(const Code& parent, const Code& child, const Bitstring& pi);

struct DepthOneChild {
    Bitstring pivot;
    Code code;
};
// Every child of root_code(n), pivots in canonical order.
std::vector<DepthOneChild> depth1_children(int n);
// S_prime's sequence is dominated by R_n's or another depth-1 child's.
bool prune_depth2_dominated(int n, const Code& S_prime);

// codes.size() == pivots.size() + 1 and codes[0] is the root.
struct Chain {
    std::vector<Bitstring> pivots;
    std::vector<Code> codes;

    std::size_t length() const noexcept { return pivots.size(); }
    const Code& final_code() const { return codes.back(); }
};

// Follows tree parents from `id` back to the root.
Chain chain_to(const SearchResult& result, std::size_t id);

// Every link is a ⇒ step and codes[0] is root_code(n).
bool is_well_formed(const Chain& chain);

// Every pivot is a proper prefix of some word of the final code.
bool is_shortest_chain(const Chain& chain);

// Replays `order` from root_code(n) trying alternatives with the largest
// overlap with C first. Throws std::invalid_argument when `order` is not a
// prefix-respecting permutation of prefix_palindromes(C); nullopt when no
// sequence of alternatives arrives at C.
std::optional<Chain> replay_with_order(const Code& C, const std::vector<Bitstring>& order);

struct DominantTreeNode {
    LengthSequence sequence;
    Code code;
    std::optional<std::size_t> parent;  // index into nodes
    std::optional<Bitstring> pivot;
    // The parent was found by walking the search tree instead of a direct step.
    bool fallback = false;
};

// One node per dominant sequence, ordered by decreasing total; node 0 is the
// root class. Each class hangs below the dominant class of smallest larger
// total whose representative reaches it in one step.
struct DominantTree {
    std::vector<DominantTreeNode> nodes;
};

DominantTree dominant_tree(const SearchResult& result);

struct ConjectureFinding {
    enum class Clause { not_optimal, mirrored_not_optimal, mirrored_off_path };
    Clause clause;
    Chain chain;  // R_n => ... => S => S' => ... => C, or ... => S => S'' for mirrored clauses
    std::size_t step = 0;  // index of pi in chain.pivots
    std::string detail;
};

std::string_view clause_name(ConjectureFinding::Clause clause);

// Hypothesis instances where a dominant code stands in the conclusion's
// place. Uses the exhaustive closure; throws RangeError unless 3 <= n <= 8.
std::vector<ConjectureFinding> check_conjecture(int n);

}  // namespace symfix
