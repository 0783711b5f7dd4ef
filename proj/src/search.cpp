#include "symfix/search.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "symfix/bitpal.hpp"
#include "symfix/error.hpp"

namespace symfix {

std::string_view mode_name(SearchMode mode) {
    return mode == SearchMode::exhaustive ? "exhaustive" : "optimal-complete";
}

std::optional<SearchMode> parse_mode(std::string_view text) {
    if (text == "exhaustive") return SearchMode::exhaustive;
    if (text == "optimal-complete" || text == "optimal_complete") return SearchMode::optimal_complete;
    return std::nullopt;
}

PruneConfig PruneConfig::exhaustive() { return PruneConfig{SearchMode::exhaustive}.normalized(); }

PruneConfig PruneConfig::optimal_complete() { return PruneConfig{}; }

PruneConfig PruneConfig::normalized() const {
    PruneConfig out = *this;
    if (mode == SearchMode::exhaustive) {
        out.half_index = out.monotone_max = out.strict_sum = false;
        out.depth2_dominated = out.complement_mirror = out.canonical_order = false;
    }
    return out;
}

void PruneConfig::check() const {
    if (complement_dedup && mode != SearchMode::exhaustive)
        throw std::invalid_argument("complement deduplication is only available in exhaustive mode");
}

// ---------------------------------------------------------------------------
// Dominance

void sort_by_total_desc(std::vector<LengthSequence>& seqs) {
    std::sort(seqs.begin(), seqs.end(), [](const LengthSequence& a, const LengthSequence& b) {
        if (a.total() != b.total()) return a.total() > b.total();
        return a < b;
    });
}

bool ParetoFront::is_dominated(const LengthSequence& l) const {
    for (const auto& m : front_)
        if (dominates(m, l)) return true;
    return false;
}

bool ParetoFront::insert(const LengthSequence& l) {
    for (const auto& m : front_)
        if (m == l || dominates(m, l)) return false;
    front_.erase(std::remove_if(front_.begin(), front_.end(), [&](const LengthSequence& m) { return dominates(l, m); }),
                 front_.end());
    front_.push_back(l);
    return true;
}

std::vector<LengthSequence> ParetoFront::sequences() const {
    auto out = front_;
    sort_by_total_desc(out);
    return out;
}

namespace {

// Dominators sort first: a dominating sequence has no larger prefix sums.
bool dominance_order(const LengthSequence& a, const LengthSequence& b) {
    if (a.total() != b.total()) return a.total() < b.total();
    return a.prefix_sums() < b.prefix_sums();
}

// `seq_at(i)` for i < count; called twice per index so nothing per code is kept.
template <class SeqAt>
DominantSet dominant_of(std::size_t count, SeqAt&& seq_at) {
    std::unordered_map<LengthSequence, bool, LengthSequenceHash> verdict;
    for (std::size_t i = 0; i < count; ++i) verdict.emplace(seq_at(i), false);
    std::vector<LengthSequence> distinct;
    distinct.reserve(verdict.size());
    for (const auto& [s, _] : verdict) distinct.push_back(s);
    std::sort(distinct.begin(), distinct.end(), dominance_order);
    std::vector<LengthSequence> front;
    for (const auto& s : distinct) {
        bool dominated = false;
        for (const auto& f : front)
            if (dominates(f, s)) {
                dominated = true;
                break;
            }
        if (!dominated) {
            front.push_back(s);
            verdict[s] = true;
        }
    }
    DominantSet out;
    for (std::size_t i = 0; i < count; ++i)
        if (verdict[seq_at(i)]) out.ids.push_back(i);
    out.sequences = std::move(front);
    sort_by_total_desc(out.sequences);
    return out;
}

}  // namespace

DominantSet dominant_filter(const std::vector<Code>& codes) {
    for (const auto& c : codes)
        if (c.capacity() != codes.front().capacity())
            throw std::invalid_argument("dominant_filter needs codes of a single capacity");
    return dominant_of(codes.size(), [&](std::size_t i) { return length_sequence(codes[i]); });
}

// ---------------------------------------------------------------------------
// Pruning rules

bool prune_half_index(const Bitstring& sigma, int n) {
    const auto i = root_index(sigma);
    return i && 2 * *i >= n;
}

bool prune_complement_half_index(const Bitstring& sigma, int n) {
    const auto i = root_index(sigma.flipped());
    return i && *i >= 2 && 2 * *i >= n;
}

bool prune_monotone_max(const Code& parent, const Code& child) { return child.max_length() > parent.max_length(); }

std::optional<Bitstring> flag_sum_nonincrease(const Code& parent, const Code& child, const Bitstring& pi) {
    if (!verify_arrow(parent, child, pi)) throw ValidationError("child is not a transformation of the parent by " + pi.str());
    if (child.total_length() >= parent.total_length()) return pi;
    return std::nullopt;
}

std::vector<DepthOneChild> depth1_children(int n) {
    const Code root = root_code(n);
    std::vector<DepthOneChild> out;
    for (const Bitstring& s : root.words())
        for (Code& c : double_arrow_all(root, s)) out.push_back({s, std::move(c)});
    return out;
}

namespace {

std::vector<LengthSequence> dominated_depth1_sequences(int n) {
    std::vector<LengthSequence> seqs{length_sequence(root_code(n))};
    for (const auto& d : depth1_children(n)) seqs.push_back(length_sequence(d.code));
    std::sort(seqs.begin(), seqs.end());
    seqs.erase(std::unique(seqs.begin(), seqs.end()), seqs.end());
    std::vector<LengthSequence> out;
    for (const auto& s : seqs)
        if (std::any_of(seqs.begin(), seqs.end(), [&](const LengthSequence& t) { return dominates(t, s); }))
            out.push_back(s);
    return out;
}

}  // namespace

bool prune_depth2_dominated(int n, const Code& S_prime) {
    const auto dominated = dominated_depth1_sequences(n);
    return std::binary_search(dominated.begin(), dominated.end(), length_sequence(S_prime));
}

// ---------------------------------------------------------------------------
// Search engine

namespace {

// Equal for a code and its complement when `dedup` is set.
std::size_t key_hash(const Code& c, bool dedup) {
    std::uint64_t h = CodeHash{}(c);
    if (dedup) h = std::min<std::uint64_t>(h, CodeHash{}(c.complemented()));
    h ^= h >> 31;
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= h >> 29;
    return static_cast<std::size_t>(h);
}

struct State {
    std::size_t code = 0;
    std::optional<Bitstring> last;
    std::vector<Bitstring> pending;  // sorted
    bool cut_children = false;

    friend bool operator==(const State&, const State&) = default;
};

struct StateHash {
    std::size_t operator()(const State& s) const noexcept {
        std::size_t h = s.code * 0x9E3779B97F4A7C15ull;
        const BitstringHash wh;
        if (s.last) h ^= wh(*s.last) + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
        for (const auto& q : s.pending) h = (h ^ wh(q)) * 0x100000001B3ull;
        return h ^ static_cast<std::size_t>(s.cut_children);
    }
};

struct Candidate {
    Code code;
    Bitstring pivot;
    std::vector<Bitstring> pending;
    bool expand = true;
};

struct Expansion {
    std::vector<Candidate> candidates;
    SearchStats stats;
};

bool has_extension(const Code& code, const Bitstring& q) {
    return std::any_of(code.words().begin(), code.words().end(),
                       [&](const Bitstring& w) { return q.is_proper_prefix_of(w); });
}

class Engine {
public:
    Engine(int n, const SearchOptions& options)
        : n_(n), cfg_(options.config.normalized()), options_(options) {}

    SearchResult run();

private:
    Expansion expand(const State& state, const Code& S);
    void expand_chunk(const std::vector<State>& frontier, std::size_t begin, std::size_t end,
                      std::vector<Expansion>& out);
    bool same_key(std::size_t id, const Code& c) const;
    void remember(std::size_t id);
    bool out_of_time() const;

    int n_;
    PruneConfig cfg_;
    SearchOptions options_;
    NeighborCache cache_;
    SearchResult result_;
    std::chrono::steady_clock::time_point start_;
};

bool Engine::same_key(std::size_t id, const Code& c) const {
    const Code& r = result_.reached[id];
    return r == c || (cfg_.complement_dedup && r == c.complemented());
}

void Engine::remember(std::size_t id) {
    const bool dedup = cfg_.complement_dedup;
    result_.index.insert(key_hash(result_.reached[id], dedup), id,
                         [&](std::size_t other) { return key_hash(result_.reached[other], dedup); });
}

bool Engine::out_of_time() const {
    if (options_.budget.max_seconds <= 0) return false;
    const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start_;
    return spent.count() > options_.budget.max_seconds;
}

Expansion Engine::expand(const State& state, const Code& S) {
    Expansion out;
    const int max_len = S.max_length();
    const int total = S.total_length();
    for (const Bitstring& sigma : S.words()) {
        if (cfg_.canonical_order && state.last && sigma <= *state.last) {
            ++out.stats.pruned_canonical_order;
            continue;
        }
        if (cfg_.half_index && prune_half_index(sigma, n_)) {
            ++out.stats.pruned_half_index;
            continue;
        }
        if (cfg_.complement_mirror && prune_complement_half_index(sigma, n_)) {
            ++out.stats.pruned_complement_mirror;
            continue;
        }
        const ArrowStep step = arrow_step(S, sigma, cache_.neighbors(sigma, n_));
        if (!step.feasible) {
            ++out.stats.infeasible_pivots;
            continue;
        }
        std::vector<Bitstring> kept;
        for (const auto& q : state.pending)
            if (!q.is_proper_prefix_of(sigma)) kept.push_back(q);
        step.for_each([&](Code&& child) {
            ++out.stats.children_generated;
            if (cfg_.monotone_max && child.max_length() > max_len) {
                ++out.stats.pruned_monotone_max;
                return true;
            }
            Candidate cand{std::move(child), sigma, kept, !state.cut_children};
            if (cfg_.strict_sum && cand.code.total_length() >= total) {
                ++out.stats.flags_raised;
                cand.pending.insert(std::upper_bound(cand.pending.begin(), cand.pending.end(), sigma), sigma);
            }
            if (cfg_.strict_sum && cand.expand) {
                for (const auto& q : cand.pending)
                    if (!has_extension(cand.code, q)) {
                        ++out.stats.pruned_dead_flag;
                        cand.expand = false;
                        break;
                    }
            }
            out.candidates.push_back(std::move(cand));
            return true;
        });
    }
    return out;
}

void Engine::expand_chunk(const std::vector<State>& frontier, std::size_t begin, std::size_t end,
                          std::vector<Expansion>& out) {
    out.assign(end - begin, {});
    const auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            out[i - begin] = expand(frontier[i], result_.reached[frontier[i].code]);
    };
    const std::size_t count = end - begin;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, options_.threads)), count);
    if (workers <= 1) {
        work(begin, end);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t per = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = begin + w * per;
        const std::size_t hi = std::min(end, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([&, w, lo, hi] {
            try {
                work(lo, hi);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

SearchResult Engine::run() {
    start_ = std::chrono::steady_clock::now();
    result_.n = n_;
    result_.config = cfg_;

    std::vector<LengthSequence> depth2_dominated;
    if (cfg_.depth2_dominated) depth2_dominated = dominated_depth1_sequences(n_);

    const Code root = root_code(n_);
    result_.reached.push_back(root);
    result_.depth.push_back(0);
    remember(0);

    std::unordered_set<State, StateHash> seen;
    std::vector<State> frontier{State{}};
    seen.insert(frontier.front());
    result_.stats.states_queued = 1;

    const std::size_t chunk = 4096;
    const std::uint64_t max_nodes = options_.budget.max_nodes;
    int level = 0;
    bool stop = false;

    while (!frontier.empty() && !stop) {
        std::vector<State> next;
        for (std::size_t begin = 0; begin < frontier.size() && !stop; begin += chunk) {
            if (out_of_time()) {
                result_.complete = false;
                result_.incomplete_reason = "time budget of " + std::to_string(options_.budget.max_seconds) +
                                            " s exhausted at level " + std::to_string(level);
                stop = true;
                break;
            }
            const std::size_t end = std::min(frontier.size(), begin + chunk);
            std::vector<Expansion> expansions;
            expand_chunk(frontier, begin, end, expansions);

            for (std::size_t i = 0; i < expansions.size() && !stop; ++i) {
                const State& parent_state = frontier[begin + i];
                const std::size_t parent = parent_state.code;
                auto& ex = expansions[i];
                auto& st = result_.stats;
                const auto& es = ex.stats;
                ++st.states_expanded;
                st.children_generated += es.children_generated;
                st.infeasible_pivots += es.infeasible_pivots;
                st.pruned_canonical_order += es.pruned_canonical_order;
                st.pruned_half_index += es.pruned_half_index;
                st.pruned_complement_mirror += es.pruned_complement_mirror;
                st.pruned_monotone_max += es.pruned_monotone_max;
                st.pruned_dead_flag += es.pruned_dead_flag;
                st.flags_raised += es.flags_raised;

                for (auto& cand : ex.candidates) {
                    const auto found = result_.index.find(key_hash(cand.code, cfg_.complement_dedup),
                                                          [&](std::size_t id) { return same_key(id, cand.code); });
                    std::size_t child;
                    if (found) {
                        child = *found;
                    } else {
                        if (max_nodes && result_.reached.size() >= max_nodes) {
                            result_.complete = false;
                            result_.incomplete_reason =
                                "node budget of " + std::to_string(max_nodes) + " codes exhausted";
                            stop = true;
                            break;
                        }
                        child = result_.reached.size();
                        result_.reached.push_back(std::move(cand.code));
                        result_.depth.push_back(level + 1);
                        result_.tree.push_back({parent, child, cand.pivot});
                        remember(child);
                    }
                    const Code& child_code = result_.reached[child];
                    if (options_.record_dag && result_.depth[child] == level + 1)
                        result_.dag.push_back({parent, child, cand.pivot});
                    if (!cand.expand) continue;
                    State s;
                    s.code = child;
                    if (cfg_.canonical_order) s.last = cand.pivot;
                    s.pending = std::move(cand.pending);
                    if (level == 0 && cfg_.depth2_dominated &&
                        std::binary_search(depth2_dominated.begin(), depth2_dominated.end(),
                                           length_sequence(child_code))) {
                        s.cut_children = true;
                        ++st.depth2_cut;
                    }
                    if (seen.insert(s).second) {
                        ++st.states_queued;
                        next.push_back(std::move(s));
                    } else {
                        ++st.duplicate_states;
                    }
                }
            }
        }
        frontier = std::move(next);
        if (!frontier.empty() && !stop) ++level;
    }
    result_.stats.levels = level;
    DominantSet dom =
        dominant_of(result_.reached.size(), [&](std::size_t i) { return length_sequence(result_.reached[i]); });
    result_.dominant_ids = std::move(dom.ids);
    result_.dominant_sequences = std::move(dom.sequences);
    return std::move(result_);
}

}  // namespace

std::optional<std::size_t> SearchResult::find(const Code& code) const {
    const bool dedup = config.complement_dedup;
    return index.find(key_hash(code, dedup), [&](std::size_t id) {
        return reached[id] == code || (dedup && reached[id] == code.complemented());
    });
}

std::vector<Code> SearchResult::dominant_codes() const {
    std::vector<Code> out;
    out.reserve(dominant_ids.size());
    for (auto id : dominant_ids) out.push_back(reached[id]);
    return out;
}

bool SearchResult::is_dominant(std::size_t id) const {
    return std::binary_search(dominant_ids.begin(), dominant_ids.end(), id);
}

SearchResult search(int n, const SearchOptions& options) {
    if (n < 3 || n > 40) throw RangeError("search needs 3 <= n <= 40, got " + std::to_string(n));
    options.config.check();
    if (options.record_dag && options.config.mode != SearchMode::exhaustive)
        throw std::invalid_argument("shortest-path edges are only recorded in exhaustive mode");
    if (options.threads < 1) throw std::invalid_argument("thread count must be positive");
    return Engine(n, options).run();
}

// ---------------------------------------------------------------------------
// Chains

Chain chain_to(const SearchResult& result, std::size_t id) {
    if (id >= result.reached.size()) throw std::out_of_range("code id out of range");
    std::vector<std::size_t> ids{id};
    std::vector<Bitstring> pivots;
    while (ids.back() != 0) {
        const TreeEdge& e = result.tree[ids.back() - 1];
        pivots.push_back(e.pivot);
        ids.push_back(e.parent);
    }
    Chain chain;
    chain.pivots.assign(pivots.rbegin(), pivots.rend());
    for (auto it = ids.rbegin(); it != ids.rend(); ++it) chain.codes.push_back(result.reached[*it]);
    return chain;
}

bool is_well_formed(const Chain& chain) {
    if (chain.codes.size() != chain.pivots.size() + 1) return false;
    const int n = chain.codes.front().capacity();
    if (n < 3 || chain.codes.front() != root_code(n)) return false;
    for (std::size_t i = 0; i < chain.pivots.size(); ++i) {
        const Code& from = chain.codes[i];
        if (!from.contains(chain.pivots[i])) return false;
        const auto alts = double_arrow_all(from, chain.pivots[i]);
        if (std::find(alts.begin(), alts.end(), chain.codes[i + 1]) == alts.end()) return false;
    }
    return true;
}

bool is_shortest_chain(const Chain& chain) {
    if (chain.codes.empty()) return true;
    const Code& final_code = chain.final_code();
    return std::all_of(chain.pivots.begin(), chain.pivots.end(),
                       [&](const Bitstring& p) { return has_extension(final_code, p); });
}

std::optional<Chain> replay_with_order(const Code& C, const std::vector<Bitstring>& order) {
    const auto required = prefix_palindromes(C);
    std::vector<Bitstring> sorted_order = order;
    std::sort(sorted_order.begin(), sorted_order.end());
    if (sorted_order != required) throw std::invalid_argument("order is not a permutation of the code's prefix palindromes");
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (order[j].is_proper_prefix_of(order[i]))
                throw std::invalid_argument("order places " + order[i].str() + " before its prefix " + order[j].str());

    Chain chain;
    chain.codes.push_back(root_code(C.capacity()));
    std::set<std::pair<std::size_t, Code>> failed;

    const std::function<bool(std::size_t)> walk = [&](std::size_t k) -> bool {
        const Code current = chain.codes.back();
        if (k == order.size()) return current == C;
        if (!current.contains(order[k]) || failed.count({k, current})) return false;
        auto alts = double_arrow_all(current, order[k]);
        std::vector<std::pair<int, std::size_t>> ranked;
        for (std::size_t a = 0; a < alts.size(); ++a) {
            int overlap = 0;
            for (const auto& w : alts[a].words()) overlap += C.contains(w);
            ranked.push_back({-overlap, a});
        }
        std::stable_sort(ranked.begin(), ranked.end());
        for (const auto& [neg, a] : ranked) {
            chain.pivots.push_back(order[k]);
            chain.codes.push_back(alts[a]);
            if (walk(k + 1)) return true;
            chain.pivots.pop_back();
            chain.codes.pop_back();
        }
        failed.insert({k, current});
        return false;
    };
    if (!walk(0)) return std::nullopt;
    return chain;
}

// ---------------------------------------------------------------------------
// Dominant tree

DominantTree dominant_tree(const SearchResult& result) {
    DominantTree tree;
    const auto& classes = result.dominant_sequences;
    if (classes.empty()) return tree;

    std::unordered_map<LengthSequence, std::size_t, LengthSequenceHash> node_of;
    // Lowest-id reached code of each dominant class.
    std::unordered_map<LengthSequence, std::size_t, LengthSequenceHash> first_id;
    for (auto id : result.dominant_ids) first_id.try_emplace(length_sequence(result.reached[id]), id);

    const auto pivot_rank = [](const Bitstring& a, const Bitstring& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return a.bits() > b.bits();
    };

    for (const auto& X : classes) {
        DominantTreeNode node;
        node.sequence = X;
        if (tree.nodes.empty()) {
            node.code = result.reached[first_id.at(X)];
            node_of.emplace(X, 0);
            tree.nodes.push_back(std::move(node));
            continue;
        }
        std::vector<std::size_t> parents;
        for (std::size_t p = 0; p < tree.nodes.size(); ++p)
            if (tree.nodes[p].sequence.total() > X.total()) parents.push_back(p);
        std::stable_sort(parents.begin(), parents.end(), [&](std::size_t a, std::size_t b) {
            return tree.nodes[a].sequence.total() < tree.nodes[b].sequence.total();
        });
        bool found = false;
        for (std::size_t p : parents) {
            const Code& rep = tree.nodes[p].code;
            std::vector<Bitstring> pivots = rep.words();
            std::sort(pivots.begin(), pivots.end(), pivot_rank);
            for (const auto& s : pivots) {
                for (Code& c : double_arrow_all(rep, s)) {
                    if (length_sequence(c) == X) {
                        node.code = std::move(c);
                        node.parent = p;
                        node.pivot = s;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) {
            std::size_t id = first_id.at(X);
            node.code = result.reached[id];
            node.fallback = true;
            while (id != 0) {
                const TreeEdge& e = result.tree[id - 1];
                node.pivot = e.pivot;
                id = e.parent;
                auto it = node_of.find(length_sequence(result.reached[id]));
                if (it != node_of.end() && result.is_dominant(id)) {
                    node.parent = it->second;
                    break;
                }
            }
            if (!node.parent) node.parent = 0;
        }
        node_of.emplace(X, tree.nodes.size());
        tree.nodes.push_back(std::move(node));
    }
    return tree;
}

// ---------------------------------------------------------------------------
// Conjecture tester

std::string_view clause_name(ConjectureFinding::Clause clause) {
    switch (clause) {
        case ConjectureFinding::Clause::not_optimal: return "C not optimal";
        case ConjectureFinding::Clause::mirrored_not_optimal: return "mirrored code not optimal";
        case ConjectureFinding::Clause::mirrored_off_path: return "mirrored code off every shortest path";
    }
    return "unknown";
}

std::vector<ConjectureFinding> check_conjecture(int n) {
    if (n < 3 || n > 8) throw RangeError("conjecture check needs 3 <= n <= 8, got " + std::to_string(n));
    SearchOptions opts;
    opts.config = PruneConfig::exhaustive();
    opts.record_dag = true;
    const SearchResult r = search(n, opts);
    const std::size_t N = r.reached.size();

    std::vector<std::vector<std::size_t>> in_edges(N), out_edges(N);
    for (std::size_t e = 0; e < r.dag.size(); ++e) {
        in_edges[r.dag[e].child].push_back(e);
        out_edges[r.dag[e].parent].push_back(e);
    }
    std::vector<char> dominant(N, 0);
    for (auto id : r.dominant_ids) dominant[id] = 1;

    const auto ancestors_of = [&](const std::vector<std::size_t>& seeds) {
        std::vector<char> mark(N, 0);
        std::deque<std::size_t> queue(seeds.begin(), seeds.end());
        for (auto s : seeds) mark[s] = 1;
        while (!queue.empty()) {
            const std::size_t x = queue.front();
            queue.pop_front();
            for (auto e : in_edges[x]) {
                const std::size_t p = r.dag[e].parent;
                if (!mark[p]) {
                    mark[p] = 1;
                    queue.push_back(p);
                }
            }
        }
        return mark;
    };
    const std::vector<char> on_dominant_path = ancestors_of(r.dominant_ids);

    // Tree path to `to`, then the given step, then a shortest-path walk inside `allowed`.
    const auto build_chain = [&](std::size_t s, const Bitstring& pi, std::size_t s1, std::optional<std::size_t> target,
                                 const std::vector<char>* allowed) {
        Chain chain = chain_to(r, s);
        chain.pivots.push_back(pi);
        chain.codes.push_back(r.reached[s1]);
        if (!target || *target == s1) return chain;
        std::unordered_map<std::size_t, std::size_t> via;  // node -> dag edge
        std::deque<std::size_t> queue{s1};
        while (!queue.empty() && !via.count(*target)) {
            const std::size_t x = queue.front();
            queue.pop_front();
            for (auto e : out_edges[x]) {
                const std::size_t c = r.dag[e].child;
                if (c == s1 || via.count(c) || !(*allowed)[c]) continue;
                via.emplace(c, e);
                queue.push_back(c);
            }
        }
        std::vector<std::size_t> path;
        for (std::size_t x = *target; x != s1; x = r.dag[via.at(x)].parent) path.push_back(via.at(x));
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            chain.pivots.push_back(r.dag[*it].pivot);
            chain.codes.push_back(r.reached[r.dag[*it].child]);
        }
        return chain;
    };

    std::vector<ConjectureFinding> findings;
    std::set<std::tuple<std::size_t, std::size_t, Bitstring>> mirrored_done;
    for (auto c : r.dominant_ids) {
        const std::vector<char> anc = ancestors_of({c});
        for (std::size_t s1 = 0; s1 < N; ++s1) {
            if (!anc[s1] || s1 == c) continue;
            for (auto e : in_edges[s1]) {
                const std::size_t s = r.dag[e].parent;
                const Bitstring& pi = r.dag[e].pivot;
                if (r.reached[s1].total_length() < r.reached[s].total_length()) continue;
                ConjectureFinding f;
                f.clause = ConjectureFinding::Clause::not_optimal;
                f.chain = build_chain(s, pi, s1, c, &anc);
                f.step = static_cast<std::size_t>(r.depth[s]);
                f.detail = "dominant code reached after a step that did not shrink the total";
                findings.push_back(std::move(f));

                const Bitstring bar = pi.flipped();
                const Code& S = r.reached[s];
                if (!S.contains(bar) || !mirrored_done.insert({s, s1, pi}).second) continue;
                for (const Code& s2code : double_arrow_all(S, bar)) {
                    const auto s2 = r.find(s2code);
                    if (!s2) continue;
                    if (!dominant[*s2] && !on_dominant_path[*s2]) continue;
                    ConjectureFinding g;
                    g.clause = dominant[*s2] ? ConjectureFinding::Clause::mirrored_not_optimal
                                             : ConjectureFinding::Clause::mirrored_off_path;
                    g.chain = chain_to(r, s);
                    g.chain.pivots.push_back(bar);
                    g.chain.codes.push_back(s2code);
                    g.step = static_cast<std::size_t>(r.depth[s]);
                    g.detail = dominant[*s2] ? "mirrored code is dominant"
                                             : "mirrored code lies on a shortest path to a dominant code";
                    findings.push_back(std::move(g));
                }
            }
        }
    }
    return findings;
}

}  // namespace symfix
