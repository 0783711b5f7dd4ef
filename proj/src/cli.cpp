#include "symfix/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "symfix/bitpal.hpp"
#include "symfix/code.hpp"
#include "symfix/error.hpp"
#include "symfix/optimize.hpp"
#include "symfix/oracle.hpp"
#include "symfix/report.hpp"
#include "symfix/search.hpp"

namespace symfix {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr int kTableUnguardedMax = 22;

struct BudgetArgs {
    std::uint64_t nodes = 0;
    double seconds = 0;

    // SYMFIX_BUDGET_NODES overrides the node cap.
    Budget resolve() const {
        Budget b{nodes, seconds};
        if (const char* env = std::getenv("SYMFIX_BUDGET_NODES"); env && *env) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (*end != '\0') throw RangeError(std::string("SYMFIX_BUDGET_NODES is not a number: ") + env);
            b.max_nodes = v;
        }
        return b;
    }
    bool given() const { return resolve().max_nodes > 0 || seconds > 0; }
};

void add_budget(CLI::App* cmd, BudgetArgs& b) {
    cmd->add_option("--budget-nodes", b.nodes, "Stop after this many reached codes (0 = no cap)");
    cmd->add_option("--budget-seconds", b.seconds, "Stop after this much wall-clock time (0 = no cap)");
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

SearchMode mode_from(const std::string& text) {
    const auto m = parse_mode(text);
    if (!m) throw RangeError("unknown mode '" + text + "' (expected exhaustive or optimal-complete)");
    return *m;
}

PruneConfig config_from(const std::string& mode, const std::vector<std::string>& disabled, bool complement_dedup) {
    PruneConfig c;
    c.mode = mode_from(mode);
    for (const auto& d : disabled) {
        if (d == "half-index") c.half_index = false;
        else if (d == "monotone-max") c.monotone_max = false;
        else if (d == "strict-sum") c.strict_sum = false;
        else if (d == "depth2-dominated") c.depth2_dominated = false;
        else if (d == "complement-mirror") c.complement_mirror = false;
        else if (d == "canonical-order") c.canonical_order = false;
        else throw RangeError("unknown pruning rule '" + d + "'");
    }
    c.complement_dedup = complement_dedup;
    c = c.normalized();
    c.check();
    return c;
}

// Writes every output, then a manifest next to the first one (or at
// `manifest_path`) recording their digests.
void emit(RunManifest manifest, const std::vector<std::pair<std::string, std::string>>& outputs,
          const std::string& manifest_path, std::ostream& out) {
    std::string first;
    for (const auto& [path, text] : outputs) {
        if (path.empty()) continue;
        if (path == "-") {
            out << text;
            continue;
        }
        write_file(path, text);
        manifest.output_digests[path] = sha256_hex(text);
        if (first.empty()) first = path;
    }
    const std::string target = !manifest_path.empty() ? manifest_path : first.empty() ? "" : first + ".manifest.json";
    if (!target.empty()) write_file(target, manifest.to_json().dump(2) + "\n");
}

RunManifest manifest_for(const std::string& command, json parameters, Clock::time_point start) {
    RunManifest m;
    m.command = command;
    m.parameters = std::move(parameters);
    m.engine_version = engine_version();
    m.elapsed_seconds = seconds_since(start);
    return m;
}

std::vector<double> read_probabilities(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<double> probs;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto e = line.find_last_not_of(" \t\r,");
        const std::string cell = line.substr(b, e - b + 1);
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (end == cell.c_str() || *end != '\0') {
            if (first) {  // header row
                first = false;
                continue;
            }
            throw ValidationError(path + ": not a probability: '" + cell + "'");
        }
        first = false;
        probs.push_back(v);
    }
    return probs;
}

std::string sequence_line(const LengthSequence& l) {
    return "total=" + std::to_string(l.total()) + " lengths=" + l.str();
}

// ---------------------------------------------------------------------------

struct NeighborsArgs {
    std::string sigma;
    int n = 0;
    std::string format = "text";
    bool descendants = false;
};

int cmd_neighbors(const NeighborsArgs& a, std::ostream& out) {
    const Bitstring sigma = Bitstring::parse(a.sigma);
    const auto words = a.descendants ? descendants(sigma, a.n) : neighbors(sigma, a.n);
    if (a.format == "json") {
        json list = json::array();
        for (const auto& w : words) list.push_back(w.str());
        out << json{{"sigma", sigma.str()}, {"n", a.n}, {a.descendants ? "descendants" : "neighbors", list}}.dump(2)
            << "\n";
    } else {
        for (const auto& w : words) out << w << "\n";
    }
    return kExitOk;
}

struct SearchArgs {
    int n = 0;
    std::string mode = "optimal-complete";
    std::vector<std::string> disabled;
    bool complement_dedup = false;
    int threads = 1;
    BudgetArgs budget;
    std::string out_path;
    std::string dot_path;
    std::string dot_scope = "dominant";
    std::string manifest_path;
};

int cmd_search(const SearchArgs& a, std::ostream& out, std::ostream& err) {
    const auto start = Clock::now();
    SearchOptions opts;
    opts.config = config_from(a.mode, a.disabled, a.complement_dedup);
    opts.budget = a.budget.resolve();
    opts.threads = a.threads;
    const SearchResult r = search(a.n, opts);
    const DominantTree tree = dominant_tree(r);

    std::vector<std::pair<std::string, std::string>> outputs;
    if (!a.out_path.empty()) outputs.push_back({a.out_path, to_json(r, tree).dump(2) + "\n"});
    if (!a.dot_path.empty())
        outputs.push_back({a.dot_path, to_dot(r, tree, a.dot_scope == "full" ? DotScope::full : DotScope::dominant)});

    if (a.out_path != "-" && a.dot_path != "-") {
        out << "n=" << r.n << " mode=" << mode_name(r.config.mode) << " reached=" << r.reached.size()
            << " dominant_codes=" << r.dominant_ids.size() << " dominant_sequences=" << r.dominant_sequences.size()
            << " complete=" << (r.complete ? "yes" : "no") << "\n";
        for (const auto& s : r.dominant_sequences) out << "  " << sequence_line(s) << "\n";
    }
    json params = {{"n", a.n},          {"mode", std::string(mode_name(opts.config.mode))},
                   {"flags", to_json(opts.config)}, {"threads", a.threads},
                   {"budget_nodes", opts.budget.max_nodes}, {"budget_seconds", opts.budget.max_seconds},
                   {"dot_scope", a.dot_scope}};
    emit(manifest_for("search", std::move(params), start), outputs, a.manifest_path, out);
    if (!r.complete) {
        err << "search incomplete: " << r.incomplete_reason << "\n";
        return kExitBudget;
    }
    return kExitOk;
}

struct TableArgs {
    int min_n = 3;
    int max_n = 0;
    std::string mode = "optimal-complete";
    std::string compare;
    std::string out_path;
    std::string manifest_path;
    int threads = 1;
    BudgetArgs budget;
};

int cmd_table(const TableArgs& a, std::ostream& out, std::ostream& err) {
    const auto start = Clock::now();
    const SearchMode mode = mode_from(a.mode);
    if (a.min_n < 3 || a.max_n < a.min_n) throw RangeError("table needs 3 <= min-n <= max-n");
    const int unguarded = mode == SearchMode::exhaustive ? kOracleMaxN : kTableUnguardedMax;
    if (a.max_n > unguarded && !a.budget.given())
        throw RangeError("max-n " + std::to_string(a.max_n) + " is beyond the unguarded limit of " +
                         std::to_string(unguarded) + " for " + std::string(mode_name(mode)) +
                         " mode; pass --budget-nodes or --budget-seconds (or set SYMFIX_BUDGET_NODES) to run it");

    std::map<int, int> expected;
    RunManifest manifest;
    if (!a.compare.empty()) expected = read_count_csv(a.compare);

    SearchOptions opts;
    opts.config = mode == SearchMode::exhaustive ? PruneConfig::exhaustive() : PruneConfig::optimal_complete();
    opts.budget = a.budget.resolve();
    opts.threads = a.threads;

    std::vector<TableRow> rows;
    std::vector<int> partial;
    int mismatches = 0;
    std::ostringstream report;
    for (int n = a.min_n; n <= a.max_n; ++n) {
        const SearchResult r = search(n, opts);
        const int count = static_cast<int>(r.dominant_sequences.size());
        rows.push_back({n, count});
        if (!r.complete) partial.push_back(n);
        if (!a.compare.empty()) {
            report << "n=" << n << " count=" << count;
            auto it = expected.find(n);
            if (!r.complete) {
                report << " partial (" << r.incomplete_reason << ")";
            } else if (it == expected.end()) {
                report << " no reference";
            } else {
                const bool ok = it->second == count;
                if (!ok) ++mismatches;
                report << " expected=" << it->second << (ok ? " match" : " MISMATCH");
            }
            report << "\n";
        }
    }
    const std::string csv = table_csv(rows);
    if (a.out_path.empty() || a.out_path == "-") out << csv;
    out << report.str();

    json params = {{"min_n", a.min_n}, {"max_n", a.max_n}, {"mode", std::string(mode_name(mode))},
                   {"threads", a.threads}, {"budget_nodes", opts.budget.max_nodes},
                   {"budget_seconds", opts.budget.max_seconds}};
    manifest = manifest_for("table", std::move(params), start);
    if (!a.compare.empty()) manifest.input_digests[a.compare] = file_sha256(a.compare);
    std::vector<std::pair<std::string, std::string>> outputs;
    if (!a.out_path.empty() && a.out_path != "-") outputs.push_back({a.out_path, csv});
    emit(manifest, outputs, a.manifest_path, out);

    if (!a.compare.empty()) out << (mismatches ? std::to_string(mismatches) + " mismatching rows" : "all rows match") << "\n";
    if (mismatches) return kExitMismatch;
    if (!partial.empty()) {
        err << partial.size() << " rows stopped at the budget\n";
        return kExitBudget;
    }
    return kExitOk;
}

struct OptimizeArgs {
    int n = 0;
    std::string probs_path;
    std::vector<double> probs;
    std::string mode = "optimal-complete";
    int trials = 0;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out_path;
    std::string manifest_path;
};

int cmd_optimize(const OptimizeArgs& a, std::ostream& out, std::ostream& err) {
    const auto start = Clock::now();
    std::vector<double> probs = a.probs;
    if (!a.probs_path.empty()) {
        if (!probs.empty()) throw RangeError("give either --probs or --p, not both");
        probs = read_probabilities(a.probs_path);
    }
    if (probs.empty()) throw RangeError("no probabilities given (use --probs FILE or --p LIST)");
    const Source source(probs);
    const int n = a.n > 0 ? a.n : static_cast<int>(source.size());
    if (static_cast<std::size_t>(n) != source.size())
        throw ValidationError("source has " + std::to_string(source.size()) + " symbols but n=" + std::to_string(n));

    SearchOptions opts;
    opts.config = mode_from(a.mode) == SearchMode::exhaustive ? PruneConfig::exhaustive() : PruneConfig::optimal_complete();
    opts.threads = a.threads;
    const SearchResult r = search(n, opts);
    const Selection best = best_code(n, source, r);
    const double h = entropy(source);

    json doc = {{"n", n},
                {"words", to_json(best.code)},
                {"lengths", to_json(length_sequence(best.code))},
                {"expected_length", best.expected_length},
                {"entropy", h},
                {"candidates", r.dominant_ids.size()}};
    json symbols = json::array();
    for (std::size_t i = 0; i < best.assignment.size(); ++i)
        symbols.push_back({{"symbol", i + 1}, {"p", source.probs()[i]}, {"word", best.assignment[i].str()}});
    doc["assignment"] = std::move(symbols);

    out << "n=" << n << " lengths=" << length_sequence(best.code).str()
        << " expected_length=" << format_real(best.expected_length) << " entropy=" << format_real(h) << "\n";
    for (std::size_t i = 0; i < best.assignment.size(); ++i)
        out << "  symbol " << i + 1 << " p=" << format_real(source.probs()[i]) << " word=" << best.assignment[i] << "\n";

    if (a.trials > 0) {
        const RedundancyCheck rc = check_redundancy(r, a.trials, a.seed);
        out << "redundancy check: " << rc.trials << " random sources, " << rc.violations
            << " above 2H+1 (worst gap " << format_real(rc.worst_gap) << ")\n";
        if (rc.violations) err << "warning: " << rc.violations << " sources exceeded 2H+1\n";
        doc["redundancy_check"] = {{"trials", rc.trials}, {"seed", a.seed}, {"violations", rc.violations},
                                   {"worst_gap", rc.worst_gap}};
    }

    json params = {{"n", n}, {"mode", a.mode}, {"trials", a.trials}, {"seed", a.seed}};
    RunManifest manifest = manifest_for("optimize", std::move(params), start);
    if (!a.probs_path.empty()) manifest.input_digests[a.probs_path] = file_sha256(a.probs_path);
    std::vector<std::pair<std::string, std::string>> outputs;
    if (!a.out_path.empty()) outputs.push_back({a.out_path, doc.dump(2) + "\n"});
    emit(manifest, outputs, a.manifest_path, out);
    return kExitOk;
}

struct OracleArgs {
    int n = 0;
    int threads = 1;
    bool reversed = false;
    std::string out_path;
    std::string manifest_path;
};

int cmd_oracle(const OracleArgs& a, std::ostream& out) {
    const auto start = Clock::now();
    const OracleReport rep = oracle_dominant(a.n, a.reversed ? EnumerationOrder::reversed : EnumerationOrder::canonical,
                                             a.threads);
    out << "n=" << rep.n << " codes=" << rep.total_codes << " distinct_sequences=" << rep.distinct_sequences
        << " dominant_sequences=" << rep.dominant_sequences.size() << " dominant_codes=" << rep.dominant_codes.size()
        << "\n";
    for (const auto& s : rep.dominant_sequences) out << "  " << sequence_line(s) << "\n";
    std::vector<std::pair<std::string, std::string>> outputs;
    if (!a.out_path.empty()) outputs.push_back({a.out_path, to_json(rep).dump(2) + "\n"});
    emit(manifest_for("oracle", {{"n", a.n}, {"threads", a.threads}, {"reversed", a.reversed}}, start), outputs,
         a.manifest_path, out);
    return kExitOk;
}

struct VerifyArgs {
    int n = 0;
    std::string mode = "exhaustive";
    int threads = 1;
    std::string out_path;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const SearchMode mode = mode_from(a.mode);
    const Discrepancy d = compare_with_search(
        a.n, mode == SearchMode::exhaustive ? PruneConfig::exhaustive() : PruneConfig::optimal_complete(), a.threads);
    if (!a.out_path.empty()) write_file(a.out_path, to_json(d).dump(2) + "\n");
    const bool ok = mode == SearchMode::exhaustive ? d.empty() : d.sequences_match();
    if (ok) {
        out << "n=" << a.n << " mode=" << mode_name(mode) << ": search == oracle\n";
        return kExitOk;
    }
    out << "n=" << a.n << " mode=" << mode_name(mode) << ": search != oracle\n";
    for (const auto& s : d.oracle_only_sequences) out << "  oracle only: " << sequence_line(s) << "\n";
    for (const auto& s : d.search_only_sequences) out << "  search only: " << sequence_line(s) << "\n";
    out << "  codes: " << d.oracle_only_codes.size() << " oracle only, " << d.search_only_codes.size()
        << " search only\n";
    return kExitMismatch;
}

struct ClusterArgs {
    int n = 0;
    bool count_prefixes = false;
};

int cmd_cluster(const ClusterArgs& a, std::ostream& out) {
    const Code c = cluster_code(a.n);
    for (const auto& w : c.words()) out << w << "\n";
    if (a.count_prefixes) out << "prefix palindromes: " << count_palindromic_proper_prefixes(c) << "\n";
    return kExitOk;
}

struct ConjectureArgs {
    int n = 0;
    std::size_t show = 10;
    std::string out_path;
};

int cmd_conjecture(const ConjectureArgs& a, std::ostream& out) {
    const auto findings = check_conjecture(a.n);
    std::map<std::string, std::size_t> by_clause;
    for (const auto& f : findings) ++by_clause[std::string(clause_name(f.clause))];
    out << "n=" << a.n << " findings=" << findings.size() << "\n";
    for (const auto& [clause, count] : by_clause) out << "  " << clause << ": " << count << "\n";
    for (std::size_t i = 0; i < std::min(a.show, findings.size()); ++i) {
        const auto& f = findings[i];
        out << "  [" << clause_name(f.clause) << "] step " << f.step << ":";
        for (std::size_t k = 0; k < f.chain.codes.size(); ++k) {
            out << " " << f.chain.codes[k].total_length();
            if (k < f.chain.pivots.size()) out << " =" << f.chain.pivots[k] << "=>";
        }
        out << "\n";
    }
    if (!a.out_path.empty()) {
        json list = json::array();
        for (const auto& f : findings)
            list.push_back({{"clause", std::string(clause_name(f.clause))},
                            {"step", f.step},
                            {"detail", f.detail},
                            {"chain", to_json(f.chain)}});
        write_file(a.out_path, json{{"n", a.n}, {"findings", std::move(list)}}.dump(2) + "\n");
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symmetric fix-free code generation and search", "symfix"};
    app.require_subcommand(1);
    app.set_version_flag("--version", engine_version());
    std::function<int()> action;

    NeighborsArgs nb;
    auto* c_nb = app.add_subcommand("neighbors", "List neighboring palindromes of a palindrome");
    c_nb->add_option("--sigma", nb.sigma, "Palindrome over {0,1}")->required();
    c_nb->add_option("--n", nb.n, "Maximum length")->required();
    c_nb->add_option("--format", nb.format)->check(CLI::IsMember({"text", "json"}));
    c_nb->add_flag("--descendants", nb.descendants, "List every palindrome extending sigma instead");
    c_nb->callback([&] { action = [&] { return cmd_neighbors(nb, out); }; });

    SearchArgs sa;
    auto* c_search = app.add_subcommand("search", "Breadth-first transformation search from the root code");
    c_search->add_option("--n", sa.n, "Number of codewords")->required();
    c_search->add_option("--mode", sa.mode, "exhaustive or optimal-complete");
    c_search->add_option("--disable", sa.disabled, "Pruning rules to switch off")
        ->check(CLI::IsMember({"half-index", "monotone-max", "strict-sum", "depth2-dominated", "complement-mirror",
                               "canonical-order"}));
    c_search->add_flag("--complement-dedup", sa.complement_dedup, "Treat a code and its complement as one");
    c_search->add_option("--threads", sa.threads)->check(CLI::PositiveNumber);
    add_budget(c_search, sa.budget);
    c_search->add_option("--out", sa.out_path, "SearchResult JSON path ('-' for stdout)");
    c_search->add_option("--dot", sa.dot_path, "Graphviz output path ('-' for stdout)");
    c_search->add_option("--dot-scope", sa.dot_scope)->check(CLI::IsMember({"dominant", "full"}));
    c_search->add_option("--manifest-out", sa.manifest_path, "Run manifest path");
    c_search->callback([&] { action = [&] { return cmd_search(sa, out, err); }; });

    TableArgs ta;
    auto* c_table = app.add_subcommand("table", "Count dominant length sequences per n");
    c_table->add_option("--max-n", ta.max_n)->required();
    c_table->add_option("--min-n", ta.min_n);
    c_table->add_option("--mode", ta.mode);
    c_table->add_option("--compare", ta.compare, "Reference CSV with n and count columns");
    c_table->add_option("--out", ta.out_path, "CSV output path");
    c_table->add_option("--manifest-out", ta.manifest_path);
    c_table->add_option("--threads", ta.threads)->check(CLI::PositiveNumber);
    add_budget(c_table, ta.budget);
    c_table->callback([&] { action = [&] { return cmd_table(ta, out, err); }; });

    OptimizeArgs oa;
    auto* c_opt = app.add_subcommand("optimize", "Pick the dominant code of least expected length");
    c_opt->add_option("--n", oa.n, "Number of symbols (defaults to the source size)");
    c_opt->add_option("--probs", oa.probs_path, "File with one probability per line");
    c_opt->add_option("--p", oa.probs, "Inline probabilities")->delimiter(',');
    c_opt->add_option("--mode", oa.mode);
    c_opt->add_option("--trials", oa.trials, "Random sources for the 2H+1 check");
    c_opt->add_option("--seed", oa.seed);
    c_opt->add_option("--threads", oa.threads)->check(CLI::PositiveNumber);
    c_opt->add_option("--out", oa.out_path, "JSON report path");
    c_opt->add_option("--manifest-out", oa.manifest_path);
    c_opt->callback([&] { action = [&] { return cmd_optimize(oa, out, err); }; });

    OracleArgs ora;
    auto* c_oracle = app.add_subcommand("oracle", "Enumerate every code and compute the dominant set directly");
    c_oracle->add_option("--n", ora.n)->required();
    c_oracle->add_option("--threads", ora.threads)->check(CLI::PositiveNumber);
    c_oracle->add_flag("--reversed", ora.reversed, "Enumerate in reverse order");
    c_oracle->add_option("--out", ora.out_path);
    c_oracle->add_option("--manifest-out", ora.manifest_path);
    c_oracle->callback([&] { action = [&] { return cmd_oracle(ora, out); }; });

    VerifyArgs va;
    auto* c_verify = app.add_subcommand("verify", "Compare search against the oracle");
    c_verify->add_option("--n", va.n)->required();
    c_verify->add_option("--mode", va.mode);
    c_verify->add_option("--threads", va.threads)->check(CLI::PositiveNumber);
    c_verify->add_option("--out", va.out_path, "Discrepancy report JSON");
    c_verify->callback([&] { action = [&] { return cmd_verify(va, out); }; });

    ClusterArgs ca;
    auto* c_cluster = app.add_subcommand("cluster", "Print the cluster code of even length n");
    c_cluster->add_option("--n", ca.n)->required();
    c_cluster->add_flag("--count-prefixes", ca.count_prefixes, "Also count distinct palindromic proper prefixes");
    c_cluster->callback([&] { action = [&] { return cmd_cluster(ca, out); }; });

    ConjectureArgs ja;
    auto* c_conj = app.add_subcommand("conjecture", "Search small n for instances the dominant set cannot rule out");
    c_conj->add_option("--n", ja.n)->required();
    c_conj->add_option("--show", ja.show, "Findings to print");
    c_conj->add_option("--out", ja.out_path);
    c_conj->callback([&] { action = [&] { return cmd_conjecture(ja, out); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        return action();
    } catch (const RangeError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace symfix
