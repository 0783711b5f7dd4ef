#include "symfix/report.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "symfix/error.hpp"

#ifndef SYMFIX_VERSION
#define SYMFIX_VERSION "0.0.0"
#endif

namespace symfix {

using nlohmann::json;

std::string engine_version() { return std::string("symfix ") + SYMFIX_VERSION; }

json to_json(const Code& code) { return code.strings(); }

json to_json(const LengthSequence& l) { return l.lengths(); }

json to_json(const PruneConfig& c) {
    return {{"mode", std::string(mode_name(c.mode))},
            {"half_index", c.half_index},
            {"monotone_max", c.monotone_max},
            {"strict_sum", c.strict_sum},
            {"depth2_dominated", c.depth2_dominated},
            {"complement_mirror", c.complement_mirror},
            {"canonical_order", c.canonical_order},
            {"complement_dedup", c.complement_dedup}};
}

json to_json(const SearchStats& s) {
    return {{"states_expanded", s.states_expanded},
            {"states_queued", s.states_queued},
            {"duplicate_states", s.duplicate_states},
            {"children_generated", s.children_generated},
            {"infeasible_pivots", s.infeasible_pivots},
            {"pruned_canonical_order", s.pruned_canonical_order},
            {"pruned_half_index", s.pruned_half_index},
            {"pruned_complement_mirror", s.pruned_complement_mirror},
            {"pruned_monotone_max", s.pruned_monotone_max},
            {"pruned_dead_flag", s.pruned_dead_flag},
            {"flags_raised", s.flags_raised},
            {"depth2_cut", s.depth2_cut},
            {"levels", s.levels}};
}

json to_json(const DominantTree& tree) {
    json nodes = json::array();
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& node = tree.nodes[i];
        json j = {{"id", i},
                  {"lengths", to_json(node.sequence)},
                  {"total", node.sequence.total()},
                  {"words", to_json(node.code)}};
        j["parent"] = node.parent ? json(*node.parent) : json(nullptr);
        j["pivot"] = node.pivot ? json(node.pivot->str()) : json(nullptr);
        if (node.fallback) j["fallback"] = true;
        nodes.push_back(std::move(j));
    }
    return {{"nodes", std::move(nodes)}};
}

json to_json(const Chain& chain) {
    json pivots = json::array();
    for (const auto& p : chain.pivots) pivots.push_back(p.str());
    json codes = json::array();
    for (const auto& c : chain.codes) codes.push_back(to_json(c));
    return {{"pivots", std::move(pivots)}, {"codes", std::move(codes)}};
}

json to_json(const SearchResult& r, const DominantTree& tree) {
    json nodes = json::array();
    std::size_t d = 0;
    for (std::size_t id = 0; id < r.reached.size(); ++id) {
        const Code& c = r.reached[id];
        const bool dominant = d < r.dominant_ids.size() && r.dominant_ids[d] == id;
        if (dominant) ++d;
        nodes.push_back({{"id", id},
                         {"words", to_json(c)},
                         {"lengths", to_json(length_sequence(c))},
                         {"total", c.total_length()},
                         {"depth", r.depth[id]},
                         {"dominant", dominant}});
    }
    json edges = json::array();
    for (const auto& e : r.tree) edges.push_back({{"parent", e.parent}, {"child", e.child}, {"pivot", e.pivot.str()}});
    json seqs = json::array();
    for (const auto& s : r.dominant_sequences) seqs.push_back(to_json(s));

    json flags = to_json(r.config);
    flags.erase("mode");
    json out = {{"n", r.n},
                {"mode", std::string(mode_name(r.config.mode))},
                {"flags", std::move(flags)},
                {"complete", r.complete},
                {"nodes", std::move(nodes)},
                {"edges", std::move(edges)},
                {"dominant_sequences", std::move(seqs)},
                {"dominant_tree", to_json(tree)},
                {"stats", to_json(r.stats)}};
    if (!r.complete) out["incomplete_reason"] = r.incomplete_reason;
    return out;
}

json to_json(const OracleReport& r) {
    json seqs = json::array();
    for (const auto& s : r.dominant_sequences) seqs.push_back(to_json(s));
    json codes = json::array();
    for (const auto& c : r.dominant_codes)
        codes.push_back({{"words", to_json(c)}, {"lengths", to_json(length_sequence(c))}, {"total", c.total_length()}});
    return {{"n", r.n},
            {"total_codes", r.total_codes},
            {"distinct_sequences", r.distinct_sequences},
            {"dominant_sequences", std::move(seqs)},
            {"dominant_codes", std::move(codes)}};
}

json to_json(const Discrepancy& d) {
    const auto seq_list = [](const std::vector<LengthSequence>& v) {
        json a = json::array();
        for (const auto& s : v) a.push_back(to_json(s));
        return a;
    };
    const auto code_list = [](const std::vector<Code>& v) {
        json a = json::array();
        for (const auto& c : v) a.push_back(to_json(c));
        return a;
    };
    return {{"n", d.n},
            {"config", to_json(d.config)},
            {"search_complete", d.search_complete},
            {"sequences_match", d.sequences_match()},
            {"codes_match", d.codes_match()},
            {"oracle_only_sequences", seq_list(d.oracle_only_sequences)},
            {"search_only_sequences", seq_list(d.search_only_sequences)},
            {"oracle_only_codes", code_list(d.oracle_only_codes)},
            {"search_only_codes", code_list(d.search_only_codes)}};
}

std::string to_dot(const SearchResult& r, const DominantTree& tree, DotScope scope) {
    std::ostringstream os;
    os << "digraph D" << r.n << " {\n";
    os << "  node [shape=ellipse];\n";
    if (scope == DotScope::dominant) {
        for (std::size_t i = 0; i < tree.nodes.size(); ++i)
            os << "  n" << i << " [label=\"" << tree.nodes[i].sequence.total() << "\"];\n";
        for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
            const auto& node = tree.nodes[i];
            if (!node.parent) continue;
            os << "  n" << *node.parent << " -> n" << i << " [label=\"" << (node.pivot ? node.pivot->str() : "")
               << "\"" << (node.fallback ? ", style=dashed" : "") << "];\n";
        }
    } else {
        std::size_t d = 0;
        for (std::size_t id = 0; id < r.reached.size(); ++id) {
            const bool dominant = d < r.dominant_ids.size() && r.dominant_ids[d] == id;
            if (dominant) ++d;
            os << "  n" << id << " [label=\"" << r.reached[id].total_length() << "\""
               << (dominant ? ", style=bold" : "") << "];\n";
        }
        for (const auto& e : r.tree)
            os << "  n" << e.parent << " -> n" << e.child << " [label=\"" << e.pivot.str() << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string table_csv(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << "n,count\n";
    for (const auto& r : rows) os << r.n << ',' << r.count << '\n';
    return os.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    return out;
}

int parse_int(const std::string& s, const std::string& where) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw ValidationError("not an integer in " + where + ": '" + s + "'");
    return v;
}

}  // namespace

std::map<int, int> read_count_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
    const auto header = split_csv_line(line);
    int n_col = -1, count_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "n") n_col = static_cast<int>(i);
        if (header[i] == "count") count_col = static_cast<int>(i);
    }
    if (n_col < 0 || count_col < 0) throw ValidationError(path + ": header needs columns n and count");
    std::map<int, int> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        const auto cells = split_csv_line(line);
        const std::string where = path + ":" + std::to_string(line_no);
        if (static_cast<int>(cells.size()) <= std::max(n_col, count_col)) throw ValidationError(where + ": too few cells");
        rows[parse_int(cells[static_cast<std::size_t>(n_col)], where)] =
            parse_int(cells[static_cast<std::size_t>(count_col)], where);
    }
    return rows;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 computation failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

std::string file_sha256(const std::string& path) { return sha256_hex(read_file(path)); }

json RunManifest::to_json() const {
    return {{"command", command},
            {"parameters", parameters},
            {"engine_version", engine_version},
            {"elapsed_seconds", elapsed_seconds},
            {"input_digests", input_digests},
            {"output_digests", output_digests}};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace symfix
