#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "symfix/oracle.hpp"
#include "symfix/search.hpp"

namespace symfix {

std::string engine_version();

nlohmann::json to_json(const Code& code);
nlohmann::json to_json(const LengthSequence& l);
nlohmann::json to_json(const PruneConfig& config);
nlohmann::json to_json(const SearchStats& stats);
nlohmann::json to_json(const DominantTree& tree);
nlohmann::json to_json(const Chain& chain);

// {n, mode, flags, complete, nodes, edges, dominant_sequences, dominant_tree, stats}.
// Contains nothing that depends on timing or scheduling.
nlohmann::json to_json(const SearchResult& result, const DominantTree& tree);

// Elapsed time stays out; it belongs in the manifest.
nlohmann::json to_json(const OracleReport& report);
nlohmann::json to_json(const Discrepancy& d);

enum class DotScope { full, dominant };

// Node label = total length, edge label = pivot.
std::string to_dot(const SearchResult& result, const DominantTree& tree, DotScope scope);

struct TableRow {
    int n = 0;
    int count = 0;
};

// Header `n,count`.
std::string table_csv(const std::vector<TableRow>& rows);

// Reads rows from a CSV whose header names an `n` column and a `count`
// column (other columns are ignored). Throws ValidationError on malformed
// input and std::runtime_error when the file cannot be read.
std::map<int, int> read_count_csv(const std::string& path);

std::string sha256_hex(const std::string& bytes);
// Throws std::runtime_error when the file cannot be read.
std::string file_sha256(const std::string& path);

struct RunManifest {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    std::string engine_version;
    double elapsed_seconds = 0;
    std::map<std::string, std::string> input_digests;  // path -> sha256
    std::map<std::string, std::string> output_digests;

    nlohmann::json to_json() const;
};

// Writes `text` to `path`, throwing std::runtime_error on failure.
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

}  // namespace symfix
