#pragma once

// Deterministic CSV and JSON emission. Every file starts with the resolved
// configuration; floats are written with %.17g.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sonic/config.hpp"

namespace sonic {

using Json = nlohmann::ordered_json;

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// '#'-prefixed header (tool, command, extra metadata, every config entry),
/// the column line, then one line per row.
std::string csv_document(const std::string& command, const RunConfig& cfg,
                         const std::vector<std::pair<std::string, std::string>>& meta,
                         const CsvTable& table);

/// Config as a JSON object in entry order, values kept as the strings
/// serialize() writes.
Json config_json(const RunConfig& cfg);

/// Two-space indented JSON with %.17g numbers and null for non-finite ones.
std::string dump_json(const Json& j);

/// Writes `content` to output_dir/name (creating output_dir) and returns the path.
std::string write_output(const RunConfig& cfg, const std::string& name,
                         const std::string& content);

}  // namespace sonic
