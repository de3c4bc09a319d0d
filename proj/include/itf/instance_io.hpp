#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "itf/graph.hpp"

namespace itf {

enum class InstanceFormat { Text, Json };

/// Text form:
///   knd1 v1 k=<k> n=<n> base=0
///   pair <i> <j>: a->b a->b ...
/// One line per nonempty pair with i < j, pairs in lexicographic order and
/// edges sorted by a. Blank lines and '#' comments are ignored on input.
std::string serialize_text(const SparsePartiteGraph& g);
SparsePartiteGraph parse_text(std::string_view text);

/// {"k":..,"n":..,"pairs":[{"i":..,"j":..,"edges":[[a,b],...]}]}
std::string serialize_json(const SparsePartiteGraph& g);
SparsePartiteGraph parse_json(std::string_view text);

std::string serialize(const SparsePartiteGraph& g, InstanceFormat format);
SparsePartiteGraph parse(std::string_view text, InstanceFormat format);

/// ".json" selects JSON, anything else the text form.
InstanceFormat format_for_path(const std::filesystem::path& path);

SparsePartiteGraph read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const SparsePartiteGraph& g);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace itf
