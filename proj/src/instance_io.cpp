#include "itf/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace itf {
namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    std::size_t end = pos;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
    if (end > pos) tokens.push_back(s.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

std::optional<int> to_int(std::string_view s) {
  int value = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

int parse_int(std::string_view token, std::size_t line, const std::string& field) {
  const auto value = to_int(token);
  if (!value) {
    throw ParseError("line " + std::to_string(line) + ": expected integer for " + field + ", got '" +
                         std::string(token) + "'",
                     line, field);
  }
  return *value;
}

int parse_key_value(std::string_view token, std::string_view key, std::size_t line) {
  const std::string field(key);
  if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key ||
      token[key.size()] != '=') {
    throw ParseError("line " + std::to_string(line) + ": expected '" + field + "=<int>', got '" +
                         std::string(token) + "'",
                     line, field);
  }
  return parse_int(token.substr(key.size() + 1), line, field);
}

void add_checked_edge(SparsePartiteGraph& g, int i, int a, int j, int b, std::size_t line) {
  const int n = g.part_size();
  if (a < 0 || a >= n || b < 0 || b >= n) {
    throw ParseError("line " + std::to_string(line) + ": edge " + std::to_string(a) + "->" +
                         std::to_string(b) + " has an index outside [0, " + std::to_string(n) + ")",
                     line, "edge");
  }
  try {
    g.add_edge(i, a, j, b);
  } catch (const MatchingViolation& e) {
    throw ParseError("line " + std::to_string(line) + ": matching violation: " + e.what(), line,
                     "edge", true);
  }
}

void check_pair(int i, int j, int k, std::size_t line) {
  if (i < 0 || j < 0 || i >= k || j >= k) {
    throw ParseError("line " + std::to_string(line) + ": pair part index out of range", line, "pair");
  }
  if (i >= j) {
    throw ParseError("line " + std::to_string(line) + ": pair requires i < j", line, "pair");
  }
}

}  // namespace

std::string serialize_text(const SparsePartiteGraph& g) {
  std::ostringstream out;
  out << "knd1 v1 k=" << g.parts() << " n=" << g.part_size() << " base=0\n";
  for (int i = 0; i < g.parts(); ++i) {
    for (int j = i + 1; j < g.parts(); ++j) {
      const auto edges = g.pair_edges(i, j);
      if (edges.empty()) continue;
      out << "pair " << i << ' ' << j << ':';
      for (const auto& [a, b] : edges) out << ' ' << a << "->" << b;
      out << '\n';
    }
  }
  return out.str();
}

SparsePartiteGraph parse_text(std::string_view text) {
  std::optional<SparsePartiteGraph> graph;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (!graph) {
      const auto tokens = split_ws(line);
      if (tokens.size() != 5 || tokens[0] != "knd1" || tokens[1] != "v1") {
        throw ParseError("line " + std::to_string(line_no) +
                             ": expected header 'knd1 v1 k=<k> n=<n> base=0'",
                         line_no, "header");
      }
      const int k = parse_key_value(tokens[2], "k", line_no);
      const int n = parse_key_value(tokens[3], "n", line_no);
      if (parse_key_value(tokens[4], "base", line_no) != 0) {
        throw ParseError("line " + std::to_string(line_no) + ": only base=0 is supported", line_no,
                         "base");
      }
      try {
        graph.emplace(k, n);
      } catch (const InvalidArgument& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no,
                         k < 2 ? "k" : "n");
      }
      continue;
    }

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'pair <i> <j>: ...'", line_no,
                       "pair");
    }
    const auto head = split_ws(line.substr(0, colon));
    if (head.size() != 3 || head[0] != "pair") {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'pair <i> <j>:'", line_no,
                       "pair");
    }
    const int i = parse_int(head[1], line_no, "i");
    const int j = parse_int(head[2], line_no, "j");
    check_pair(i, j, graph->parts(), line_no);
    for (const auto token : split_ws(line.substr(colon + 1))) {
      const auto arrow = token.find("->");
      if (arrow == std::string_view::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": expected 'a->b', got '" +
                             std::string(token) + "'",
                         line_no, "edge");
      }
      const int a = parse_int(token.substr(0, arrow), line_no, "edge");
      const int b = parse_int(token.substr(arrow + 2), line_no, "edge");
      add_checked_edge(*graph, i, a, j, b, line_no);
    }
  }
  if (!graph) throw ParseError("missing header line", 0, "header");
  return std::move(*graph);
}

std::string serialize_json(const SparsePartiteGraph& g) {
  Json doc;
  doc["k"] = g.parts();
  doc["n"] = g.part_size();
  doc["pairs"] = Json::array();
  for (int i = 0; i < g.parts(); ++i) {
    for (int j = i + 1; j < g.parts(); ++j) {
      const auto edges = g.pair_edges(i, j);
      if (edges.empty()) continue;
      Json pair;
      pair["i"] = i;
      pair["j"] = j;
      pair["edges"] = Json::array();
      for (const auto& [a, b] : edges) pair["edges"].push_back({a, b});
      doc["pairs"].push_back(std::move(pair));
    }
  }
  return doc.dump() + "\n";
}

SparsePartiteGraph parse_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0, "json");
  }
  auto get_int = [](const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key) || !obj[key].is_number_integer()) {
      throw ParseError(where + ": missing integer field '" + key + "'", 0, key);
    }
    return obj[key].get<int>();
  };
  const int k = get_int(doc, "k", "document");
  const int n = get_int(doc, "n", "document");
  std::optional<SparsePartiteGraph> graph;
  try {
    graph.emplace(k, n);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0, k < 2 ? "k" : "n");
  }
  if (!doc.contains("pairs") || !doc["pairs"].is_array()) {
    throw ParseError("document: missing array field 'pairs'", 0, "pairs");
  }
  std::size_t index = 0;
  for (const auto& pair : doc["pairs"]) {
    ++index;
    const std::string where = "pairs[" + std::to_string(index - 1) + "]";
    const int i = get_int(pair, "i", where);
    const int j = get_int(pair, "j", where);
    check_pair(i, j, k, index);
    if (!pair.contains("edges") || !pair["edges"].is_array()) {
      throw ParseError(where + ": missing array field 'edges'", index, "edges");
    }
    for (const auto& edge : pair["edges"]) {
      if (!edge.is_array() || edge.size() != 2 || !edge[0].is_number_integer() ||
          !edge[1].is_number_integer()) {
        throw ParseError(where + ": edges must be [a,b] integer pairs", index, "edge");
      }
      add_checked_edge(*graph, i, edge[0].get<int>(), j, edge[1].get<int>(), index);
    }
  }
  return std::move(*graph);
}

std::string serialize(const SparsePartiteGraph& g, InstanceFormat format) {
  return format == InstanceFormat::Json ? serialize_json(g) : serialize_text(g);
}

SparsePartiteGraph parse(std::string_view text, InstanceFormat format) {
  return format == InstanceFormat::Json ? parse_json(text) : parse_text(text);
}

InstanceFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".json" ? InstanceFormat::Json : InstanceFormat::Text;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw InvalidArgument("failed writing '" + path.string() + "'");
}

SparsePartiteGraph read_instance(const std::filesystem::path& path) {
  return parse(read_file(path), format_for_path(path));
}

void write_instance(const std::filesystem::path& path, const SparsePartiteGraph& g) {
  write_file(path, serialize(g, format_for_path(path)));
}

}  // namespace itf
