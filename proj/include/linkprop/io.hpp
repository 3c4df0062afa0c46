#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "linkprop/features.hpp"
#include "linkprop/graph.hpp"
#include "linkprop/proposal.hpp"
#include "linkprop/splits.hpp"

namespace linkprop::io {

/// Shortest round-trip decimal form of a double, locale independent.
inline std::string format_double(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf, end);
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line,
                                                  char sep) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = line.find(sep, begin);
    if (end == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      break;
    }
    fields.push_back(line.substr(begin, end - begin));
    begin = end + 1;
  }
  return fields;
}

template <class T>
inline bool parse_number(std::string_view text, T& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto result = std::from_chars(first, last, out);
  return result.ec == std::errc() && result.ptr == last;
}

inline std::runtime_error file_error(const std::filesystem::path& path,
                                     std::size_t line, const std::string& what) {
  return std::runtime_error(path.string() + ":" + std::to_string(line) + ": " +
                            what);
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

inline bool skippable(std::string_view line) {
  return line.empty() || line.front() == '#';
}

}  // namespace detail

/// Reads `u<TAB>v[<TAB>timestamp]` rows with integer node ids. Lines starting
/// with '#' and blank lines are ignored. The first data row fixes whether the
/// timestamp column is present; every other row must match.
inline EdgeList read_edge_list(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  EdgeList list;
  std::string line;
  std::size_t line_no = 0;
  std::optional<bool> timestamped;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::skippable(line)) continue;
    const auto fields = detail::split_fields(line, '\t');
    if (fields.size() != 2 && fields.size() != 3)
      throw detail::file_error(path, line_no, "expected 2 or 3 tab-separated fields");
    if (!timestamped) timestamped = fields.size() == 3;
    if (*timestamped != (fields.size() == 3))
      throw detail::file_error(path, line_no, "inconsistent timestamp column");
    NodeId u = 0, v = 0;
    if (!detail::parse_number(fields[0], u) || !detail::parse_number(fields[1], v))
      throw detail::file_error(path, line_no, "node ids must be nonnegative integers");
    if (*timestamped) {
      std::int64_t t = 0;
      if (!detail::parse_number(fields[2], t))
        throw detail::file_error(path, line_no, "bad timestamp");
      list.push_back(u, v, t);
    } else {
      list.push_back(u, v);
    }
  }
  return list;
}

inline void write_edge_list(const std::filesystem::path& path,
                            const EdgeList& list) {
  auto out = detail::open_output(path);
  for (std::size_t i = 0; i < list.size(); ++i) {
    out << list.edges[i].u << '\t' << list.edges[i].v;
    if (list.has_timestamps()) out << '\t' << list.timestamps[i];
    out << '\n';
  }
}

struct LabeledEdgeList {
  EdgeList edges;
  std::vector<std::string> labels;  // labels[id] is the original token
};

/// Reads an edge list whose endpoints are arbitrary string labels, mapping
/// them to dense 0-based ids in order of first appearance.
inline LabeledEdgeList read_labeled_edge_list(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  LabeledEdgeList out;
  std::unordered_map<std::string, NodeId> ids;
  std::string line;
  std::size_t line_no = 0;
  std::optional<bool> timestamped;
  auto intern = [&](std::string_view token) {
    const auto [it, inserted] = ids.try_emplace(std::string(token),
                                                static_cast<NodeId>(ids.size()));
    if (inserted) out.labels.push_back(it->first);
    return it->second;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::skippable(line)) continue;
    const auto fields = detail::split_fields(line, '\t');
    if (fields.size() != 2 && fields.size() != 3)
      throw detail::file_error(path, line_no, "expected 2 or 3 tab-separated fields");
    if (!timestamped) timestamped = fields.size() == 3;
    if (*timestamped != (fields.size() == 3))
      throw detail::file_error(path, line_no, "inconsistent timestamp column");
    const NodeId u = intern(fields[0]);
    const NodeId v = intern(fields[1]);
    if (*timestamped) {
      std::int64_t t = 0;
      if (!detail::parse_number(fields[2], t))
        throw detail::file_error(path, line_no, "bad timestamp");
      out.edges.push_back(u, v, t);
    } else {
      out.edges.push_back(u, v);
    }
  }
  return out;
}

/// Label table rows: `label<TAB>id`.
inline void write_label_table(const std::filesystem::path& path,
                              std::span<const std::string> labels) {
  auto out = detail::open_output(path);
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << labels[i] << '\t' << i << '\n';
}

inline std::vector<std::string> read_label_table(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::vector<std::string> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::skippable(line)) continue;
    const auto fields = detail::split_fields(line, '\t');
    std::size_t id = 0;
    if (fields.size() != 2 || !detail::parse_number(fields[1], id))
      throw detail::file_error(path, line_no, "expected `label<TAB>id`");
    if (id != labels.size())
      throw detail::file_error(path, line_no, "label ids must be dense and ordered");
    labels.emplace_back(fields[0]);
  }
  return labels;
}

/// Feature CSV: first column node id, remaining columns real features, with
/// an optional header row. Every node id in [0, n) must appear exactly once.
inline FeatureMatrix read_feature_csv(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  std::vector<std::pair<NodeId, std::vector<double>>> rows;
  bool first_data = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::skippable(line)) continue;
    const auto fields = detail::split_fields(line, ',');
    if (fields.size() < 2)
      throw detail::file_error(path, line_no, "expected id plus at least one feature");
    NodeId id = 0;
    if (!detail::parse_number(fields[0], id)) {
      if (first_data) continue;  // header row
      throw detail::file_error(path, line_no, "bad node id");
    }
    first_data = false;
    if (dim == 0) dim = fields.size() - 1;
    if (fields.size() - 1 != dim)
      throw detail::file_error(path, line_no, "inconsistent feature count");
    std::vector<double> values(dim);
    for (std::size_t j = 0; j < dim; ++j)
      if (!detail::parse_number(fields[j + 1], values[j]))
        throw detail::file_error(path, line_no, "bad feature value");
    rows.emplace_back(id, std::move(values));
  }
  if (rows.empty()) throw std::runtime_error(path.string() + ": no feature rows");
  const std::size_t n = rows.size();
  std::vector<double> data(n * dim, 0.0);
  std::vector<bool> filled(n, false);
  for (const auto& [id, values] : rows) {
    if (id >= n || filled[id])
      throw std::runtime_error(path.string() +
                               ": node ids must cover 0..n-1 exactly once");
    filled[id] = true;
    std::copy(values.begin(), values.end(), data.begin() + id * dim);
  }
  return FeatureMatrix(n, dim, std::move(data));
}

inline void write_feature_csv(const std::filesystem::path& path,
                              const FeatureMatrix& features) {
  auto out = detail::open_output(path);
  for (NodeId u = 0; u < features.num_nodes(); ++u) {
    out << u;
    for (double x : features.row(u)) out << ',' << format_double(x);
    out << '\n';
  }
}

/// Proposal rows: `u<TAB>v<TAB>score`, best first.
inline void write_proposal(const std::filesystem::path& path,
                           const ProposalSet& p) {
  auto out = detail::open_output(path);
  for (const ProposalEntry& e : p.entries)
    out << e.u << '\t' << e.v << '\t' << format_double(e.score) << '\n';
}

inline ProposalSet read_proposal(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  ProposalSet p;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::skippable(line)) continue;
    const auto fields = detail::split_fields(line, '\t');
    ProposalEntry entry;
    if (fields.size() != 3 || !detail::parse_number(fields[0], entry.u) ||
        !detail::parse_number(fields[1], entry.v) ||
        !detail::parse_number(fields[2], entry.score))
      throw detail::file_error(path, line_no, "expected `u<TAB>v<TAB>score`");
    const Edge e = canonical({entry.u, entry.v});
    entry.u = e.u;
    entry.v = e.v;
    p.entries.push_back(entry);
  }
  for (std::size_t i = 1; i < p.entries.size(); ++i)
    if (!proposal_order(p.entries[i - 1], p.entries[i]))
      throw std::runtime_error(path.string() +
                               ": proposal rows must be strictly ordered");
  p.provenance = "file:" + path.filename().string();
  return p;
}

inline nlohmann::json split_to_json(const EdgeSplit& s) {
  return {{"kind", to_string(s.kind)},
          {"num_nodes", s.num_nodes},
          {"counts",
           {{"train_pos", s.train_pos.size()},
            {"valid_pos", s.valid_pos.size()},
            {"test_pos", s.test_pos.size()},
            {"valid_neg", s.valid_neg.size()},
            {"test_neg", s.test_neg.size()}}}};
}

/// A split directory holds the five edge-list files plus split.json.
inline void write_split(const std::filesystem::path& dir, const EdgeSplit& s,
                        const nlohmann::json& extra = {}) {
  std::filesystem::create_directories(dir);
  auto dump = [&](const char* name, const std::vector<Edge>& part) {
    EdgeList list;
    list.edges = part;
    write_edge_list(dir / name, list);
  };
  dump("train_pos.tsv", s.train_pos);
  dump("valid_pos.tsv", s.valid_pos);
  dump("test_pos.tsv", s.test_pos);
  dump("valid_neg.tsv", s.valid_neg);
  dump("test_neg.tsv", s.test_neg);
  nlohmann::json meta = split_to_json(s);
  if (!extra.is_null())
    for (const auto& [key, value] : extra.items()) meta[key] = value;
  auto out = detail::open_output(dir / "split.json");
  out << meta.dump(2) << '\n';
}

inline EdgeSplit read_split(const std::filesystem::path& dir) {
  auto in = detail::open_input(dir / "split.json");
  nlohmann::json meta = nlohmann::json::parse(in);
  EdgeSplit s;
  s.kind = split_kind_from_string(meta.at("kind").get<std::string>());
  s.num_nodes = meta.at("num_nodes").get<std::size_t>();
  auto load = [&](const char* name) {
    std::vector<Edge> part;
    for (const Edge& e : read_edge_list(dir / name).edges)
      part.push_back(canonical(e));
    return part;
  };
  s.train_pos = load("train_pos.tsv");
  s.valid_pos = load("valid_pos.tsv");
  s.test_pos = load("test_pos.tsv");
  s.valid_neg = load("valid_neg.tsv");
  s.test_neg = load("test_neg.tsv");
  check_split(s, !s.valid_neg.empty() || !s.test_neg.empty());
  return s;
}

inline void write_json(const std::filesystem::path& path,
                       const nlohmann::json& value) {
  auto out = detail::open_output(path);
  out << value.dump(2) << '\n';
}

inline nlohmann::json read_json(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return nlohmann::json::parse(in);
}

}  // namespace linkprop::io
