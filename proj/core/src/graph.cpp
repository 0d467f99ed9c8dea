#include "gsh/graph.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <string_view>
#include <unordered_set>

#include "gsh/errors.hpp"
#include "gsh/rng.hpp"

namespace gsh {

bool adjacent(const Edge& k, const Edge& k2, GraphMode mode) {
  if (mode == GraphMode::undirected) {
    return k.a == k2.a || k.a == k2.b || k.b == k2.a || k.b == k2.b;
  }
  return k.b == k2.a || k.a == k2.b;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Extracts the next whitespace-separated token, advancing `s` past it.
std::string_view next_token(std::string_view& s) {
  std::size_t start = 0;
  while (start < s.size() && (s[start] == ' ' || s[start] == '\t')) ++start;
  std::size_t end = start;
  while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
  std::string_view tok = s.substr(start, end - start);
  s.remove_prefix(end);
  return tok;
}

NodeId parse_node(std::string_view tok, std::size_t line_no) {
  NodeId value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line_no, "expected unsigned integer node id, got \"" +
                                  std::string(tok) + "\"");
  }
  return value;
}

}  // namespace

EdgeStream ingest_edge_list(std::istream& in, GraphMode mode, IngestReport* report) {
  EdgeStream stream;
  stream.mode = mode;
  IngestReport rep;
  std::unordered_set<Edge, EdgeHash> seen;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = trim(line);
    if (s.empty() || s.front() == '#' || s.front() == '%') continue;
    ++rep.data_lines;

    std::string_view rest = s;
    std::string_view tok_a = next_token(rest);
    std::string_view tok_b = next_token(rest);
    if (tok_a.empty() || tok_b.empty()) {
      throw ParseError(line_no, "expected at least two node tokens");
    }
    NodeId a = parse_node(tok_a, line_no);
    NodeId b = parse_node(tok_b, line_no);
    // Any further columns are weights or timestamps; ignored.

    if (a == b) {
      ++rep.dropped_self_loops;
      continue;
    }
    Edge e = canonical(Edge{a, b}, mode);
    if (!seen.insert(e).second) {
      ++rep.dropped_duplicates;
      continue;
    }
    stream.edges.push_back(e);
  }

  if (report != nullptr) *report = rep;
  if (stream.edges.empty()) {
    throw ParseError("empty graph: no edges survived ingestion");
  }
  return stream;
}

EdgeStream ingest_edge_list_file(const std::string& path, GraphMode mode,
                                 IngestReport* report) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file: " + path);
  return ingest_edge_list(in, mode, report);
}

EdgeStream permute(const EdgeStream& stream, std::uint64_t seed) {
  EdgeStream out = stream;
  std::mt19937_64 rng(seed);
  for (std::size_t i = out.edges.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(out.edges[i - 1], out.edges[j]);
  }
  out.order_seed = seed;
  return out;
}

}  // namespace gsh
