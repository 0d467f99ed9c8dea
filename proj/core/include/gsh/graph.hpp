#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gsh {

using NodeId = std::uint64_t;

enum class GraphMode : std::uint8_t { undirected, directed };

// A node pair. Undirected streams store edges canonically (a <= b);
// directed streams keep (tail, head) order. Self-loops are rejected at
// ingestion, so a != b throughout.
struct Edge {
  NodeId a = 0;
  NodeId b = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge canonical(Edge e, GraphMode mode) {
  if (mode == GraphMode::undirected && e.b < e.a) std::swap(e.a, e.b);
  return e;
}

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    std::uint64_t h = e.a * 0x9e3779b97f4a7c15ULL;
    h ^= e.b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Undirected: true iff the edges share at least one endpoint (an edge is
// adjacent to itself). Directed: true iff head(k) == tail(k2) or
// tail(k) == head(k2); not symmetric.
bool adjacent(const Edge& k, const Edge& k2, GraphMode mode);

struct EdgeStream {
  std::vector<Edge> edges;
  GraphMode mode = GraphMode::undirected;
  std::optional<std::uint64_t> order_seed;  // seed of the last permutation

  std::size_t size() const noexcept { return edges.size(); }
  bool empty() const noexcept { return edges.empty(); }
};

struct IngestReport {
  std::size_t data_lines = 0;  // lines that were neither blank nor comments
  std::size_t dropped_self_loops = 0;
  std::size_t dropped_duplicates = 0;

  std::size_t dropped() const noexcept {
    return dropped_self_loops + dropped_duplicates;
  }
};

// Parses line-oriented edge-list text (SNAP / Network Repository style):
// two whitespace-separated unsigned node ids per line, extra columns ignored,
// '#' and '%' start comments, blank lines skipped. Duplicate edges (including
// reversed pairs in undirected mode) and self-loops are dropped and counted.
// Throws ParseError on malformed lines or when no edge survives.
EdgeStream ingest_edge_list(std::istream& in, GraphMode mode,
                            IngestReport* report = nullptr);
EdgeStream ingest_edge_list_file(const std::string& path, GraphMode mode,
                                 IngestReport* report = nullptr);

// Uniformly random arrival order, deterministic per seed (Fisher-Yates).
EdgeStream permute(const EdgeStream& stream, std::uint64_t seed);

}  // namespace gsh
