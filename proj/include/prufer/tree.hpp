#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "prufer/errors.hpp"

namespace prufer {

// Unordered pair of distinct vertex labels, stored min-first so that edge
// sets compare and intersect bit-exactly.
struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
  friend bool operator!=(const Edge& a, const Edge& b) { return !(a == b); }
  friend bool operator<(const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  }
};

inline Edge make_edge(int a, int b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

// Labeled tree on the vertex set {1..n}, kept as an edge list. The edge
// order is whatever the producer used (decoders keep step order); equality
// and distance work on the sorted canonical form.
struct LabeledTree {
  int n = 0;
  std::vector<Edge> edges;

  std::vector<Edge> canonical_edges() const {
    std::vector<Edge> out = edges;
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const LabeledTree& a, const LabeledTree& b) {
    return a.n == b.n && a.canonical_edges() == b.canonical_edges();
  }
};

// Checks that `edges` forms a tree on {1..n}: n-1 edges, labels in range,
// no self-loops or duplicates, connected (one traversal; with n-1 distinct
// edges connectivity also rules out cycles).
inline LabeledTree validate_tree(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 2) throw NotATreeError("vertex count must be at least 2");
  if (static_cast<int>(edges.size()) != n - 1) {
    throw NotATreeError("expected " + std::to_string(n - 1) + " edges, got " +
                        std::to_string(edges.size()));
  }
  LabeledTree tree;
  tree.n = n;
  tree.edges.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a < 1 || a > n || b < 1 || b > n) {
      throw NotATreeError("vertex label out of range: " + std::to_string(a < 1 || a > n ? a : b));
    }
    if (a == b) throw NotATreeError("self-loop at vertex " + std::to_string(a));
    tree.edges.push_back(make_edge(a, b));
  }
  std::vector<Edge> sorted = tree.canonical_edges();
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw NotATreeError("duplicate edge");
  }

  // Connectivity by one pass over an adjacency structure.
  std::vector<int> head(n + 1, -1);
  std::vector<std::pair<int, int>> adj;  // (neighbor, next index)
  adj.reserve(2 * tree.edges.size());
  for (const Edge& e : tree.edges) {
    adj.push_back({e.v, head[e.u]});
    head[e.u] = static_cast<int>(adj.size()) - 1;
    adj.push_back({e.u, head[e.v]});
    head[e.v] = static_cast<int>(adj.size()) - 1;
  }
  std::vector<char> seen(n + 1, 0);
  std::vector<int> stack{1};
  seen[1] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int idx = head[v]; idx != -1; idx = adj[idx].second) {
      int w = adj[idx].first;
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) throw NotATreeError("edge set is not connected");
  return tree;
}

inline int shared_edge_count(const LabeledTree& a, const LabeledTree& b) {
  std::vector<Edge> ea = a.canonical_edges();
  std::vector<Edge> eb = b.canonical_edges();
  int shared = 0;
  std::size_t i = 0, j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i] == eb[j]) {
      ++shared;
      ++i;
      ++j;
    } else if (ea[i] < eb[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return shared;
}

// Edge-set distance: n-1 minus the number of shared edges. Symmetric,
// zero exactly when the edge sets coincide.
inline int tree_distance(const LabeledTree& a, const LabeledTree& b) {
  if (a.n != b.n) {
    throw SizeMismatchError("tree sizes differ: " + std::to_string(a.n) + " vs " +
                            std::to_string(b.n));
  }
  return a.n - 1 - shared_edge_count(a, b);
}

// --- text format ------------------------------------------------------
//
// One tree per line: `n; u1-v1, u2-v2, ...` with 1-based labels.

inline std::string format_tree(const LabeledTree& tree) {
  std::string out = std::to_string(tree.n) + ";";
  for (std::size_t i = 0; i < tree.edges.size(); ++i) {
    out += i == 0 ? " " : ", ";
    out += std::to_string(tree.edges[i].u) + "-" + std::to_string(tree.edges[i].v);
  }
  return out;
}

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
}

inline int parse_int(const std::string& s, std::size_t& pos, const char* what) {
  skip_ws(s, pos);
  std::size_t start = pos;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
  if (pos == start) throw ParseError(std::string("expected ") + what);
  long value = 0;
  for (std::size_t i = start; i < pos; ++i) {
    value = value * 10 + (s[i] - '0');
    if (value > 1000000000L) throw ParseError(std::string(what) + " out of range");
  }
  return static_cast<int>(value);
}

inline void expect_char(const std::string& s, std::size_t& pos, char c) {
  skip_ws(s, pos);
  if (pos >= s.size() || s[pos] != c) {
    throw ParseError(std::string("expected '") + c + "'");
  }
  ++pos;
}

}  // namespace detail

inline LabeledTree parse_tree(const std::string& line) {
  std::size_t pos = 0;
  int n = detail::parse_int(line, pos, "vertex count");
  detail::expect_char(line, pos, ';');
  std::vector<std::pair<int, int>> edges;
  detail::skip_ws(line, pos);
  while (pos < line.size()) {
    int u = detail::parse_int(line, pos, "vertex label");
    detail::expect_char(line, pos, '-');
    int v = detail::parse_int(line, pos, "vertex label");
    edges.push_back({u, v});
    detail::skip_ws(line, pos);
    if (pos == line.size()) break;
    detail::expect_char(line, pos, ',');
    detail::skip_ws(line, pos);
  }
  try {
    return validate_tree(n, edges);
  } catch (const NotATreeError& e) {
    throw ParseError(std::string("not a tree: ") + e.what());
  }
}

// Parses every non-empty line; errors carry the 1-based line number.
inline std::vector<LabeledTree> parse_tree_lines(std::istream& in) {
  std::vector<LabeledTree> trees;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      trees.push_back(parse_tree(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return trees;
}

}  // namespace prufer
