#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <queue>
#include <string>
#include <vector>

#include "prufer/errors.hpp"
#include "prufer/tree.hpp"

namespace prufer {

// Integer string of length n-2 over {1..n}; the representation that gets
// mutated. entries[k] holds p_{k+1}.
struct PruferString {
  int n = 0;
  std::vector<int> entries;

  int p(int i) const { return entries[i - 1]; }  // 1-based

  friend bool operator==(const PruferString& a, const PruferString& b) {
    return a.n == b.n && a.entries == b.entries;
  }
};

inline PruferString make_prufer(int n, std::vector<int> entries) {
  if (n < 3) throw TooSmallError("Prufer strings need n >= 3, got n = " + std::to_string(n));
  if (static_cast<int>(entries.size()) != n - 2) {
    throw TooSmallError("expected " + std::to_string(n - 2) + " entries, got " +
                        std::to_string(entries.size()));
  }
  for (int e : entries) {
    if (e < 1 || e > n) throw ParseError("entry out of range: " + std::to_string(e));
  }
  return PruferString{n, std::move(entries)};
}

// First-neighbor map: h[v] is the vertex v was attached to at the moment v
// first entered the partial tree during decoding; defined for v in {1..n-1}.
struct HMap {
  int n = 0;
  std::vector<int> h;  // h[v], index 0 unused, h[n] == 0

  int operator()(int v) const { return h[v]; }
};

// One decoder step: at step i the vertex y joined the partial tree through
// the edge {y, attach}.
struct DecodeStep {
  int i = 0;
  int y = 0;
  int attach = 0;
};

// Incremental rear-to-front decoder. The string is read from entry n-2
// down to entry 1; step i picks y_i = p_i if p_i is still unplaced and the
// largest unplaced vertex otherwise, then adds the edge {y_i, p_{i+1}} with
// the virtual entry p_{n-1} = n. Step 0 places the one remaining vertex.
//
// An entry override (position/value) lets the same buffer serve as the
// mutated string of a pair without copying it.
//
// Membership tests are O(1); the largest unplaced vertex only ever moves
// down, so all maximum queries together cost O(n). A full decode is O(n).
class DecodeRun {
 public:
  DecodeRun() = default;

  explicit DecodeRun(const PruferString& p) { reset(p); }

  void reset(const PruferString& p, int override_pos = 0, int override_val = 0) {
    reset(p.n, p.entries.data(), override_pos, override_val);
  }

  void reset(int n, const int* entries, int override_pos = 0, int override_val = 0) {
    n_ = n;
    entries_ = entries;
    override_pos_ = override_pos;
    override_val_ = override_val;
    unplaced_.assign(static_cast<std::size_t>(n) + 1, 1);
    unplaced_[0] = 0;
    unplaced_[n] = 0;  // the root n starts placed
    h_.assign(static_cast<std::size_t>(n) + 1, 0);
    max_cursor_ = n - 1;
    next_step_ = n - 2;
  }

  int n() const { return n_; }
  bool done() const { return next_step_ < 0; }
  int next_step() const { return next_step_; }

  // p_i with the virtual entry p_{n-1} = n and the override applied.
  int entry(int i) const {
    if (i == n_ - 1) return n_;
    if (i == override_pos_) return override_val_;
    return entries_[i - 1];
  }

  bool unplaced(int v) const { return unplaced_[v] != 0; }
  bool placed(int v) const { return unplaced_[v] == 0; }

  // Attachment neighbor of v at placement time; 0 for the root and for
  // vertices not yet placed.
  int h_of(int v) const { return h_[v]; }

  int max_unplaced() {
    while (max_cursor_ >= 1 && !unplaced_[max_cursor_]) --max_cursor_;
    return max_cursor_;
  }

  DecodeStep step() {
    const int i = next_step_--;
    int y;
    if (i >= 1) {
      const int pi = entry(i);
      y = unplaced_[pi] ? pi : max_unplaced();
    } else {
      y = max_unplaced();  // the single vertex left in X_1
    }
    unplaced_[y] = 0;
    const int attach = entry(i + 1);
    h_[y] = attach;
    return DecodeStep{i, y, attach};
  }

 private:
  int n_ = 0;
  const int* entries_ = nullptr;
  int override_pos_ = 0;
  int override_val_ = 0;
  std::vector<std::uint8_t> unplaced_;
  std::vector<int> h_;
  int max_cursor_ = 0;
  int next_step_ = -1;
};

// Decodes P into its tree. edges[i] is the edge added at step i, so the
// printed order starts from the edge of the last-placed vertex.
inline LabeledTree decode(const PruferString& p) {
  DecodeRun run(p);
  LabeledTree tree;
  tree.n = p.n;
  tree.edges.assign(static_cast<std::size_t>(p.n) - 1, Edge{});
  while (!run.done()) {
    DecodeStep s = run.step();
    tree.edges[s.i] = make_edge(s.y, s.attach);
  }
  return tree;
}

// Runs the decoder and hands every step to `hook(const DecodeStep&)`.
template <typename Hook>
inline void decode_with_hook(const PruferString& p, Hook&& hook) {
  DecodeRun run(p);
  while (!run.done()) hook(run.step());
}

inline HMap h_map(const PruferString& p) {
  DecodeRun run(p);
  HMap map;
  map.n = p.n;
  map.h.assign(static_cast<std::size_t>(p.n) + 1, 0);
  while (!run.done()) {
    DecodeStep s = run.step();
    map.h[s.y] = s.attach;
  }
  return map;
}

// Encodes a tree: repeatedly delete the lowest-numbered leaf and record its
// neighbor. Min-heap over current leaves, O(n log n).
inline PruferString encode(const LabeledTree& tree) {
  const int n = tree.n;
  if (n < 3) throw TooSmallError("encoding needs n >= 3, got n = " + std::to_string(n));

  std::vector<int> degree(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> head(static_cast<std::size_t>(n) + 1, -1);
  std::vector<std::pair<int, int>> adj;  // (neighbor, next index)
  adj.reserve(2 * tree.edges.size());
  for (const Edge& e : tree.edges) {
    ++degree[e.u];
    ++degree[e.v];
    adj.push_back({e.v, head[e.u]});
    head[e.u] = static_cast<int>(adj.size()) - 1;
    adj.push_back({e.u, head[e.v]});
    head[e.v] = static_cast<int>(adj.size()) - 1;
  }

  std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
  for (int v = 1; v <= n; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }

  std::vector<char> removed(static_cast<std::size_t>(n) + 1, 0);
  PruferString out;
  out.n = n;
  out.entries.reserve(static_cast<std::size_t>(n) - 2);
  for (int step = 0; step < n - 2; ++step) {
    int leaf = leaves.top();
    leaves.pop();
    removed[leaf] = 1;
    int neighbor = 0;
    for (int idx = head[leaf]; idx != -1; idx = adj[idx].second) {
      if (!removed[adj[idx].first]) {
        neighbor = adj[idx].first;
        break;
      }
    }
    out.entries.push_back(neighbor);
    if (--degree[neighbor] == 1) leaves.push(neighbor);
  }
  return out;
}

// --- text format ------------------------------------------------------
//
// One string per line: `n; p1,p2,...,p_{n-2}` with 1-based entries.

inline std::string format_prufer(const PruferString& p) {
  std::string out = std::to_string(p.n) + "; ";
  for (std::size_t i = 0; i < p.entries.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(p.entries[i]);
  }
  return out;
}

inline PruferString parse_prufer(const std::string& line) {
  std::size_t pos = 0;
  int n = detail::parse_int(line, pos, "order");
  detail::expect_char(line, pos, ';');
  std::vector<int> entries;
  detail::skip_ws(line, pos);
  while (pos < line.size()) {
    entries.push_back(detail::parse_int(line, pos, "entry"));
    detail::skip_ws(line, pos);
    if (pos == line.size()) break;
    detail::expect_char(line, pos, ',');
  }
  try {
    return make_prufer(n, std::move(entries));
  } catch (const TooSmallError& e) {
    throw ParseError(e.what());
  }
}

inline std::vector<PruferString> parse_prufer_lines(std::istream& in) {
  std::vector<PruferString> strings;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      strings.push_back(parse_prufer(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return strings;
}

// Parses a bare comma-separated entry list (CLI `--string 4,3,2,2,7`).
inline PruferString parse_entry_list(int n, const std::string& csl) {
  std::vector<int> entries;
  std::size_t pos = 0;
  detail::skip_ws(csl, pos);
  while (pos < csl.size()) {
    entries.push_back(detail::parse_int(csl, pos, "entry"));
    detail::skip_ws(csl, pos);
    if (pos == csl.size()) break;
    detail::expect_char(csl, pos, ',');
  }
  return make_prufer(n, std::move(entries));
}

}  // namespace prufer
