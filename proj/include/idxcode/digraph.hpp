#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "idxcode/errors.hpp"

namespace idxcode {

/// Fixed-capacity bitset sized at construction; the workhorse for adjacency
/// rows and vertex-set bookkeeping.
class Bitset {
 public:
  Bitset() = default;

  explicit Bitset(int n) : n_(n), w_(static_cast<std::size_t>((n + 63) / 64), 0) {
    if (n < 0) throw BadParametersError("negative bitset size");
  }

  int size() const { return n_; }

  bool test(int i) const {
    check(i);
    return (w_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u;
  }

  void set(int i) {
    check(i);
    w_[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);
  }

  void reset(int i) {
    check(i);
    w_[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63));
  }

  int count() const {
    int c = 0;
    for (std::uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (std::uint64_t w : w_)
      if (w) return true;
    return false;
  }

  bool none() const { return !any(); }

  bool intersects(const Bitset& o) const {
    const std::size_t k = std::min(w_.size(), o.w_.size());
    for (std::size_t i = 0; i < k; ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      const std::uint64_t other = i < o.w_.size() ? o.w_[i] : 0;
      if (w_[i] & ~other) return false;
    }
    return true;
  }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= (i < o.w_.size() ? o.w_[i] : 0);
    return *this;
  }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= (i < o.w_.size() ? o.w_[i] : 0);
    return *this;
  }

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

  bool operator==(const Bitset& o) const = default;

  /// Index of the lowest set bit, or -1.
  int find_first() const { return find_next(-1); }

  /// Index of the lowest set bit strictly above i, or -1.
  int find_next(int i) const {
    for (int j = i + 1; j < n_; ++j)
      if (test(j)) return j;
    return -1;
  }

  std::vector<int> to_vector() const {
    std::vector<int> v;
    for (int i = find_first(); i >= 0; i = find_next(i)) v.push_back(i);
    return v;
  }

 private:
  void check(int i) const {
    if (i < 0 || i >= n_) throw RangeError("bit index out of range");
  }

  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Loop-free digraph on dense vertices 0..m-1 with per-vertex out-neighbor
/// bitsets. `labels` is display metadata only (empty, or one string per
/// vertex) and is ignored by equality.
class Digraph {
 public:
  explicit Digraph(int m) : m_(m) {
    if (m < 0) throw BadParametersError("negative vertex count");
    out_.assign(static_cast<std::size_t>(m), Bitset(m));
  }

  int order() const { return m_; }

  void add_arc(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw LoopError("loop at vertex " + std::to_string(u));
    out_[static_cast<std::size_t>(u)].set(v);
  }

  bool has_arc(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return u != v && out_[static_cast<std::size_t>(u)].test(v);
  }

  const Bitset& out(int v) const {
    check_vertex(v);
    return out_[static_cast<std::size_t>(v)];
  }

  int out_degree(int v) const { return out(v).count(); }

  std::size_t arc_count() const {
    std::size_t c = 0;
    for (const auto& b : out_) c += static_cast<std::size_t>(b.count());
    return c;
  }

  /// Arcs in ascending (u, v) order.
  std::vector<std::pair<int, int>> arcs() const {
    std::vector<std::pair<int, int>> a;
    a.reserve(arc_count());
    for (int u = 0; u < m_; ++u)
      for (int v = out(u).find_first(); v >= 0; v = out(u).find_next(v)) a.emplace_back(u, v);
    return a;
  }

  Digraph transpose() const {
    Digraph t(m_);
    for (int u = 0; u < m_; ++u)
      for (int v = out(u).find_first(); v >= 0; v = out(u).find_next(v)) t.add_arc(v, u);
    t.labels = labels;
    return t;
  }

  bool operator==(const Digraph& o) const { return m_ == o.m_ && out_ == o.out_; }

  std::vector<std::string> labels;

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= m_) throw RangeError("vertex " + std::to_string(v) + " out of range");
  }

  int m_ = 0;
  std::vector<Bitset> out_;
};

/// Simple undirected graph; carrier for the coloring computations.
class UndirectedGraph {
 public:
  explicit UndirectedGraph(int n) : n_(n) {
    if (n < 0) throw BadParametersError("negative vertex count");
    adj_.assign(static_cast<std::size_t>(n), Bitset(n));
  }

  int order() const { return n_; }

  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw LoopError("loop at vertex " + std::to_string(u));
    adj_[static_cast<std::size_t>(u)].set(v);
    adj_[static_cast<std::size_t>(v)].set(u);
  }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return u != v && adj_[static_cast<std::size_t>(u)].test(v);
  }

  const Bitset& neighbors(int v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
  }

  int degree(int v) const { return neighbors(v).count(); }

  std::size_t edge_count() const {
    std::size_t c = 0;
    for (const auto& b : adj_) c += static_cast<std::size_t>(b.count());
    return c / 2;
  }

  bool operator==(const UndirectedGraph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw RangeError("vertex " + std::to_string(v) + " out of range");
  }

  int n_ = 0;
  std::vector<Bitset> adj_;
};

/// Directional complement: arc (u,v) present iff u != v and absent in g.
inline Digraph complement(const Digraph& g) {
  const int m = g.order();
  Digraph c(m);
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v)
      if (u != v && !g.has_arc(u, v)) c.add_arc(u, v);
  c.labels = g.labels;
  return c;
}

inline UndirectedGraph complement(const UndirectedGraph& g) {
  const int n = g.order();
  UndirectedGraph c(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) c.add_edge(u, v);
  return c;
}

/// Forgets orientation: u~v iff some arc joins u and v.
inline UndirectedGraph underlying(const Digraph& g) {
  const int m = g.order();
  UndirectedGraph u(m);
  for (int a = 0; a < m; ++a)
    for (int b = g.out(a).find_first(); b >= 0; b = g.out(a).find_next(b))
      u.add_edge(a, b);
  return u;
}

/// True iff every ordered pair of distinct vertices of S is an arc: a clique
/// in the digraph sense, requiring both directions.
inline bool is_biclique(const Digraph& g, const std::vector<int>& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (i != j && !g.has_arc(s[i], s[j])) return false;
  return true;
}

/// Parses the edge-list text format: first line `n=<m>`, each following
/// non-empty non-# line is `u v` for arc (u,v).
inline Digraph parse_digraph(const std::string& text) {
  std::optional<Digraph> g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    const std::string body = line.substr(start);

    if (!g) {
      if (body.rfind("n=", 0) != 0)
        throw ParseError("line " + std::to_string(lineno) + ": expected n=<count>");
      std::size_t used = 0;
      int m = 0;
      try {
        m = std::stoi(body.substr(2), &used);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": bad vertex count");
      }
      if (used != body.size() - 2 || m < 0)
        throw ParseError("line " + std::to_string(lineno) + ": bad vertex count");
      g.emplace(m);
      continue;
    }

    std::istringstream ls(body);
    long long u = 0, v = 0;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra))
      throw ParseError("line " + std::to_string(lineno) + ": expected `u v`");
    if (u < 0 || u >= g->order() || v < 0 || v >= g->order())
      throw RangeError("line " + std::to_string(lineno) + ": vertex out of range");
    if (u == v) throw LoopError("line " + std::to_string(lineno) + ": loop rejected");
    g->add_arc(static_cast<int>(u), static_cast<int>(v));
  }
  if (!g) throw ParseError("missing n=<count> header");
  return *g;
}

/// Inverse of parse_digraph: header plus arcs in ascending order.
inline std::string serialize_digraph(const Digraph& g) {
  std::ostringstream out;
  out << "n=" << g.order() << "\n";
  for (const auto& [u, v] : g.arcs()) out << u << " " << v << "\n";
  return out.str();
}

/// Streams every labeled loop-free digraph on m vertices exactly once, in
/// the order given by treating the arc set as a binary counter over ordered
/// pairs (row-major, diagonal skipped; pair index 0 is the lowest bit).
class DigraphEnumerator {
 public:
  explicit DigraphEnumerator(int m) : m_(m) {
    if (m < 0) throw BadParametersError("negative vertex count");
    if (m > kMaxVertices) throw TooLargeError("enumeration supports at most 5 vertices");
    for (int u = 0; u < m; ++u)
      for (int v = 0; v < m; ++v)
        if (u != v) slots_.emplace_back(u, v);
  }

  static constexpr int kMaxVertices = 5;

  std::uint64_t total() const { return std::uint64_t{1} << slots_.size(); }

  std::optional<Digraph> next() {
    if (counter_ >= total()) return std::nullopt;
    Digraph g(m_);
    for (std::size_t i = 0; i < slots_.size(); ++i)
      if ((counter_ >> i) & 1) g.add_arc(slots_[i].first, slots_[i].second);
    ++counter_;
    return g;
  }

 private:
  int m_;
  std::uint64_t counter_ = 0;
  std::vector<std::pair<int, int>> slots_;
};

}  // namespace idxcode
