#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "idxcode/digraph.hpp"
#include "idxcode/errors.hpp"

namespace idxcode {

/// Total map from the vertices of a source digraph into a target digraph.
struct VertexMap {
  int source_size = 0;
  int target_size = 0;
  std::vector<int> map;

  bool operator==(const VertexMap&) const = default;
};

/// Default node budget for backtracking searches; one node is one attempted
/// vertex assignment. Node counts, not wall clocks, keep runs reproducible.
inline constexpr std::uint64_t kDefaultSearchBudget = 20'000'000;

/// True iff phi maps every arc of g onto an arc of h. Since h is loop-free
/// this forces distinct images across arcs.
inline bool verify_homomorphism(const Digraph& g, const Digraph& h, const VertexMap& phi) {
  if (phi.source_size != g.order() || phi.target_size != h.order() ||
      static_cast<int>(phi.map.size()) != g.order())
    throw SizeMismatchError("vertex map does not fit the given graphs");
  for (int t : phi.map)
    if (t < 0 || t >= h.order()) throw RangeError("map image out of range");
  for (int u = 0; u < g.order(); ++u)
    for (int v = g.out(u).find_first(); v >= 0; v = g.out(u).find_next(v))
      if (!h.has_arc(phi.map[static_cast<std::size_t>(u)], phi.map[static_cast<std::size_t>(v)]))
        return false;
  return true;
}

namespace detail {

struct HomSearch {
  const Digraph& g;
  const Digraph& h;
  Digraph gt, ht;
  std::vector<int> order;       // source vertices, decreasing total degree
  std::vector<int> position;    // inverse of order
  std::vector<int> assignment;  // image per source vertex, -1 if unassigned
  std::uint64_t nodes = 0;
  std::uint64_t budget;

  HomSearch(const Digraph& g_, const Digraph& h_, std::uint64_t budget_)
      : g(g_), h(h_), gt(g_.transpose()), ht(h_.transpose()), budget(budget_) {
    order.resize(static_cast<std::size_t>(g.order()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return g.out_degree(a) + gt.out_degree(a) > g.out_degree(b) + gt.out_degree(b);
    });
    position.assign(static_cast<std::size_t>(g.order()), 0);
    for (int i = 0; i < g.order(); ++i) position[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    assignment.assign(static_cast<std::size_t>(g.order()), -1);
  }

  // Candidate images for source vertex v: a vertex with outgoing (incoming)
  // arcs can only map to one with outgoing (incoming) arcs. Only this
  // boolean form is sound — numeric degree comparisons are not preserved
  // by homomorphisms.
  Bitset initial_domain(int v) const {
    Bitset d(h.order());
    const bool needs_out = g.out(v).any();
    const bool needs_in = gt.out(v).any();
    for (int w = 0; w < h.order(); ++w) {
      if (needs_out && !h.out(w).any()) continue;
      if (needs_in && !ht.out(w).any()) continue;
      d.set(w);
    }
    return d;
  }

  bool extend(std::size_t depth, std::vector<Bitset>& domains) {
    if (depth == order.size()) return true;
    const int v = order[depth];
    const Bitset& dom = domains[static_cast<std::size_t>(v)];
    for (int w = dom.find_first(); w >= 0; w = dom.find_next(w)) {
      if (++nodes > budget) throw BudgetExceededError("homomorphism search budget exhausted");
      assignment[static_cast<std::size_t>(v)] = w;

      // Narrow the domains of unassigned neighbors of v to targets
      // compatible with w; abandon w on any wipe-out.
      std::vector<Bitset> next = domains;
      bool dead = false;
      for (int u = g.out(v).find_first(); u >= 0 && !dead; u = g.out(v).find_next(u)) {
        if (assignment[static_cast<std::size_t>(u)] >= 0) {
          dead = !h.has_arc(w, assignment[static_cast<std::size_t>(u)]);
        } else {
          auto& du = next[static_cast<std::size_t>(u)];
          du &= h.out(w);
          dead = du.none();
        }
      }
      for (int u = gt.out(v).find_first(); u >= 0 && !dead; u = gt.out(v).find_next(u)) {
        if (assignment[static_cast<std::size_t>(u)] >= 0) {
          dead = !h.has_arc(assignment[static_cast<std::size_t>(u)], w);
        } else {
          auto& du = next[static_cast<std::size_t>(u)];
          du &= ht.out(w);
          dead = du.none();
        }
      }
      if (!dead && extend(depth + 1, next)) return true;
      assignment[static_cast<std::size_t>(v)] = -1;
    }
    return false;
  }
};

}  // namespace detail

/// Complete backtracking search with forward checking. Returns some
/// homomorphism g -> h, or nullopt iff none exists. Deterministic: source
/// vertices are processed by decreasing total degree (ties by index) and
/// candidate images in ascending index.
inline std::optional<VertexMap> find_homomorphism(const Digraph& g, const Digraph& h,
                                                  std::uint64_t node_budget = kDefaultSearchBudget) {
  if (g.order() > 0 && h.order() == 0) return std::nullopt;
  detail::HomSearch s(g, h, node_budget);
  std::vector<Bitset> domains;
  domains.reserve(static_cast<std::size_t>(g.order()));
  for (int v = 0; v < g.order(); ++v) {
    domains.push_back(s.initial_domain(v));
    if (domains.back().none()) return std::nullopt;
  }
  if (!s.extend(0, domains)) return std::nullopt;
  return VertexMap{g.order(), h.order(), s.assignment};
}

/// The pre-order test: G precedes H iff the directional complement of G has
/// a homomorphism into the directional complement of H. Returns the witness.
inline std::optional<VertexMap> precedes(const Digraph& g, const Digraph& h,
                                         std::uint64_t node_budget = kDefaultSearchBudget) {
  return find_homomorphism(complement(g), complement(h), node_budget);
}

}  // namespace idxcode
