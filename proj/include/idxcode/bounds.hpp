#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "idxcode/digraph.hpp"
#include "idxcode/errors.hpp"
#include "idxcode/field.hpp"
#include "idxcode/hfamily.hpp"
#include "idxcode/homsearch.hpp"
#include "idxcode/lincode.hpp"
#include "idxcode/rational.hpp"
#include "idxcode/translate.hpp"

namespace idxcode {

struct ColoringResult {
  int chi = 0;
  std::vector<int> colors;
};

namespace detail {

/// Backtracking k-colorability with saturation-first vertex choice and the
/// canonical-color cut (a vertex may open at most one fresh color). Colors
/// fit in a 64-bit mask, which the 40-vertex cap in chromatic_number
/// guarantees.
struct ColorSearch {
  const std::vector<Bitset>& adj;
  int n = 0;
  int k = 0;
  std::uint64_t budget = 0;
  std::uint64_t* used = nullptr;
  std::vector<int> colors;
  std::vector<std::uint64_t> forbidden;

  bool run() {
    colors.assign(static_cast<std::size_t>(n), -1);
    forbidden.assign(static_cast<std::size_t>(n), 0);
    return extend(0, 0);
  }

  bool extend(int colored, int palette) {
    if (colored == n) return true;
    int pick = -1, best_sat = -1, best_deg = -1;
    for (int v = 0; v < n; ++v) {
      if (colors[static_cast<std::size_t>(v)] >= 0) continue;
      const int sat = std::popcount(forbidden[static_cast<std::size_t>(v)]);
      const int deg = adj[static_cast<std::size_t>(v)].count();
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        pick = v;
        best_sat = sat;
        best_deg = deg;
      }
    }
    const int cap = std::min(k - 1, palette);
    for (int c = 0; c <= cap; ++c) {
      if (++*used > budget) throw BudgetExceededError("coloring search budget exhausted");
      if (forbidden[static_cast<std::size_t>(pick)] >> c & 1u) continue;
      colors[static_cast<std::size_t>(pick)] = c;
      std::vector<std::pair<int, std::uint64_t>> touched;
      for (int w = adj[static_cast<std::size_t>(pick)].find_first(); w >= 0;
           w = adj[static_cast<std::size_t>(pick)].find_next(w)) {
        if (colors[static_cast<std::size_t>(w)] >= 0) continue;
        if (!(forbidden[static_cast<std::size_t>(w)] >> c & 1u)) {
          touched.emplace_back(w, forbidden[static_cast<std::size_t>(w)]);
          forbidden[static_cast<std::size_t>(w)] |= std::uint64_t{1} << c;
        }
      }
      if (extend(colored + 1, std::max(palette, c + 1))) return true;
      for (const auto& [w, old] : touched) forbidden[static_cast<std::size_t>(w)] = old;
      colors[static_cast<std::size_t>(pick)] = -1;
    }
    return false;
  }
};

/// Least k (at least 1 on nonempty instances) with q^k >= chi.
inline int min_admissible_k(long long chi, int q, int order) {
  int k = order >= 1 ? 1 : 0;
  const auto admits = [&](int kk) {
    long long p = 1;
    for (int i = 0; i < kk; ++i) {
      if (p >= chi) return true;
      p *= q;
    }
    return p >= chi;
  };
  while (!admits(k)) ++k;
  return k;
}

}  // namespace detail

/// Exact chromatic number with a witness coloring. Lower bound from a greedy
/// clique, upper bound and fallback witness from saturation-greedy coloring,
/// then exact k-colorability tests close the gap from below.
inline ColoringResult chromatic_number(const UndirectedGraph& u,
                                       std::uint64_t budget = kDefaultSearchBudget) {
  const int n = u.order();
  if (n == 0) return {};
  if (n > 40) throw BudgetExceededError("exact coloring limited to 40 vertices");

  std::vector<Bitset> adj;
  adj.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) adj.push_back(u.neighbors(v));

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return u.degree(a) > u.degree(b); });
  std::vector<int> clique;
  for (int v : order) {
    const bool joins = std::all_of(clique.begin(), clique.end(),
                                   [&](int w) { return u.has_edge(v, w); });
    if (joins) clique.push_back(v);
  }
  const int lb = std::max<int>(1, static_cast<int>(clique.size()));

  std::vector<int> greedy(static_cast<std::size_t>(n), -1);
  std::vector<std::uint64_t> forb(static_cast<std::size_t>(n), 0);
  int ub = 0;
  for (int step = 0; step < n; ++step) {
    int pick = -1, best_sat = -1, best_deg = -1;
    for (int v = 0; v < n; ++v) {
      if (greedy[static_cast<std::size_t>(v)] >= 0) continue;
      const int sat = std::popcount(forb[static_cast<std::size_t>(v)]);
      const int deg = u.degree(v);
      if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
        pick = v;
        best_sat = sat;
        best_deg = deg;
      }
    }
    const int c = std::countr_one(forb[static_cast<std::size_t>(pick)]);
    greedy[static_cast<std::size_t>(pick)] = c;
    ub = std::max(ub, c + 1);
    for (int w = adj[static_cast<std::size_t>(pick)].find_first(); w >= 0;
         w = adj[static_cast<std::size_t>(pick)].find_next(w))
      if (greedy[static_cast<std::size_t>(w)] < 0)
        forb[static_cast<std::size_t>(w)] |= std::uint64_t{1} << c;
  }
  if (lb >= ub) return {ub, greedy};

  std::uint64_t used = 0;
  for (int k = lb; k < ub; ++k) {
    detail::ColorSearch cs{adj, n, k, budget, &used, {}, {}};
    if (cs.run()) return {k, cs.colors};
  }
  return {ub, greedy};
}

/// Clique-cover upper bound: a proper chi-coloring of the underlying graph of
/// the complement partitions the receivers into mutually-informed groups, and
/// pushing the identity code through the induced homomorphism yields a valid
/// length-chi code in which every group shares one broadcast symbol.
struct CliqueCoverResult {
  int chi = 0;
  std::vector<int> coloring;
  VertexMap hom;
  LinearCode code;
};

inline CliqueCoverResult clique_cover_bound(const Digraph& g, int q,
                                            std::uint64_t budget = kDefaultSearchBudget) {
  const int m = g.order();
  if (m == 0) throw BadParametersError("empty graph has no index coding instance");
  const ColoringResult col = chromatic_number(underlying(complement(g)), budget);
  const VertexMap hom{m, col.chi, col.colors};
  // The target whose complement is complete is the arcless digraph: there
  // every receiver must be served by its own dedicated symbol.
  Digraph arcless(col.chi);
  LinearCode ident{FieldMatrix::identity(make_field(q), col.chi)};
  ident.decoders = is_valid_linear_code(arcless, ident.encoder());
  LinearCode code = translate_linear(g, arcless, hom, ident);
  return {col.chi, col.colors, hom, std::move(code)};
}

namespace detail {

/// All maximal independent sets of u as bitmasks (Bron-Kerbosch with
/// pivoting, run on the complement adjacency). Requires order <= 32.
inline std::vector<std::uint32_t> maximal_independent_sets(const UndirectedGraph& u) {
  const int n = u.order();
  std::vector<std::uint32_t> non(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && !u.has_edge(i, j)) non[static_cast<std::size_t>(i)] |= std::uint32_t{1} << j;
  std::vector<std::uint32_t> out;
  auto bk = [&](auto&& self, std::uint32_t r, std::uint32_t p, std::uint32_t x) -> void {
    if (p == 0 && x == 0) {
      out.push_back(r);
      return;
    }
    const std::uint32_t px = p | x;
    int pivot = -1, best = -1;
    for (std::uint32_t w = px; w != 0; w &= w - 1) {
      const int v = std::countr_zero(w);
      const int c = std::popcount(p & non[static_cast<std::size_t>(v)]);
      if (c > best) {
        best = c;
        pivot = v;
      }
    }
    for (std::uint32_t cand = p & ~non[static_cast<std::size_t>(pivot)]; cand != 0;) {
      const int v = std::countr_zero(cand);
      const std::uint32_t bit = std::uint32_t{1} << v;
      cand &= cand - 1;
      self(self, r | bit, p & non[static_cast<std::size_t>(v)], x & non[static_cast<std::size_t>(v)]);
      p &= ~bit;
      x |= bit;
    }
  };
  if (n > 0) bk(bk, 0, n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1, 0);
  return out;
}

/// Exact-rational primal simplex for: maximize sum(y) subject to y(S) <= 1
/// for every set S and y >= 0. The all-slack basis is feasible and Bland's
/// rule guarantees termination.
inline Rational independent_set_lp_value(const std::vector<std::uint32_t>& sets, int n) {
  const int rows = static_cast<int>(sets.size());
  const int cols = n + rows + 1;
  std::vector<std::vector<Rational>> t(
      static_cast<std::size_t>(rows) + 1,
      std::vector<Rational>(static_cast<std::size_t>(cols)));
  for (int i = 0; i < rows; ++i) {
    auto& row = t[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j)
      if (sets[static_cast<std::size_t>(i)] >> j & 1u) row[static_cast<std::size_t>(j)] = 1;
    row[static_cast<std::size_t>(n + i)] = 1;
    row[static_cast<std::size_t>(cols - 1)] = 1;
  }
  for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(rows)][static_cast<std::size_t>(j)] = -1;
  std::vector<int> basis(static_cast<std::size_t>(rows));
  std::iota(basis.begin(), basis.end(), n);
  for (long guard = 0;; ++guard) {
    if (guard > 200000) throw std::logic_error("simplex failed to terminate");
    int enter = -1;
    for (int j = 0; j < cols - 1; ++j)
      if (t[static_cast<std::size_t>(rows)][static_cast<std::size_t>(j)] < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int i = 0; i < rows; ++i) {
      const Rational& cell = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
      if (cell <= 0) continue;
      const Rational ratio = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(cols - 1)] / cell;
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw std::logic_error("bounded program reported unbounded");
    auto& prow = t[static_cast<std::size_t>(leave)];
    const Rational piv = prow[static_cast<std::size_t>(enter)];
    for (auto& x : prow) x /= piv;
    for (int i = 0; i <= rows; ++i) {
      if (i == leave) continue;
      auto& row = t[static_cast<std::size_t>(i)];
      const Rational factor = row[static_cast<std::size_t>(enter)];
      if (factor == 0) continue;
      for (int j = 0; j < cols; ++j)
        row[static_cast<std::size_t>(j)] -= factor * prow[static_cast<std::size_t>(j)];
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  return t[static_cast<std::size_t>(rows)][static_cast<std::size_t>(cols - 1)];
}

}  // namespace detail

/// Exact fractional chromatic number via the linear program over independent
/// sets: the maximum of sum(y) subject to y(S) <= 1 for every maximal
/// independent set S equals the minimum fractional cover by independent
/// sets. Exact rational arithmetic throughout; capped at 20 vertices.
inline Rational fractional_chromatic(const UndirectedGraph& u,
                                     std::uint64_t budget = kDefaultSearchBudget) {
  const int n = u.order();
  if (n == 0) return Rational(0);
  if (n > 20) throw BudgetExceededError("fractional chromatic limited to 20 vertices");
  const auto sets = detail::maximal_independent_sets(u);
  if (sets.size() > budget) throw BudgetExceededError("too many independent sets");
  return detail::independent_set_lp_value(sets, n);
}

/// Lower bound on achievable code length: with q-ary symbols, k of them can
/// tell apart at most q^k receiver groups, so q^k must reach the chromatic
/// number of the underlying complement.
struct LogLowerBound {
  long long chi = 1;
  int q = 2;
  int min_k = 0;

  bool admits(int k) const {
    if (k < 0) return chi <= 1;
    long long p = 1;
    for (int i = 0; i < k; ++i) {
      if (p >= chi) return true;
      p *= q;
    }
    return p >= chi;
  }
};

inline LogLowerBound chromatic_lower_bound(const Digraph& g, int q,
                                           std::uint64_t budget = kDefaultSearchBudget) {
  make_field(q);
  const ColoringResult col = chromatic_number(underlying(complement(g)), budget);
  LogLowerBound b{col.chi, q, 0};
  b.min_k = detail::min_admissible_k(col.chi, q, g.order());
  return b;
}

/// A graph parameter registered as monotone under the code-length preorder.
/// make_increasing_function exhaustively sweeps every ordered pair of
/// digraphs on up to 3 vertices and refuses to mark the function verified if
/// any comparable pair decreases; unverified functions cannot be used for
/// bounds.
struct IncreasingFunction {
  std::string name;
  std::function<long long(const Digraph&)> fn;
  bool verified = false;
};

inline IncreasingFunction make_increasing_function(std::string name,
                                                   std::function<long long(const Digraph&)> fn,
                                                   std::uint64_t budget = kDefaultSearchBudget) {
  std::vector<Digraph> all;
  std::vector<long long> value;
  for (int m = 1; m <= 3; ++m) {
    DigraphEnumerator en(m);
    while (auto g = en.next()) {
      value.push_back(fn(*g));
      all.push_back(std::move(*g));
    }
  }
  bool ok = true;
  for (std::size_t i = 0; i < all.size() && ok; ++i)
    for (std::size_t j = 0; j < all.size() && ok; ++j)
      if (precedes(all[i], all[j], budget) && value[i] > value[j]) ok = false;
  return {std::move(name), std::move(fn), ok};
}

/// Largest k+1 such that h(g) exceeds r_of_k[k], where r_of_k[k] caps h on
/// every instance solvable with k symbols; 0 when no entry separates.
inline int increasing_function_lower_bound(const Digraph& g, const IncreasingFunction& h,
                                           const std::vector<long long>& r_of_k) {
  if (!h.verified)
    throw UnverifiedFunctionError("function '" + h.name + "' has not passed the monotonicity sweep");
  const long long hv = h.fn(g);
  int best = 0;
  for (std::size_t k = 0; k < r_of_k.size(); ++k)
    if (hv > r_of_k[k]) best = static_cast<int>(k) + 1;
  return best;
}

/// Upper bound on the exact index over GF(q2) obtained by solving over
/// GF(q1) first: a length-k1 solution embeds g into the k1-th universal
/// graph for q1, so any solution for that graph over GF(q2) transfers back.
/// The inner value is the exact index of the universal graph when the
/// remaining budget covers the search, else its clique-cover bound.
struct FieldChangeResult {
  int bound = 0;
  int k1 = 0;
  bool exact_inner = false;
};

inline FieldChangeResult field_change_bound(const Digraph& g, int q1, int q2,
                                            std::uint64_t budget = kDefaultSearchBudget) {
  make_field(q2);
  const int m = g.order();
  if (m == 0) throw BadParametersError("empty graph has no index coding instance");
  const auto r1 = lind(g, q1, m, budget);
  if (!r1) throw std::logic_error("full-length search cannot fail");
  const int k1 = r1->k;
  if (q1 == q2) return {k1, k1, true};
  const HkGraph hk = build_hk(q1, k1);
  const ColoringResult chi = chromatic_number(underlying(complement(hk.graph)), budget);
  const int upper = chi.chi;
  const int lower = detail::min_admissible_k(chi.chi, q2, hk.graph.order());
  if (lower >= upper) return {upper, k1, true};
  std::uint64_t used = 0;
  try {
    for (int k = lower; k < upper; ++k) {
      const std::uint64_t remaining = budget - std::min(budget, used);
      if (rref_count_capped(q2, k, hk.graph.order(), remaining) > remaining)
        return {upper, k1, false};
      if (lind_exact_length(hk.graph, q2, k, budget, used)) return {k, k1, true};
    }
  } catch (const BudgetExceededError&) {
    return {upper, k1, false};
  }
  // Every shorter length is ruled out and the cover construction achieves
  // `upper`, so the inner value is exact.
  return {upper, k1, true};
}

/// One field's worth of bounds inside a BoundsReport.
struct QBoundEntry {
  int q = 2;
  long long chi_complement = 0;
  int lower_min_k = 0;
  std::optional<int> exact;
  std::optional<std::string> exact_skipped;
  std::vector<int> coloring;
  std::optional<LinearCode> cover_code;
  std::vector<std::pair<int, FieldChangeResult>> field_change;
};

struct BoundsReport {
  std::string graph_id;
  int order = 0;
  std::optional<Rational> chi_f_complement;  // context value, not part of the sandwich
  std::vector<QBoundEntry> entries;
};

/// Runs every applicable bound for each requested field, optionally the
/// exact search, and asserts the sandwich (each lower bound at most each
/// upper bound, the exact value in between) before returning. Budget
/// exhaustion inside one bound is recorded on its entry instead of failing
/// the whole report.
inline BoundsReport bounds_report(const Digraph& g, const std::vector<int>& qs, bool exact,
                                  std::uint64_t budget = kDefaultSearchBudget) {
  if (g.order() == 0) throw BadParametersError("empty graph has no index coding instance");
  if (qs.empty()) throw BadParametersError("at least one field order is required");
  BoundsReport rep;
  rep.order = g.order();
  try {
    rep.chi_f_complement = fractional_chromatic(underlying(complement(g)), budget);
  } catch (const BudgetExceededError&) {
  }
  for (int q : qs) {
    QBoundEntry e;
    e.q = q;
    const CliqueCoverResult cover = clique_cover_bound(g, q, budget);
    e.chi_complement = cover.chi;
    e.coloring = cover.coloring;
    e.cover_code = cover.code;
    e.lower_min_k = detail::min_admissible_k(cover.chi, q, g.order());
    if (exact) {
      try {
        const auto r = lind(g, q, g.order(), budget);
        if (!r) throw std::logic_error("full-length search cannot fail");
        e.exact = r->k;
      } catch (const BudgetExceededError&) {
        e.exact_skipped = "budget";
      }
    }
    for (int q1 : qs) {
      if (q1 == q) continue;
      try {
        e.field_change.emplace_back(q1, field_change_bound(g, q1, q, budget));
      } catch (const BudgetExceededError&) {
      }
    }
    if (e.lower_min_k > e.chi_complement) throw Error("bound sandwich violated");
    for (const auto& [q1, fc] : e.field_change)
      if (e.lower_min_k > fc.bound) throw Error("bound sandwich violated");
    if (e.exact) {
      if (*e.exact < e.lower_min_k || *e.exact > e.chi_complement)
        throw Error("bound sandwich violated");
      for (const auto& [q1, fc] : e.field_change)
        if (*e.exact > fc.bound) throw Error("bound sandwich violated");
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace idxcode
