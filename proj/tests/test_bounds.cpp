#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "idxcode/bounds.hpp"
#include "idxcode/digraph.hpp"
#include "idxcode/hfamily.hpp"
#include "idxcode/lincode.hpp"
#include "idxcode/rational.hpp"

using namespace idxcode;

namespace {

UndirectedGraph cycle(int n) {
  UndirectedGraph u(n);
  for (int i = 0; i < n; ++i) u.add_edge(i, (i + 1) % n);
  return u;
}

UndirectedGraph complete_undirected(int n) {
  UndirectedGraph u(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) u.add_edge(i, j);
  return u;
}

Digraph bidirectional_cycle(int n) {
  Digraph g(n);
  for (int i = 0; i < n; ++i) {
    g.add_arc(i, (i + 1) % n);
    g.add_arc((i + 1) % n, i);
  }
  return g;
}

bool coloring_is_proper(const UndirectedGraph& u, const std::vector<int>& col, int chi) {
  if (static_cast<int>(col.size()) != u.order()) return false;
  for (int v = 0; v < u.order(); ++v)
    if (col[static_cast<std::size_t>(v)] < 0 || col[static_cast<std::size_t>(v)] >= chi) return false;
  for (int a = 0; a < u.order(); ++a)
    for (int b = a + 1; b < u.order(); ++b)
      if (u.has_edge(a, b) && col[static_cast<std::size_t>(a)] == col[static_cast<std::size_t>(b)])
        return false;
  return true;
}

// Minimum k admitting a proper coloring, found by trying every assignment.
int chromatic_by_exhaustion(const UndirectedGraph& u) {
  const int n = u.order();
  if (n == 0) return 0;
  for (int k = 1; k <= n; ++k) {
    std::vector<int> col(static_cast<std::size_t>(n), 0);
    while (true) {
      if (coloring_is_proper(u, col, k)) return k;
      int i = 0;
      while (i < n && ++col[static_cast<std::size_t>(i)] == k) {
        col[static_cast<std::size_t>(i)] = 0;
        ++i;
      }
      if (i == n) break;
    }
  }
  return n;
}

// Largest independent set size, by subset enumeration.
int independence_by_exhaustion(const UndirectedGraph& u) {
  const int n = u.order();
  int best = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = a + 1; b < n && ok; ++b)
        if ((mask >> a & 1u) && (mask >> b & 1u) && u.has_edge(a, b)) ok = false;
    if (ok) best = std::max(best, std::popcount(mask));
  }
  return best;
}

UndirectedGraph random_graph(std::mt19937& rng, int n, double p) {
  UndirectedGraph u(n);
  std::bernoulli_distribution coin(p);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng)) u.add_edge(a, b);
  return u;
}

}  // namespace

TEST_CASE("chromatic number on pinned graphs") {
  CHECK(chromatic_number(UndirectedGraph(0)).chi == 0);
  CHECK(chromatic_number(UndirectedGraph(1)).chi == 1);
  CHECK(chromatic_number(UndirectedGraph(6)).chi == 1);
  for (int n = 1; n <= 5; ++n) CHECK(chromatic_number(complete_undirected(n)).chi == n);
  CHECK(chromatic_number(cycle(5)).chi == 3);
  CHECK(chromatic_number(cycle(6)).chi == 2);
  CHECK(chromatic_number(underlying(kneser_graph(5, 2))).chi == 3);
}

TEST_CASE("chromatic number matches exhaustive search and witnesses are proper") {
  std::mt19937 rng(611953);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const double p = 0.15 + 0.7 * static_cast<double>(rng() % 100) / 100.0;
    const UndirectedGraph u = random_graph(rng, n, p);
    const ColoringResult got = chromatic_number(u);
    CHECK(got.chi == chromatic_by_exhaustion(u));
    CHECK(coloring_is_proper(u, got.colors, got.chi));
  }
}

TEST_CASE("chromatic number enforces its limits") {
  CHECK_THROWS_AS(chromatic_number(UndirectedGraph(41)), BudgetExceededError);
  CHECK_THROWS_AS(chromatic_number(cycle(5), 0), BudgetExceededError);
}

TEST_CASE("clique cover bound produces certified codes") {
  const Digraph c5 = bidirectional_cycle(5);
  const CliqueCoverResult cover = clique_cover_bound(c5, 2);
  CHECK(cover.chi == 3);
  CHECK(cover.code.length() == 3);
  CHECK(coloring_is_proper(underlying(complement(c5)), cover.coloring, cover.chi));
  CHECK(verify_homomorphism(complement(c5), complete_digraph(cover.chi), cover.hom));
  CHECK(is_valid_linear_code(c5, cover.code.encoder()).has_value());

  Digraph k4(4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (a != b) k4.add_arc(a, b);
  CHECK(clique_cover_bound(k4, 2).chi == 1);
  CHECK(clique_cover_bound(k4, 3).code.length() == 1);

  const Digraph arcless(4);
  const CliqueCoverResult full = clique_cover_bound(arcless, 2);
  CHECK(full.chi == 4);
  CHECK(is_valid_linear_code(arcless, full.code.encoder()).has_value());

  CHECK_THROWS_AS(clique_cover_bound(Digraph(0), 2), BadParametersError);
}

TEST_CASE("fractional chromatic number on pinned graphs") {
  CHECK(fractional_chromatic(cycle(5)) == Rational(5, 2));
  CHECK(fractional_chromatic(cycle(7)) == Rational(7, 3));
  CHECK(fractional_chromatic(cycle(6)) == Rational(2));
  for (int n = 1; n <= 5; ++n) CHECK(fractional_chromatic(complete_undirected(n)) == Rational(n));
  CHECK(fractional_chromatic(UndirectedGraph(4)) == Rational(1));
  CHECK(fractional_chromatic(UndirectedGraph(1)) == Rational(1));
  CHECK(fractional_chromatic(underlying(kneser_graph(5, 2))) == Rational(5, 2));
  CHECK(rational_string(Rational(5, 2)) == "5/2");
  CHECK(rational_string(Rational(3)) == "3");
  CHECK(rational_ceil(Rational(5, 2)) == 3);
  CHECK(rational_ceil(Rational(3)) == 3);
  CHECK_THROWS_AS(fractional_chromatic(UndirectedGraph(21)), BudgetExceededError);
}

TEST_CASE("fractional chromatic number sits between clique and coloring bounds") {
  std::mt19937 rng(445566);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const UndirectedGraph u = random_graph(rng, n, 0.5);
    const Rational fc = fractional_chromatic(u);
    const int chi = chromatic_number(u).chi;
    const int alpha = independence_by_exhaustion(u);
    CHECK(fc <= Rational(chi));
    // Fractional covers cannot beat the volume bound |V| / alpha.
    CHECK(fc >= Rational(n, alpha));
  }
  // Vertex-transitive cases meet the volume bound exactly.
  CHECK(fractional_chromatic(cycle(9)) == Rational(9, 4));
  CHECK(fractional_chromatic(underlying(kneser_graph(5, 2))) ==
        Rational(10, independence_by_exhaustion(underlying(kneser_graph(5, 2)))));
}

TEST_CASE("chromatic lower bound floors the exact index") {
  const LogLowerBound arcless4 = chromatic_lower_bound(Digraph(4), 2);
  CHECK(arcless4.chi == 4);
  CHECK(arcless4.min_k == 2);
  CHECK(arcless4.admits(2));
  CHECK_FALSE(arcless4.admits(1));

  Digraph k4(4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (a != b) k4.add_arc(a, b);
  CHECK(chromatic_lower_bound(k4, 2).min_k == 1);
  CHECK(chromatic_lower_bound(bidirectional_cycle(5), 2).min_k == 2);

  DigraphEnumerator en(3);
  while (auto g = en.next()) {
    for (int q : {2, 3}) {
      const auto r = lind(*g, q, 3);
      REQUIRE(r.has_value());
      CHECK(chromatic_lower_bound(*g, q).min_k <= r->k);
      CHECK(r->k <= clique_cover_bound(*g, q).chi);
    }
  }
}

TEST_CASE("increasing functions are vetted before use") {
  const IncreasingFunction chi_comp = make_increasing_function(
      "chi-of-complement",
      [](const Digraph& d) { return static_cast<long long>(chromatic_number(underlying(complement(d))).chi); });
  CHECK(chi_comp.verified);

  // Vertex count is not monotone: gluing two mutually-informed receivers
  // maps onto a single vertex.
  const IncreasingFunction order_fn = make_increasing_function(
      "order", [](const Digraph& d) { return static_cast<long long>(d.order()); });
  CHECK_FALSE(order_fn.verified);
  CHECK_THROWS_AS(increasing_function_lower_bound(Digraph(2), order_fn, {1, 2}), UnverifiedFunctionError);

  // Arc count fails the same way.
  const IncreasingFunction arcs_fn = make_increasing_function(
      "arcs", [](const Digraph& d) { return static_cast<long long>(d.arc_count()); });
  CHECK_FALSE(arcs_fn.verified);

  // With caps 2^k the schema reproduces the chromatic lower bound.
  const std::vector<long long> caps = {1, 2, 4, 8};
  DigraphEnumerator en(3);
  while (auto g = en.next()) {
    const int via_schema = increasing_function_lower_bound(*g, chi_comp, caps);
    CHECK(std::max(1, via_schema) == chromatic_lower_bound(*g, 2).min_k);
  }
}

TEST_CASE("subspace counts saturate correctly") {
  CHECK(rref_count_capped(2, 1, 3, 1000) == 7);
  CHECK(rref_count_capped(2, 2, 3, 1000) == 7);
  CHECK(rref_count_capped(2, 3, 3, 1000) == 1);
  CHECK(rref_count_capped(2, 2, 4, 1000) == 35);
  CHECK(rref_count_capped(3, 2, 4, 1000) == 130);
  CHECK(rref_count_capped(3, 1, 6, 1000) == 364);
  CHECK(rref_count_capped(3, 2, 6, 100000) == 11011);
  CHECK(rref_count_capped(3, 2, 6, 100) == 101);
  CHECK(rref_count_capped(2, 5, 4, 10) == 0);
  CHECK(rref_count_capped(2, 0, 4, 10) == 1);
}

TEST_CASE("field change bound reduces to the exact index on one field") {
  const auto same = field_change_bound(bidirectional_cycle(5), 2, 2);
  CHECK(same.k1 == 3);
  CHECK(same.bound == 3);
  CHECK(same.exact_inner);
}

TEST_CASE("field change bound transfers binary solutions to ternary") {
  Digraph k3(3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a != b) k3.add_arc(a, b);
  const auto one = field_change_bound(k3, 2, 3);
  CHECK(one.k1 == 1);
  CHECK(one.bound == 1);
  CHECK(one.exact_inner);

  // A single arc forces length 2 over GF(2); the inner instance is then the
  // 6-vertex universal graph, small enough for the exact inner search.
  Digraph path(2);
  path.add_arc(0, 1);
  const auto via_h = field_change_bound(path, 2, 3);
  CHECK(via_h.k1 == 2);
  CHECK(via_h.exact_inner);
  const auto inner = lind(build_hk(2, 2).graph, 3, 6);
  REQUIRE(inner.has_value());
  CHECK(via_h.bound == inner->k);

  DigraphEnumerator en(3);
  while (auto g = en.next()) {
    const auto fc = field_change_bound(*g, 2, 3);
    const auto exact3 = lind(*g, 3, 3);
    REQUIRE(exact3.has_value());
    CHECK(fc.bound >= exact3->k);
    const auto exact2 = lind(*g, 2, 3);
    REQUIRE(exact2.has_value());
    CHECK(fc.k1 == exact2->k);
  }
}

TEST_CASE("bounds report assembles a consistent sandwich") {
  const Digraph c5 = bidirectional_cycle(5);
  const BoundsReport rep = bounds_report(c5, {2, 3}, true);
  CHECK(rep.order == 5);
  REQUIRE(rep.chi_f_complement.has_value());
  CHECK(rational_string(*rep.chi_f_complement) == "5/2");
  REQUIRE(rep.entries.size() == 2);
  const QBoundEntry& e2 = rep.entries[0];
  CHECK(e2.q == 2);
  CHECK(e2.chi_complement == 3);
  CHECK(e2.lower_min_k == 2);
  REQUIRE(e2.exact.has_value());
  CHECK(*e2.exact == 3);
  REQUIRE(e2.cover_code.has_value());
  CHECK(e2.cover_code->length() == 3);
  // The ternary-to-binary transfer needs the universal graph for the ternary
  // solution; at length 3 that graph is too large to color, so the entry is
  // skipped rather than failing the report.
  CHECK(e2.field_change.empty());
  const QBoundEntry& e3 = rep.entries[1];
  CHECK(e3.q == 3);
  REQUIRE(e3.exact.has_value());
  CHECK(e3.lower_min_k <= *e3.exact);
  CHECK(*e3.exact <= e3.chi_complement);
  REQUIRE(e3.field_change.size() == 1);
  CHECK(e3.field_change[0].first == 2);
  CHECK(e3.field_change[0].second.k1 == 3);
  CHECK(e3.field_change[0].second.bound >= *e3.exact);

  const BoundsReport lazy = bounds_report(c5, {2}, false);
  CHECK_FALSE(lazy.entries[0].exact.has_value());
  CHECK_FALSE(lazy.entries[0].exact_skipped.has_value());

  CHECK_THROWS_AS(bounds_report(Digraph(0), {2}, false), BadParametersError);
  CHECK_THROWS_AS(bounds_report(c5, {}, false), BadParametersError);
}

TEST_CASE("bounds report is deterministic") {
  std::mt19937 rng(727272);
  for (int trial = 0; trial < 6; ++trial) {
    Digraph g(4);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (a != b && rng() % 2 == 0) g.add_arc(a, b);
    const BoundsReport r1 = bounds_report(g, {2, 3}, true);
    const BoundsReport r2 = bounds_report(g, {2, 3}, true);
    REQUIRE(r1.entries.size() == r2.entries.size());
    CHECK(r1.chi_f_complement == r2.chi_f_complement);
    for (std::size_t i = 0; i < r1.entries.size(); ++i) {
      CHECK(r1.entries[i].chi_complement == r2.entries[i].chi_complement);
      CHECK(r1.entries[i].lower_min_k == r2.entries[i].lower_min_k);
      CHECK(r1.entries[i].exact == r2.entries[i].exact);
      CHECK(r1.entries[i].coloring == r2.entries[i].coloring);
      REQUIRE(r1.entries[i].cover_code.has_value());
      REQUIRE(r2.entries[i].cover_code.has_value());
      CHECK(r1.entries[i].cover_code->encoder() == r2.entries[i].cover_code->encoder());
      for (std::size_t j = 0; j < r1.entries[i].field_change.size(); ++j) {
        CHECK(r1.entries[i].field_change[j].first == r2.entries[i].field_change[j].first);
        CHECK(r1.entries[i].field_change[j].second.bound == r2.entries[i].field_change[j].second.bound);
      }
    }
  }
}
