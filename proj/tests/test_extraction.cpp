#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "idxcode/extraction.hpp"

using namespace idxcode;

namespace {

Digraph bidirectional_complete(int n) {
  Digraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) g.add_arc(u, v);
  return g;
}

Digraph directed_cycle(int n) {
  Digraph g(n);
  for (int i = 0; i < n; ++i) g.add_arc(i, (i + 1) % n);
  return g;
}

}  // namespace

TEST_CASE("support bookkeeping") {
  const Field f2 = make_field(2);
  const FieldMatrix m = FieldMatrix::from_rows(f2, {{1, 1, 0}, {0, 1, 1}});

  const auto supports = symbol_supports(m);
  REQUIRE(supports.size() == 2);
  CHECK(supports[0] == std::vector<int>{0, 1});
  CHECK(supports[1] == std::vector<int>{1, 2});

  const auto classes = support_classes(m);
  REQUIRE(classes.size() == 3);
  // Classes are pairwise disjoint and cover every supported message.
  std::set<int> seen;
  for (const auto& [pattern, members] : classes)
    for (int i : members) CHECK(seen.insert(i).second);
  CHECK(seen == std::set<int>{0, 1, 2});
}

TEST_CASE("support classes skip zero columns") {
  const Field f2 = make_field(2);
  const FieldMatrix m = FieldMatrix::from_rows(f2, {{1, 0, 1}});
  const auto classes = support_classes(m);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].second == std::vector<int>{0, 2});
}

TEST_CASE("extraction on the single-symbol clique code") {
  const Digraph k2 = bidirectional_complete(2);
  LinearCode code(FieldMatrix::from_rows(make_field(2), {{1, 1}}));
  const auto phi = extract_homomorphism(k2, code);
  CHECK(phi.source_size == 2);
  CHECK(phi.target_size == 1);  // the one-vertex universal graph
  CHECK(phi.map == std::vector<int>{0, 0});
  const HkGraph h = build_hk(2, 1);
  CHECK(verify_homomorphism(complement(k2), complement(h.graph), phi));
}

TEST_CASE("extraction from the identity encoder hits the diagonal vertices") {
  const Field f2 = make_field(2);
  for (int m : {2, 3}) {
    const Digraph g(m);  // no side information at all
    LinearCode code(FieldMatrix::identity(f2, m));
    const auto phi = extract_homomorphism(g, code);
    const HkGraph h = build_hk(2, m);
    for (int i = 0; i < m; ++i) {
      std::vector<Elem> e(static_cast<std::size_t>(m), 0);
      e[static_cast<std::size_t>(i)] = 1;
      const auto idx = h.find_vertex(e, e);
      REQUIRE(idx.has_value());
      CHECK(phi.map[static_cast<std::size_t>(i)] == *idx);
    }
    CHECK(verify_homomorphism(complement(g), complement(h.graph), phi));
  }
}

TEST_CASE("extraction on the directed 3-cycle code") {
  const Digraph c3 = directed_cycle(3);
  LinearCode code(FieldMatrix::from_rows(make_field(2), {{1, 1, 0}, {0, 1, 1}}));
  const auto phi = extract_homomorphism(c3, code);
  // gamma(0) = {y_0}, column (1,0)  -> ({1},{1})     = vertex 0
  // gamma(1) = {y_1}, column (1,1)  -> ({2},{1,2})   = vertex 3
  // gamma(2) = {y_0,y_1}, col (0,1) -> ({1,2},{2})   = vertex 5
  CHECK(phi.map == std::vector<int>{0, 3, 5});
  const HkGraph h = build_hk(2, 2);
  CHECK(verify_homomorphism(complement(c3), complement(h.graph), phi));
}

TEST_CASE("extraction is certified across every small binary code") {
  // For every 3-vertex digraph, extract from the optimal code and certify.
  DigraphEnumerator en(3);
  std::vector<HkGraph> hk;
  hk.push_back(build_hk(2, 1));
  hk.push_back(build_hk(2, 2));
  hk.push_back(build_hk(2, 3));
  while (auto g = en.next()) {
    const auto r = lind(*g, 2, 3);
    REQUIRE(r.has_value());
    const auto phi = extract_homomorphism(*g, r->code);
    const HkGraph& h = hk[static_cast<std::size_t>(r->k - 1)];
    CHECK(phi.target_size == h.graph.order());
    CHECK(verify_homomorphism(complement(*g), complement(h.graph), phi));
  }
}

TEST_CASE("extraction beyond the binary field sits behind a gate") {
  const Digraph k2 = bidirectional_complete(2);
  LinearCode code3(FieldMatrix::from_rows(make_field(3), {{1, 1}}));
  CHECK_THROWS_AS(extract_homomorphism(k2, code3), UnsupportedFieldError);

  const auto phi = extract_homomorphism(k2, code3, true);
  CHECK(phi.target_size == 1);
  CHECK(phi.map == std::vector<int>{0, 0});

  // A longer GF(3) witness: extract from an optimal code and certify.
  const Digraph c3 = directed_cycle(3);
  const auto r = lind(c3, 3, 3);
  REQUIRE(r.has_value());
  CHECK(r->k == 2);
  const auto phi3 = extract_homomorphism(c3, r->code, true);
  const HkGraph h = build_hk(3, 2);
  CHECK(verify_homomorphism(complement(c3), complement(h.graph), phi3));

  // Scaled encoders exercise the normalization: rows multiplied by 2 span
  // the same code, and extraction must still land on proper vertices.
  FieldMatrix scaled(make_field(3), r->code.length(), 3);
  for (int rr = 0; rr < r->code.length(); ++rr)
    for (int c = 0; c < 3; ++c)
      scaled.set(rr, c, (2 * r->code.encoder().at(rr, c)) % 3);
  const auto phi_scaled = extract_homomorphism(c3, LinearCode(scaled), true);
  CHECK(verify_homomorphism(complement(c3), complement(h.graph), phi_scaled));
}

TEST_CASE("extraction rejects invalid codes") {
  LinearCode bad(FieldMatrix::from_rows(make_field(2), {{1, 1}}));
  CHECK_THROWS_AS(extract_homomorphism(Digraph(2), bad), InvalidCodeError);
}
