#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "idxcode/hfamily.hpp"
#include "idxcode/translate.hpp"

using namespace idxcode;

namespace {

Digraph bidirectional_complete(int n) {
  Digraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) g.add_arc(u, v);
  return g;
}

Digraph random_digraph(int m, std::mt19937& rng) {
  Digraph g(m);
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v)
      if (u != v && rng() % 2) g.add_arc(u, v);
  return g;
}

VertexMap identity_map(int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i;
  return VertexMap{n, n, m};
}

}  // namespace

TEST_CASE("coordinate-wise one-to-one combiner") {
  const auto f = cw_one_to_one(3, 3);
  // Fixing any two arguments, the map in the remaining one is a bijection;
  // exhaustive over all 27 inputs and each coordinate.
  for (int fixed1 = 0; fixed1 < 3; ++fixed1)
    for (int fixed2 = 0; fixed2 < 3; ++fixed2)
      for (int coord = 0; coord < 3; ++coord) {
        std::vector<bool> hit(3, false);
        for (int v = 0; v < 3; ++v) {
          std::vector<int> a(3);
          a[static_cast<std::size_t>(coord)] = v;
          a[static_cast<std::size_t>((coord + 1) % 3)] = fixed1;
          a[static_cast<std::size_t>((coord + 2) % 3)] = fixed2;
          hit[static_cast<std::size_t>(f(a))] = true;
        }
        CHECK(hit == std::vector<bool>(3, true));
      }

  const auto xorf = cw_one_to_one(2, 2);
  CHECK(xorf({0, 1}) == 1);
  CHECK(xorf({1, 1}) == 0);

  const auto ident = cw_one_to_one(5, 1);
  for (int v = 0; v < 5; ++v) CHECK(ident({v}) == v);

  CHECK_THROWS_AS(cw_one_to_one(0, 1), BadParametersError);
  CHECK_THROWS_AS(xorf({1}), SizeMismatchError);
  CHECK_THROWS_AS(xorf({1, 2}), RangeError);
}

TEST_CASE("identity translation returns the same encoder") {
  const Digraph g = bidirectional_complete(3);
  LinearCode code(FieldMatrix::from_rows(make_field(2), {{1, 1, 1}}));
  const LinearCode out = translate_linear(g, g, identity_map(3), code);
  CHECK(out.encoder() == code.encoder());
  REQUIRE(out.decoders.has_value());
}

TEST_CASE("collapsing a clique onto a point") {
  const Digraph k3 = bidirectional_complete(3);
  const Digraph point(1);
  const auto phi = precedes(k3, point);
  REQUIRE(phi.has_value());
  LinearCode unit(FieldMatrix::from_rows(make_field(2), {{1}}));
  const LinearCode out = translate_linear(k3, point, *phi, unit);
  CHECK(out.length() == 1);
  for (int c = 0; c < 3; ++c) CHECK(out.encoder().at(0, c) == 1);
  CHECK(is_valid_linear_code(k3, out.encoder()).has_value());
}

TEST_CASE("translation rejects bad witnesses and bad codes") {
  const Digraph g(2);  // empty: complement is bidirectional K2
  const Digraph point(1);
  LinearCode unit(FieldMatrix::from_rows(make_field(2), {{1}}));
  // Constant map is no homomorphism of the complements here.
  CHECK_THROWS_AS(translate_linear(g, point, VertexMap{2, 1, {0, 0}}, unit),
                  InvalidWitnessError);

  const Digraph k2 = bidirectional_complete(2);
  LinearCode bad(FieldMatrix::from_rows(make_field(2), {{1, 0}}));  // invalid for empty-2
  const auto phi = precedes(k2, Digraph(2));
  REQUIRE(phi.has_value());
  CHECK_THROWS_AS(translate_linear(k2, Digraph(2), *phi, bad), InvalidCodeError);
}

TEST_CASE("universal codes translate to every preceding graph") {
  // The end-to-end round trip: any graph preceding H^2_k inherits its
  // explicit length-k code.
  const HkGraph h2 = build_hk(2, 2);
  const LinearCode code2 = explicit_code_hk(2, 2);
  std::mt19937 rng(160316);
  int translated = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Digraph g = random_digraph(3 + static_cast<int>(rng() % 2), rng);
    const auto phi = precedes(g, h2.graph);
    if (!phi) continue;
    const LinearCode out = translate_linear(g, h2.graph, *phi, code2);
    CHECK(out.length() == 2);
    CHECK(is_valid_linear_code(g, out.encoder()).has_value());
    ++translated;
  }
  CHECK(translated > 5);
}

TEST_CASE("translation composes") {
  std::mt19937 rng(271828);
  int composed = 0;
  for (int trial = 0; trial < 200 && composed < 12; ++trial) {
    const Digraph g = random_digraph(3, rng);
    const Digraph h = random_digraph(3, rng);
    const Digraph k = random_digraph(3, rng);
    const auto gh = precedes(g, h);
    const auto hk = precedes(h, k);
    if (!gh || !hk) continue;
    const auto rk = lind(k, 2, 3);
    REQUIRE(rk.has_value());

    const LinearCode via_h = translate_linear(g, h, *gh, translate_linear(h, k, *hk, rk->code));
    std::vector<int> comp(3);
    for (int v = 0; v < 3; ++v)
      comp[static_cast<std::size_t>(v)] = hk->map[static_cast<std::size_t>(gh->map[static_cast<std::size_t>(v)])];
    const LinearCode direct = translate_linear(g, k, VertexMap{3, 3, comp}, rk->code);
    CHECK(via_h.encoder() == direct.encoder());
    ++composed;
  }
  CHECK(composed > 0);
}

TEST_CASE("group tabulation of a linear code is valid") {
  const Digraph k2 = bidirectional_complete(2);
  LinearCode code(FieldMatrix::from_rows(make_field(2), {{1, 1}}));
  const GroupCode gc = group_code_from_linear(k2, code);
  CHECK(gc.alphabet == 2);
  CHECK(gc.length == 1);
  CHECK(gc.encoder.size() == 4);
  CHECK(is_valid_group_code(k2, gc));

  LinearCode invalid(FieldMatrix::from_rows(make_field(2), {{1, 0}}));
  CHECK_THROWS_AS(group_code_from_linear(Digraph(2), invalid), InvalidCodeError);
  LinearCode gf4(FieldMatrix::from_rows(make_field(4), {{1, 1}}));
  CHECK_THROWS_AS(group_code_from_linear(k2, gf4), UnsupportedFieldError);
}

TEST_CASE("group translation collapses a clique over a ternary alphabet") {
  const Digraph k2 = bidirectional_complete(2);
  const Digraph point(1);
  const auto phi = precedes(k2, point);
  REQUIRE(phi.has_value());

  // The identity code on one message over Z3.
  GroupCode unit;
  unit.alphabet = 3;
  unit.n = 1;
  unit.length = 1;
  unit.encoder = {{0}, {1}, {2}};
  unit.decoders = {{0, 1, 2}};  // no side info: table over y alone
  REQUIRE(is_valid_group_code(point, unit));

  const GroupCode out = translate_group(k2, point, *phi, unit);
  CHECK(out.alphabet == 3);
  CHECK(out.length == 1);
  CHECK(is_valid_group_code(k2, out));
  // The broadcast is the mod-3 sum of the two messages.
  for (int x0 = 0; x0 < 3; ++x0)
    for (int x1 = 0; x1 < 3; ++x1)
      CHECK(out.encoder[static_cast<std::size_t>(x0 + 3 * x1)] == std::vector<int>{(x0 + x1) % 3});
}

TEST_CASE("group translation with an unused target vertex") {
  // phi sends all of K3 onto vertex 0 of the arcless 2-vertex graph; the
  // fiber of vertex 1 is empty and its source value is pinned to zero.
  const Digraph k3 = bidirectional_complete(3);
  const Digraph h(2);
  const VertexMap phi{3, 2, {0, 0, 0}};
  REQUIRE(verify_homomorphism(complement(k3), complement(h), phi));

  const Field f2 = make_field(2);
  const GroupCode code_h = group_code_from_linear(h, LinearCode(FieldMatrix::identity(f2, 2)));
  REQUIRE(is_valid_group_code(h, code_h));

  const GroupCode out = translate_group(k3, h, phi, code_h);
  CHECK(is_valid_group_code(k3, out));
  CHECK(out.length == 2);
  // First symbol carries the fiber sum, second the constant zero source.
  for (std::size_t xi = 0; xi < 8; ++xi) {
    const int sum = static_cast<int>((xi & 1) ^ ((xi >> 1) & 1) ^ ((xi >> 2) & 1));
    CHECK(out.encoder[xi] == std::vector<int>{sum, 0});
  }
}

TEST_CASE("binary group translation matches the linear path") {
  std::mt19937 rng(515253);
  int matched = 0;
  for (int trial = 0; trial < 120 && matched < 15; ++trial) {
    const Digraph g = random_digraph(3, rng);
    const Digraph h = random_digraph(3, rng);
    const auto phi = precedes(g, h);
    if (!phi) continue;
    const auto rh = lind(h, 2, 3);
    REQUIRE(rh.has_value());

    const LinearCode lin = translate_linear(g, h, *phi, rh->code);
    const GroupCode grp = translate_group(g, h, *phi, group_code_from_linear(h, rh->code));
    CHECK(is_valid_group_code(g, grp));
    CHECK(group_code_from_linear(g, lin).encoder == grp.encoder);
    ++matched;
  }
  CHECK(matched > 0);
}
