#pragma once

#include <vector>

#include "idxcode/digraph.hpp"
#include "idxcode/errors.hpp"
#include "idxcode/hfamily.hpp"
#include "idxcode/homsearch.hpp"
#include "idxcode/lincode.hpp"

namespace idxcode {

/// Broadcast-symbol supports of an encoder: supports[j] = { i : M[j][i] != 0 }.
inline std::vector<std::vector<int>> symbol_supports(const FieldMatrix& m) {
  std::vector<std::vector<int>> supports(static_cast<std::size_t>(m.rows()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (m.at(r, c) != 0) supports[static_cast<std::size_t>(r)].push_back(c);
  return supports;
}

/// The support-pattern classes of an encoder: message i belongs to the class
/// of J(i) = { j : M[j][i] != 0 }. Returned as one ascending index list per
/// distinct non-empty pattern, keyed by the pattern. Classes are pairwise
/// disjoint by construction and, for a code that is valid, cover every
/// message (a zero column would leave its receiver undecodable).
inline std::vector<std::pair<std::vector<int>, std::vector<int>>> support_classes(
    const FieldMatrix& m) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> classes;
  for (int c = 0; c < m.cols(); ++c) {
    std::vector<int> pattern;
    for (int r = 0; r < m.rows(); ++r)
      if (m.at(r, c) != 0) pattern.push_back(r);
    if (pattern.empty()) continue;
    bool found = false;
    for (auto& [key, members] : classes)
      if (key == pattern) {
        members.push_back(c);
        found = true;
        break;
      }
    if (!found) classes.push_back({std::move(pattern), {c}});
  }
  return classes;
}

/// Builds a vertex map from g into the universal graph H^q_k, k being the
/// code length, out of a valid linear code for g. Receiver i is sent to the
/// vertex (u, v) where v is its (scaled) encoder column and u the (scaled)
/// coefficient vector of its tie-break minimal sufficient family — smallest
/// cardinality first, then lexicographically least. The scaling puts u into
/// projective-representative form while keeping <u, v> = 1. For q = 2 this
/// is precisely the subset-pair construction (gamma(i), J(i)).
///
/// The returned map is a homomorphism from complement(g) into
/// complement(H^q_k); callers certify it with verify_homomorphism.
inline VertexMap extract_homomorphism(const Digraph& g, const LinearCode& code,
                                      bool allow_general_q = false) {
  const Field& f = code.field();
  const int q = f.order();
  if (q != 2 && !allow_general_q)
    throw UnsupportedFieldError("extraction beyond GF(2) must be enabled explicitly");
  const FieldMatrix& m = code.encoder();
  if (!is_valid_linear_code(g, m)) throw InvalidCodeError("code is not valid for this graph");

  const int k = code.length();
  const HkGraph h = build_hk(q, k);

  std::vector<int> map(static_cast<std::size_t>(g.order()), 0);
  for (int i = 0; i < g.order(); ++i) {
    const auto families = minimal_sufficient_families(g, code, i);
    if (families.empty()) throw std::logic_error("valid code lacks a sufficient family");
    const SufficientFamily& gamma = families.front();

    std::vector<Elem> alpha(static_cast<std::size_t>(k), 0);
    for (std::size_t t = 0; t < gamma.symbols.size(); ++t)
      alpha[static_cast<std::size_t>(gamma.symbols[t])] = gamma.combo[t];

    const std::vector<Elem> col = m.column(i);

    // <alpha, col> is the coefficient the combined symbol carries on x_i;
    // decodability forces it nonzero, and rescaling alpha pins it to 1.
    Elem ip = 0;
    for (int r = 0; r < k; ++r) ip = f.add(ip, f.mul(alpha[static_cast<std::size_t>(r)], col[static_cast<std::size_t>(r)]));
    if (ip == 0) throw std::logic_error("sufficient-family combination misses the message");
    const Elem scale = f.inv(ip);
    for (auto& a : alpha) a = f.mul(scale, a);

    // Normalize to the projective representative, compensating on v.
    Elem c = 0;
    for (Elem a : alpha)
      if (a != 0) {
        c = a;
        break;
      }
    std::vector<Elem> u(alpha), v(col);
    const Elem cinv = f.inv(c);
    for (auto& x : u) x = f.mul(cinv, x);
    for (auto& x : v) x = f.mul(c, x);

    const auto idx = h.find_vertex(u, v);
    if (!idx) throw std::logic_error("extracted pair is not a universal-graph vertex");
    map[static_cast<std::size_t>(i)] = *idx;
  }
  return VertexMap{g.order(), h.graph.order(), map};
}

}  // namespace idxcode
