#pragma once

#include <bit>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "idxcode/digraph.hpp"
#include "idxcode/errors.hpp"
#include "idxcode/field.hpp"
#include "idxcode/lincode.hpp"

namespace idxcode {

namespace detail {

inline long long vector_value(const std::vector<Elem>& v, int q) {
  long long val = 0;
  for (std::size_t i = v.size(); i-- > 0;) val = val * q + v[i];
  return val;
}

inline std::string digit_string(const std::vector<Elem>& v) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (Elem e : v) s.push_back(digits[e]);
  return s;
}

inline std::string subset_string(const std::vector<Elem>& v) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
  s += "}";
  return s;
}

}  // namespace detail

/// The universal target graph for length-k codes over GF(q), with its vertex
/// labels. Vertices are pairs (u, v) of vectors in GF(q)^k where u is a
/// projective representative (first nonzero coordinate 1) and <u,v> = 1;
/// the arc (u,v) -> (u',v') is present iff the vertices differ and
/// <u,v'> != 0. Vertex order is u-major then v-minor, both by ascending
/// base-q integer value of the coordinate vector (coordinate 0 least
/// significant). For q = 2 this is exactly the construction on pairs (I,J)
/// of non-empty subsets of [1:k] with |I meet J| odd and arcs where
/// |I meet J'| is odd, under the indicator-vector identification.
struct HkGraph {
  int q = 2;
  int k = 1;
  Digraph graph{0};
  std::vector<std::vector<Elem>> u_label;
  std::vector<std::vector<Elem>> v_label;

  std::optional<int> find_vertex(const std::vector<Elem>& u, const std::vector<Elem>& v) const {
    const auto it = index_by_value.find({detail::vector_value(u, q), detail::vector_value(v, q)});
    if (it == index_by_value.end()) return std::nullopt;
    return it->second;
  }

  std::map<std::pair<long long, long long>, int> index_by_value;
};

/// The (2^k - 1) x (2^k - 1) GF(2) matrix with rows and columns indexed by
/// non-empty subsets of [1:k] in ascending-mask order and entry 1 iff the
/// row and column subsets meet in an odd number of elements.
inline FieldMatrix build_matrix_A(int k) {
  if (k < 1) throw BadParametersError("k must be at least 1");
  if (k > 5) throw TooLargeError("subset matrix supported up to k = 5");
  const Field f2 = make_field(2);
  const int n = (1 << k) - 1;
  FieldMatrix a(f2, n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      a.set(i - 1, j - 1, std::popcount(static_cast<unsigned>(i & j)) & 1);
  return a;
}

/// Builds H^q_k. The vertex count is ((q^k - 1)/(q - 1)) * q^(k-1), capped
/// at 2000 to keep downstream searches tractable.
inline HkGraph build_hk(int q, int k) {
  if (k < 1) throw BadParametersError("k must be at least 1");
  const Field f = make_field(q);

  // ((q^k - 1)/(q - 1)) * q^(k-1) with an early size bail-out.
  long long reps = 0, power = 1;
  for (int i = 0; i < k; ++i) {
    reps += power;
    power *= q;
    if (reps > 1'000'000) throw TooLargeError("universal graph exceeds the size cap");
  }
  long long per_rep = 1;
  for (int i = 0; i + 1 < k; ++i) per_rep *= q;
  const long long total = reps * per_rep;
  if (total > 2000) throw TooLargeError("universal graph exceeds the size cap");

  auto inner = [&](const std::vector<Elem>& a, const std::vector<Elem>& b) {
    Elem s = 0;
    for (int i = 0; i < k; ++i)
      s = f.add(s, f.mul(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]));
    return s;
  };

  // All vectors of GF(q)^k in ascending value order.
  std::vector<std::vector<Elem>> vectors;
  {
    std::vector<Elem> v(static_cast<std::size_t>(k), 0);
    while (true) {
      vectors.push_back(v);
      int i = 0;
      while (i < k && ++v[static_cast<std::size_t>(i)] == q) v[static_cast<std::size_t>(i++)] = 0;
      if (i == k) break;
    }
  }
  auto is_projective_rep = [](const std::vector<Elem>& u) {
    for (Elem e : u) {
      if (e == 0) continue;
      return e == 1;
    }
    return false;  // the zero vector
  };

  HkGraph h;
  h.q = q;
  h.k = k;
  for (const auto& u : vectors) {
    if (!is_projective_rep(u)) continue;
    for (const auto& v : vectors)
      if (inner(u, v) == 1) {
        h.index_by_value[{detail::vector_value(u, q), detail::vector_value(v, q)}] =
            static_cast<int>(h.u_label.size());
        h.u_label.push_back(u);
        h.v_label.push_back(v);
      }
  }
  const int n = static_cast<int>(h.u_label.size());
  if (n != total) throw std::logic_error("universal graph vertex count mismatch");

  h.graph = Digraph(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && inner(h.u_label[static_cast<std::size_t>(i)], h.v_label[static_cast<std::size_t>(j)]) != 0)
        h.graph.add_arc(i, j);

  h.graph.labels.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& u = h.u_label[static_cast<std::size_t>(i)];
    const auto& v = h.v_label[static_cast<std::size_t>(i)];
    h.graph.labels[static_cast<std::size_t>(i)] =
        q == 2 ? "(" + detail::subset_string(u) + "," + detail::subset_string(v) + ")"
               : "(u=" + detail::digit_string(u) + ", v=" + detail::digit_string(v) + ")";
  }
  return h;
}

/// The length-k code showing lind_q(H^q_k) <= k: the encoder column for
/// vertex (u,v) is v, and receiver (u,v) decodes from the combination u . y
/// by subtracting the out-neighbor contributions it holds as side
/// information.
inline LinearCode explicit_code_hk(int q, int k) {
  const HkGraph h = build_hk(q, k);
  const Field f = make_field(q);
  const int n = h.graph.order();
  FieldMatrix m(f, k, n);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < k; ++r) m.set(r, i, h.v_label[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)]);

  LinearCode code(std::move(m));
  std::vector<Decoder> decoders;
  decoders.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Decoder d;
    d.alpha = h.u_label[static_cast<std::size_t>(i)];
    // u . y = x_i + sum over out-neighbors j of <u, v_j> x_j.
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      Elem c = 0;
      for (int r = 0; r < k; ++r)
        c = f.add(c, f.mul(h.u_label[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)],
                           h.v_label[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)]));
      if (c != 0) d.beta[j] = f.neg(c);
    }
    decoders.push_back(std::move(d));
  }
  code.decoders = std::move(decoders);
  return code;
}

/// Complete digraph: every ordered pair of distinct vertices is an arc.
inline Digraph complete_digraph(int r) {
  if (r < 1) throw BadParametersError("complete digraph needs at least one vertex");
  Digraph g(r);
  for (int u = 0; u < r; ++u)
    for (int v = 0; v < r; ++v)
      if (u != v) g.add_arc(u, v);
  return g;
}

/// Kneser graph as a bidirectional digraph: vertices are the r-subsets of
/// [1:n] in ascending-mask order, adjacent iff disjoint.
inline Digraph kneser_graph(int n, int r) {
  if (r < 1 || n < 2 * r) throw BadParametersError("kneser graph needs n >= 2r >= 2");
  if (n > 20) throw TooLargeError("kneser graph supported up to n = 20");
  std::vector<unsigned> subsets;
  for (unsigned mask = 1; mask < (1u << n); ++mask)
    if (std::popcount(mask) == r) subsets.push_back(mask);

  Digraph g(static_cast<int>(subsets.size()));
  for (std::size_t i = 0; i < subsets.size(); ++i)
    for (std::size_t j = 0; j < subsets.size(); ++j)
      if (i != j && (subsets[i] & subsets[j]) == 0) g.add_arc(static_cast<int>(i), static_cast<int>(j));

  g.labels.resize(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::string s = "{";
    bool first = true;
    for (int b = 0; b < n; ++b)
      if ((subsets[i] >> b) & 1u) {
        if (!first) s += ",";
        s += std::to_string(b + 1);
        first = false;
      }
    g.labels[i] = s + "}";
  }
  return g;
}

}  // namespace idxcode
