#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "idxcode/digraph.hpp"
#include "idxcode/errors.hpp"
#include "idxcode/homsearch.hpp"
#include "idxcode/lincode.hpp"

namespace idxcode {

/// The canonical coordinate-wise one-to-one combiner: addition modulo
/// x_size over `arity` arguments. Fixing all arguments but one leaves a
/// bijection in the remaining one.
inline std::function<int(const std::vector<int>&)> cw_one_to_one(int x_size, int arity) {
  if (x_size < 1 || arity < 1) throw BadParametersError("alphabet and arity must be positive");
  return [x_size, arity](const std::vector<int>& a) {
    if (static_cast<int>(a.size()) != arity) throw SizeMismatchError("combiner arity mismatch");
    int s = 0;
    for (int x : a) {
      if (x < 0 || x >= x_size) throw RangeError("combiner input outside alphabet");
      s = (s + x) % x_size;
    }
    return s;
  };
}

/// Rebuilds a code for g from a code for h along a witness phi of g
/// preceding h: each message of h is replaced by the sum of the messages in
/// its fiber, which amounts to replicating h's encoder columns across
/// fibers. The result keeps the length of code_h, is valid for g, and
/// carries freshly computed canonical decoders.
inline LinearCode translate_linear(const Digraph& g, const Digraph& h, const VertexMap& phi,
                                   const LinearCode& code_h) {
  if (!verify_homomorphism(complement(g), complement(h), phi))
    throw InvalidWitnessError("map is not a homomorphism between the complements");
  const FieldMatrix& mh = code_h.encoder();
  if (!is_valid_linear_code(h, mh)) throw InvalidCodeError("source code is not valid for h");

  const int l = code_h.length();
  FieldMatrix mg(code_h.field(), l, g.order());
  for (int v = 0; v < g.order(); ++v)
    for (int r = 0; r < l; ++r) mg.set(r, v, mh.at(r, phi.map[static_cast<std::size_t>(v)]));

  auto decoders = is_valid_linear_code(g, mg);
  if (!decoders) throw std::logic_error("translated code failed validation");
  LinearCode out{std::move(mg)};
  out.decoders = std::move(decoders);
  return out;
}

/// Finite-alphabet index code over Z_{alphabet}, stored as explicit tables.
/// Message tuples and broadcast tuples are packed little-endian in base
/// `alphabet` (coordinate 0 in the least significant digit). decoders[i] is
/// indexed by pack(y) * alphabet^deg_i + pack(side), where side runs over
/// the receiver's out-neighbors in ascending vertex order.
struct GroupCode {
  int alphabet = 2;
  int n = 0;
  int length = 0;
  std::vector<std::vector<int>> encoder;
  std::vector<std::vector<int>> decoders;
};

namespace detail {

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline std::uint64_t pack(const std::vector<int>& digits, int base) {
  std::uint64_t v = 0;
  for (std::size_t i = digits.size(); i-- > 0;) v = v * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(digits[i]);
  return v;
}

inline std::vector<int> unpack(std::uint64_t v, int base, int len) {
  std::vector<int> d(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) {
    d[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::uint64_t>(base));
    v /= static_cast<std::uint64_t>(base);
  }
  return d;
}

inline constexpr std::uint64_t kGroupTableCap = 1u << 22;

}  // namespace detail

/// Exhaustive validity check: every receiver's decoder must return its own
/// message on every message tuple.
inline bool is_valid_group_code(const Digraph& g, const GroupCode& code) {
  const int x = code.alphabet;
  if (x < 1 || code.length < 1) throw BadParametersError("bad group-code shape");
  if (code.n != g.order()) throw DimensionMismatchError("message count != vertex count");
  const std::uint64_t total = detail::ipow(static_cast<std::uint64_t>(x), code.n);
  if (total > detail::kGroupTableCap) throw BudgetExceededError("alphabet^n too large to verify");
  if (code.encoder.size() != total) throw SizeMismatchError("encoder table has the wrong size");
  if (static_cast<int>(code.decoders.size()) != code.n)
    throw SizeMismatchError("one decoder table per receiver required");
  for (int i = 0; i < code.n; ++i) {
    const std::uint64_t want = detail::ipow(static_cast<std::uint64_t>(x), code.length + g.out_degree(i));
    if (code.decoders[static_cast<std::size_t>(i)].size() != want)
      throw SizeMismatchError("decoder table has the wrong size");
  }

  for (std::uint64_t xi = 0; xi < total; ++xi) {
    const std::vector<int> msg = detail::unpack(xi, x, code.n);
    const std::vector<int>& y = code.encoder[xi];
    if (static_cast<int>(y.size()) != code.length) throw SizeMismatchError("encoder row length");
    for (int i = 0; i < code.n; ++i) {
      std::vector<int> side;
      for (int j = g.out(i).find_first(); j >= 0; j = g.out(i).find_next(j))
        side.push_back(msg[static_cast<std::size_t>(j)]);
      const std::uint64_t key =
          detail::pack(y, x) * detail::ipow(static_cast<std::uint64_t>(x), static_cast<int>(side.size())) +
          detail::pack(side, x);
      if (code.decoders[static_cast<std::size_t>(i)][key] != msg[static_cast<std::size_t>(i)]) return false;
    }
  }
  return true;
}

/// Tabulates a linear code over a prime field as a group code on Z_p.
inline GroupCode group_code_from_linear(const Digraph& g, const LinearCode& code) {
  const Field& f = code.field();
  if (f.degree() != 1)
    throw UnsupportedFieldError("group tabulation needs a prime field (Z_p alphabet)");
  const int p = f.order();
  auto decs = is_valid_linear_code(g, code.encoder());
  if (!decs) throw InvalidCodeError("code is not valid for this graph");

  GroupCode out;
  out.alphabet = p;
  out.n = g.order();
  out.length = code.length();
  const std::uint64_t total = detail::ipow(static_cast<std::uint64_t>(p), out.n);
  if (total > detail::kGroupTableCap) throw BudgetExceededError("alphabet^n too large to tabulate");

  out.encoder.resize(total);
  for (std::uint64_t xi = 0; xi < total; ++xi) {
    const std::vector<int> msg = detail::unpack(xi, p, out.n);
    std::vector<int> y(static_cast<std::size_t>(out.length), 0);
    for (int r = 0; r < out.length; ++r)
      for (int c = 0; c < out.n; ++c)
        y[static_cast<std::size_t>(r)] =
            (y[static_cast<std::size_t>(r)] + code.encoder().at(r, c) * msg[static_cast<std::size_t>(c)]) % p;
    out.encoder[xi] = std::move(y);
  }

  for (int i = 0; i < out.n; ++i) {
    const int deg = g.out_degree(i);
    const std::vector<int> side_vertices = g.out(i).to_vector();
    const std::uint64_t rows = detail::ipow(static_cast<std::uint64_t>(p), out.length + deg);
    std::vector<int> table(rows, 0);
    const Decoder& d = (*decs)[static_cast<std::size_t>(i)];
    for (std::uint64_t key = 0; key < rows; ++key) {
      const std::uint64_t side_part = key % detail::ipow(static_cast<std::uint64_t>(p), deg);
      const std::uint64_t y_part = key / detail::ipow(static_cast<std::uint64_t>(p), deg);
      const std::vector<int> y = detail::unpack(y_part, p, out.length);
      const std::vector<int> side = detail::unpack(side_part, p, deg);
      int v = 0;
      for (int r = 0; r < out.length; ++r) v = (v + d.alpha[static_cast<std::size_t>(r)] * y[static_cast<std::size_t>(r)]) % p;
      for (std::size_t s = 0; s < side_vertices.size(); ++s) {
        const auto it = d.beta.find(side_vertices[s]);
        if (it != d.beta.end()) v = (v + it->second * side[s]) % p;
      }
      table[key] = v;
    }
    out.decoders.push_back(std::move(table));
  }
  return out;
}

/// The alphabet-generic translation along a witness phi of g preceding h:
/// the encoder feeds h's encoder with fiber sums (empty fibers contribute
/// the fixed value 0), and each receiver lifts h's decoder output for its
/// own fiber and peels off the fiber mates it holds as side information.
/// The result is verified exhaustively before being returned.
inline GroupCode translate_group(const Digraph& g, const Digraph& h, const VertexMap& phi,
                                 const GroupCode& code_h) {
  if (!verify_homomorphism(complement(g), complement(h), phi))
    throw InvalidWitnessError("map is not a homomorphism between the complements");
  if (!is_valid_group_code(h, code_h)) throw InvalidCodeError("source code is not valid for h");

  const int x = code_h.alphabet;
  const int n = g.order();
  const std::uint64_t total = detail::ipow(static_cast<std::uint64_t>(x), n);
  if (total > detail::kGroupTableCap) throw BudgetExceededError("alphabet^n too large to tabulate");

  std::vector<std::vector<int>> fibers(static_cast<std::size_t>(h.order()));
  for (int v = 0; v < n; ++v) fibers[static_cast<std::size_t>(phi.map[static_cast<std::size_t>(v)])].push_back(v);

  auto fiber_sums = [&](const std::vector<int>& msg) {
    std::vector<int> s(static_cast<std::size_t>(h.order()), 0);
    for (int w = 0; w < h.order(); ++w)
      for (int v : fibers[static_cast<std::size_t>(w)]) s[static_cast<std::size_t>(w)] = (s[static_cast<std::size_t>(w)] + msg[static_cast<std::size_t>(v)]) % x;
    return s;
  };

  GroupCode out;
  out.alphabet = x;
  out.n = n;
  out.length = code_h.length;
  out.encoder.resize(total);
  for (std::uint64_t xi = 0; xi < total; ++xi)
    out.encoder[xi] = code_h.encoder[detail::pack(fiber_sums(detail::unpack(xi, x, n)), x)];

  for (int i = 0; i < n; ++i) {
    const int w = phi.map[static_cast<std::size_t>(i)];
    const std::vector<int> side_vertices = g.out(i).to_vector();
    const int deg = static_cast<int>(side_vertices.size());
    const std::vector<int> h_side_vertices = h.out(w).to_vector();

    // Lemma-backed bookkeeping: every member of an out-neighbor fiber and
    // every fiber mate of i is among i's out-neighbors.
    std::vector<int> pos_in_side(static_cast<std::size_t>(n), -1);
    for (int s = 0; s < deg; ++s) pos_in_side[static_cast<std::size_t>(side_vertices[static_cast<std::size_t>(s)])] = s;

    const std::uint64_t rows = detail::ipow(static_cast<std::uint64_t>(x), out.length + deg);
    std::vector<int> table(rows, 0);
    for (std::uint64_t key = 0; key < rows; ++key) {
      const std::uint64_t side_part = key % detail::ipow(static_cast<std::uint64_t>(x), deg);
      const std::uint64_t y_part = key / detail::ipow(static_cast<std::uint64_t>(x), deg);
      const std::vector<int> y = detail::unpack(y_part, x, out.length);
      const std::vector<int> side = detail::unpack(side_part, x, deg);

      // Fiber sums of w's out-neighbors, computable from i's side info.
      std::vector<int> h_side(static_cast<std::size_t>(h_side_vertices.size()), 0);
      bool reachable = true;
      for (std::size_t t = 0; t < h_side_vertices.size() && reachable; ++t) {
        int sum = 0;
        for (int v : fibers[static_cast<std::size_t>(h_side_vertices[t])]) {
          const int pos = pos_in_side[static_cast<std::size_t>(v)];
          if (pos < 0) {
            reachable = false;
            break;
          }
          sum = (sum + side[static_cast<std::size_t>(pos)]) % x;
        }
        h_side[t] = sum;
      }
      if (!reachable) throw std::logic_error("witness violates the fiber side-information property");

      const std::uint64_t h_key =
          detail::pack(y, x) * detail::ipow(static_cast<std::uint64_t>(x), static_cast<int>(h_side.size())) +
          detail::pack(h_side, x);
      const int s_w = code_h.decoders[static_cast<std::size_t>(w)][h_key];

      // Peel the fiber mates off the lifted sum.
      int v = s_w;
      for (int mate : fibers[static_cast<std::size_t>(w)]) {
        if (mate == i) continue;
        const int pos = pos_in_side[static_cast<std::size_t>(mate)];
        if (pos < 0) throw std::logic_error("witness violates the fiber clique property");
        v = ((v - side[static_cast<std::size_t>(pos)]) % x + x) % x;
      }
      table[key] = v;
    }
    out.decoders.push_back(std::move(table));
  }

  if (!is_valid_group_code(g, out)) throw std::logic_error("translated group code failed validation");
  return out;
}

}  // namespace idxcode
