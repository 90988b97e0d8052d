#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "idxcode/digraph.hpp"
#include "idxcode/errors.hpp"
#include "idxcode/field.hpp"
#include "idxcode/homsearch.hpp"

namespace idxcode {

/// Per-receiver decoding recipe: x_i = alpha . y + sum_j beta[j] * x_j over
/// the broadcast vector y and the receiver's side-information messages.
struct Decoder {
  std::vector<Elem> alpha;
  std::map<int, Elem> beta;

  bool operator==(const Decoder&) const = default;
};

/// A scalar linear index code: an l x m encoder over GF(q), optionally with
/// decoders attached once validity has been established.
class LinearCode {
 public:
  explicit LinearCode(FieldMatrix encoder) : encoder_(std::move(encoder)) {
    if (encoder_.rows() < 1 || encoder_.cols() < 1)
      throw BadParametersError("encoder must be at least 1 x 1");
  }

  const FieldMatrix& encoder() const { return encoder_; }
  const Field& field() const { return encoder_.field(); }
  int length() const { return encoder_.rows(); }
  int message_count() const { return encoder_.cols(); }

  std::optional<std::vector<Decoder>> decoders;

 private:
  FieldMatrix encoder_;
};

/// Decides validity of the encoder M for side-information digraph g:
/// receiver i succeeds iff e_i lies in rowspace(M) + span{e_j : j in N+(i)}.
/// Returns canonical decoders (lowest-index-pivot elimination, free
/// coefficients zero) for all receivers, or nullopt if any receiver fails.
inline std::optional<std::vector<Decoder>> is_valid_linear_code(const Digraph& g,
                                                                const FieldMatrix& m) {
  if (m.cols() != g.order()) throw DimensionMismatchError("encoder column count != vertex count");
  const Field& f = m.field();
  const int n = g.order();
  const int l = m.rows();

  std::vector<Decoder> decoders;
  decoders.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<Elem>> gens;
    gens.reserve(static_cast<std::size_t>(l) + static_cast<std::size_t>(g.out_degree(i)));
    for (int r = 0; r < l; ++r) gens.emplace_back(m.row(r).begin(), m.row(r).end());
    const std::vector<int> side = g.out(i).to_vector();
    for (int j : side) {
      std::vector<Elem> e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(j)] = 1;
      gens.push_back(std::move(e));
    }
    std::vector<Elem> target(static_cast<std::size_t>(n), 0);
    target[static_cast<std::size_t>(i)] = 1;

    const auto coeff = express_in_span(target, gens, f);
    if (!coeff) return std::nullopt;
    Decoder d;
    d.alpha.assign(coeff->begin(), coeff->begin() + l);
    for (std::size_t s = 0; s < side.size(); ++s) {
      const Elem c = (*coeff)[static_cast<std::size_t>(l) + s];
      if (c != 0) d.beta[side[s]] = c;
    }
    decoders.push_back(std::move(d));
  }
  return decoders;
}

/// Streams one representative per k-dimensional row space of GF(q)^m: the
/// reduced row-echelon forms with full row rank. Pivot-column sets advance
/// in lexicographic combination order; for a fixed pivot set the free
/// entries run through a base-q counter whose least significant digit is
/// the first free position in row-major order.
class RrefEnumerator {
 public:
  RrefEnumerator(Field field, int k, int m)
      : f_(std::move(field)), k_(k), m_(m) {
    if (k < 0 || m < 0) throw BadParametersError("negative dimension");
    exhausted_ = k > m;
    if (!exhausted_) {
      pivots_.resize(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) pivots_[static_cast<std::size_t>(i)] = i;
      load_pivots();
    }
  }

  std::optional<FieldMatrix> next() {
    while (!exhausted_) {
      if (counter_done_) {
        if (!advance_pivots()) break;
        load_pivots();
        continue;
      }
      FieldMatrix m = materialize();
      advance_counter();
      return m;
    }
    return std::nullopt;
  }

 private:
  void load_pivots() {
    std::vector<bool> is_pivot(static_cast<std::size_t>(m_), false);
    for (int p : pivots_) is_pivot[static_cast<std::size_t>(p)] = true;
    free_.clear();
    for (int r = 0; r < k_; ++r)
      for (int c = pivots_[static_cast<std::size_t>(r)] + 1; c < m_; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) free_.emplace_back(r, c);
    digits_.assign(free_.size(), 0);
    counter_done_ = false;
  }

  FieldMatrix materialize() const {
    FieldMatrix m(f_, k_, m_);
    for (int r = 0; r < k_; ++r) m.set(r, pivots_[static_cast<std::size_t>(r)], 1);
    for (std::size_t i = 0; i < free_.size(); ++i)
      m.set(free_[i].first, free_[i].second, digits_[i]);
    return m;
  }

  void advance_counter() {
    std::size_t i = 0;
    while (i < digits_.size() && ++digits_[i] == f_.order()) digits_[i++] = 0;
    if (i == digits_.size()) counter_done_ = true;
  }

  bool advance_pivots() {
    // Next k-combination of [0, m) in lexicographic order.
    int i = k_ - 1;
    while (i >= 0 && pivots_[static_cast<std::size_t>(i)] == m_ - k_ + i) --i;
    if (i < 0) {
      exhausted_ = true;
      return false;
    }
    ++pivots_[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k_; ++j) pivots_[static_cast<std::size_t>(j)] = pivots_[static_cast<std::size_t>(j - 1)] + 1;
    return true;
  }

  Field f_;
  int k_, m_;
  std::vector<int> pivots_;
  std::vector<std::pair<int, int>> free_;  // (row, col), row-major
  std::vector<int> digits_;
  bool counter_done_ = true;
  bool exhausted_ = true;
};

struct LindResult {
  int k = 0;
  LinearCode code;
};

/// Number of k x m reduced-echelon full-row-rank matrices over GF(q), i.e.
/// the number of k-dimensional subspaces of GF(q)^m, saturated at cap + 1.
/// Uses the subspace recurrence count(n, k) = count(n-1, k-1) + q^k *
/// count(n-1, k) so no division is needed and saturation is exact.
inline std::uint64_t rref_count_capped(int q, int k, int m, std::uint64_t cap) {
  if (k < 0 || m < 0) throw BadParametersError("negative dimensions");
  if (k > m) return 0;
  const std::uint64_t cap1 = cap == std::numeric_limits<std::uint64_t>::max() ? cap : cap + 1;
  auto sat_add = [&](std::uint64_t a, std::uint64_t b) {
    return (a > cap1 - b || a + b > cap1) ? cap1 : a + b;
  };
  auto sat_mul = [&](std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return std::uint64_t{0};
    return a > cap1 / b ? cap1 : a * b;
  };
  // prev[j] = count(n-1, j); roll n upward.
  std::vector<std::uint64_t> prev(static_cast<std::size_t>(k) + 1, 0);
  prev[0] = 1;
  for (int n = 1; n <= m; ++n) {
    std::vector<std::uint64_t> cur(static_cast<std::size_t>(k) + 1, 0);
    cur[0] = 1;
    std::uint64_t qk = 1;
    for (int j = 1; j <= k && j <= n; ++j) {
      qk = sat_mul(qk, static_cast<std::uint64_t>(q));
      cur[static_cast<std::size_t>(j)] =
          sat_add(prev[static_cast<std::size_t>(j - 1)],
                  sat_mul(qk, prev[static_cast<std::size_t>(j)]));
    }
    prev = std::move(cur);
  }
  return prev[static_cast<std::size_t>(k)];
}

/// First valid length-k encoder for g over GF(q) in enumeration order, or
/// nullopt when no k-row row space works. `used` accumulates candidates
/// tried across calls so a caller can share one budget over several lengths.
inline std::optional<LinearCode> lind_exact_length(const Digraph& g, int q, int k,
                                                   std::uint64_t budget,
                                                   std::uint64_t& used) {
  const Field f = make_field(q);
  const int m = g.order();
  if (m == 0) throw BadParametersError("empty graph has no index coding instance");
  if (k < 1 || k > m) return std::nullopt;
  RrefEnumerator en(f, k, m);
  while (auto cand = en.next()) {
    if (++used > budget) throw BudgetExceededError("encoder search budget exhausted");
    // A receiver whose encoder column is zero can never decode: nothing
    // about its message reaches the channel and it is not in its own
    // side information.
    bool zero_col = false;
    for (int c = 0; c < m && !zero_col; ++c) {
      bool any = false;
      for (int r = 0; r < k && !any; ++r) any = cand->at(r, c) != 0;
      zero_col = !any;
    }
    if (zero_col) continue;
    if (auto dec = is_valid_linear_code(g, *cand)) {
      LinearCode code(*cand);
      code.decoders = std::move(dec);
      return code;
    }
  }
  return std::nullopt;
}

/// Exact scalar linear index: the least k <= k_max admitting a valid l = k
/// encoder over GF(q), with the first witness in enumeration order. Only
/// full-row-rank reduced echelon representatives are tried, since validity
/// depends on the encoder's row space alone. Returns nullopt if no k <=
/// k_max works; throws BudgetExceededError after `budget` candidates.
inline std::optional<LindResult> lind(const Digraph& g, int q, int k_max,
                                      std::uint64_t budget = kDefaultSearchBudget) {
  const int m = g.order();
  if (m == 0) throw BadParametersError("empty graph has no index coding instance");
  std::uint64_t used = 0;
  for (int k = 1; k <= k_max && k <= m; ++k) {
    if (auto code = lind_exact_length(g, q, k, budget, used))
      return LindResult{k, std::move(*code)};
  }
  return std::nullopt;
}

/// Minimum rank over GF(q) of matrices fitting g: nonzero diagonal, zero at
/// (i,j) whenever i != j and (i,j) is not an arc. Row scaling normalizes
/// the diagonal to 1, and a depth-first search over rows prunes as soon as
/// the partial rank reaches the best complete fit seen so far.
inline int minrank(const Digraph& g, int q, std::uint64_t budget = kDefaultSearchBudget) {
  const Field f = make_field(q);
  const int m = g.order();
  if (m == 0) return 0;

  std::vector<std::vector<int>> freecols(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) freecols[static_cast<std::size_t>(i)] = g.out(i).to_vector();

  int best = m;
  std::uint64_t used = 0;
  // basis: reduced nonzero rows of the partial matrix, with pivot columns.
  std::vector<std::pair<int, std::vector<Elem>>> basis;

  auto reduce = [&](std::vector<Elem> row) {
    for (const auto& [pc, b] : basis) {
      const Elem x = row[static_cast<std::size_t>(pc)];
      if (x == 0) continue;
      for (int c = 0; c < m; ++c)
        row[static_cast<std::size_t>(c)] = f.sub(row[static_cast<std::size_t>(c)], f.mul(x, b[static_cast<std::size_t>(c)]));
    }
    return row;
  };

  auto dfs = [&](auto&& self, int depth) -> void {
    if (static_cast<int>(basis.size()) >= best) return;
    if (depth == m) {
      best = static_cast<int>(basis.size());
      return;
    }
    const auto& cols = freecols[static_cast<std::size_t>(depth)];
    std::vector<int> digits(cols.size(), 0);
    while (true) {
      if (++used > budget) throw BudgetExceededError("minrank search budget exhausted");
      std::vector<Elem> row(static_cast<std::size_t>(m), 0);
      row[static_cast<std::size_t>(depth)] = 1;
      for (std::size_t t = 0; t < cols.size(); ++t)
        row[static_cast<std::size_t>(cols[t])] = static_cast<Elem>(digits[t]);

      std::vector<Elem> red = reduce(row);
      int pc = -1;
      for (int c = 0; c < m; ++c)
        if (red[static_cast<std::size_t>(c)] != 0) {
          pc = c;
          break;
        }
      if (pc < 0) {
        self(self, depth + 1);
      } else if (static_cast<int>(basis.size()) + 1 < best) {
        const Elem leadinv = f.inv(red[static_cast<std::size_t>(pc)]);
        for (auto& x : red) x = f.mul(leadinv, x);
        basis.emplace_back(pc, std::move(red));
        self(self, depth + 1);
        basis.pop_back();
      }

      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
      if (i == digits.size() && !digits.empty()) break;
      if (digits.empty()) break;
    }
  };
  dfs(dfs, 0);
  return best;
}

/// One minimal set of broadcast-symbol indices from which a receiver can
/// recover its message (together with its side information), plus an
/// all-nonzero coefficient vector showing that a single combined symbol
/// sum_t combo[t] * y_symbols[t] already suffices.
struct SufficientFamily {
  int receiver = 0;
  std::vector<int> symbols;  // ascending
  std::vector<Elem> combo;   // aligned with symbols, every entry nonzero

  bool operator==(const SufficientFamily&) const = default;
};

namespace detail {

inline bool subset_sufficient(const Digraph& g, const FieldMatrix& m, int receiver,
                              std::uint32_t mask) {
  const Field& f = m.field();
  const int n = g.order();
  std::vector<std::vector<Elem>> gens;
  for (int r = 0; r < m.rows(); ++r)
    if ((mask >> r) & 1u) gens.emplace_back(m.row(r).begin(), m.row(r).end());
  for (int j = g.out(receiver).find_first(); j >= 0; j = g.out(receiver).find_next(j)) {
    std::vector<Elem> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(j)] = 1;
    gens.push_back(std::move(e));
  }
  std::vector<Elem> target(static_cast<std::size_t>(n), 0);
  target[static_cast<std::size_t>(receiver)] = 1;
  return express_in_span(target, gens, f).has_value();
}

// Finds all-nonzero coefficients c over `symbols` such that the single
// symbol sum_t c_t * y_{symbols[t]} plus side information decodes the
// receiver; enumeration is a base-(q-1) counter, least significant digit at
// symbols[0], digit d meaning coefficient d+1.
inline std::optional<std::vector<Elem>> single_combination(const Digraph& g, const FieldMatrix& m,
                                                           int receiver,
                                                           const std::vector<int>& symbols) {
  const Field& f = m.field();
  const int q = f.order();
  const int n = g.order();
  std::vector<int> digits(symbols.size(), 0);
  while (true) {
    std::vector<Elem> combined(static_cast<std::size_t>(n), 0);
    for (std::size_t t = 0; t < symbols.size(); ++t) {
      const Elem c = static_cast<Elem>(digits[t] + 1);
      for (int col = 0; col < n; ++col)
        combined[static_cast<std::size_t>(col)] =
            f.add(combined[static_cast<std::size_t>(col)], f.mul(c, m.at(symbols[t], col)));
    }
    std::vector<std::vector<Elem>> gens;
    gens.push_back(std::move(combined));
    for (int j = g.out(receiver).find_first(); j >= 0; j = g.out(receiver).find_next(j)) {
      std::vector<Elem> e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(j)] = 1;
      gens.push_back(std::move(e));
    }
    std::vector<Elem> target(static_cast<std::size_t>(n), 0);
    target[static_cast<std::size_t>(receiver)] = 1;
    if (express_in_span(target, gens, f).has_value()) {
      std::vector<Elem> combo(symbols.size());
      for (std::size_t t = 0; t < symbols.size(); ++t) combo[t] = static_cast<Elem>(digits[t] + 1);
      return combo;
    }
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == q - 1) digits[i++] = 0;
    if (i == digits.size()) return std::nullopt;
  }
}

}  // namespace detail

/// All minimal sufficient families for one receiver, ordered by cardinality
/// then lexicographically. The code must be valid for g. Each family is
/// returned with a witness single-combination coefficient vector.
inline std::vector<SufficientFamily> minimal_sufficient_families(const Digraph& g,
                                                                 const LinearCode& code, int i) {
  if (i < 0 || i >= g.order()) throw RangeError("receiver out of range");
  const FieldMatrix& m = code.encoder();
  if (!is_valid_linear_code(g, m)) throw InvalidCodeError("code is not valid for this graph");
  const int l = m.rows();
  if (l > 30) throw TooLargeError("too many broadcast symbols for subset enumeration");

  std::vector<std::uint32_t> minimal_masks;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << l); ++mask) {
    if (!detail::subset_sufficient(g, m, i, mask)) continue;
    bool minimal = true;
    for (int r = 0; r < l && minimal; ++r)
      if ((mask >> r) & 1u) minimal = !detail::subset_sufficient(g, m, i, mask & ~(std::uint32_t{1} << r));
    if (minimal) minimal_masks.push_back(mask);
  }

  std::vector<SufficientFamily> out;
  for (std::uint32_t mask : minimal_masks) {
    SufficientFamily fam;
    fam.receiver = i;
    for (int r = 0; r < l; ++r)
      if ((mask >> r) & 1u) fam.symbols.push_back(r);
    auto combo = detail::single_combination(g, m, i, fam.symbols);
    if (!combo)
      throw Error("minimal sufficient family admits no single-combination decoding");
    fam.combo = std::move(*combo);
    out.push_back(std::move(fam));
  }
  std::sort(out.begin(), out.end(), [](const SufficientFamily& a, const SufficientFamily& b) {
    if (a.symbols.size() != b.symbols.size()) return a.symbols.size() < b.symbols.size();
    return a.symbols < b.symbols;
  });
  return out;
}

struct VlindResult {
  int l = 0;
  int t = 1;
  LinearCode code;  // encoder is l x (t*m), message blocks laid out contiguously
};

/// Micro-scale vector linear search: the least l <= l_max such that some
/// GF(q)-linear encoder GF(q)^(t*m) -> GF(q)^l lets every receiver recover
/// its whole t-symbol block from the broadcast plus the blocks of its
/// out-neighbors. The achieved rate is l/t.
inline std::optional<VlindResult> vlind_micro(const Digraph& g, int q, int t, int l_max,
                                              std::uint64_t budget = kDefaultSearchBudget) {
  if (t < 1) throw BadParametersError("block size must be positive");
  const Field f = make_field(q);
  const int m = g.order();
  if (m == 0) throw BadParametersError("empty graph has no index coding instance");
  const int cols = t * m;

  std::uint64_t used = 0;
  for (int l = 1; l <= l_max && l <= cols; ++l) {
    RrefEnumerator en(f, l, cols);
    while (auto cand = en.next()) {
      if (++used > budget) throw BudgetExceededError("vector encoder search budget exhausted");
      bool ok = true;
      for (int i = 0; i < m && ok; ++i) {
        std::vector<std::vector<Elem>> gens;
        for (int r = 0; r < l; ++r) gens.emplace_back(cand->row(r).begin(), cand->row(r).end());
        for (int j = g.out(i).find_first(); j >= 0; j = g.out(i).find_next(j))
          for (int r = 0; r < t; ++r) {
            std::vector<Elem> e(static_cast<std::size_t>(cols), 0);
            e[static_cast<std::size_t>(j * t + r)] = 1;
            gens.push_back(std::move(e));
          }
        for (int s = 0; s < t && ok; ++s) {
          std::vector<Elem> target(static_cast<std::size_t>(cols), 0);
          target[static_cast<std::size_t>(i * t + s)] = 1;
          ok = express_in_span(target, gens, f).has_value();
        }
      }
      if (ok) return VlindResult{l, t, LinearCode(*cand)};
    }
  }
  return std::nullopt;
}

}  // namespace idxcode
