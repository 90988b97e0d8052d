#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "idxcode/errors.hpp"

namespace idxcode {

/// Index of a field element, always in [0, q).
using Elem = std::uint8_t;

namespace detail {

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over GF(p), coefficients ascending by degree, no trailing zeros.
inline void poly_trim(std::vector<int>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
  if (a.empty() || b.empty()) return {};
  std::vector<int> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  poly_trim(r);
  return r;
}

// Remainder of a modulo the monic polynomial m.
inline std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& m, int p) {
  poly_trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int lead = a.back();
    for (int i = 0; i <= dm; ++i) {
      int& c = a[static_cast<std::size_t>(i + shift)];
      c = ((c - lead * m[static_cast<std::size_t>(i)]) % p + p) % p;
    }
    poly_trim(a);
  }
  return a;
}

inline bool poly_is_irreducible(const std::vector<int>& poly, int p) {
  const int d = static_cast<int>(poly.size()) - 1;
  // A reducible monic polynomial of degree d has a monic factor of
  // degree in [1, d/2]; trial-divide by all of them.
  for (int e = 1; 2 * e <= d; ++e) {
    std::vector<int> f(static_cast<std::size_t>(e) + 1, 0);
    f[static_cast<std::size_t>(e)] = 1;
    std::int64_t combos = 1;
    for (int i = 0; i < e; ++i) combos *= p;
    for (std::int64_t v = 0; v < combos; ++v) {
      std::int64_t t = v;
      for (int i = 0; i < e; ++i) {
        f[static_cast<std::size_t>(i)] = static_cast<int>(t % p);
        t /= p;
      }
      if (poly_rem(poly, f, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Arithmetic over GF(q) for a prime power q, 2 <= q <= 16.
///
/// Elements are indices in [0, q). For prime q these are the residues mod q;
/// for q = p^d they encode coefficient vectors of GF(p)[x]/(modulus), packed
/// as base-p digits with the coefficient of x^i in digit i. The modulus is
/// the first monic irreducible of degree d in base-p counter order over the
/// non-leading coefficients, so element indices are stable across runs.
/// All operations are table lookups; instances are immutable and cheap to copy.
class Field {
 public:
  static constexpr int kMaxOrder = 16;

  int order() const { return t_->q; }
  int characteristic() const { return t_->p; }
  int degree() const { return t_->degree; }

  /// Coefficients of the modulus polynomial, ascending degree, leading 1
  /// included. Empty for prime fields.
  const std::vector<Elem>& modulus() const { return t_->modulus; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const { return t_->add[idx(a, b)]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const { return t_->mul[idx(a, b)]; }
  Elem neg(Elem a) const { return t_->neg[a]; }

  Elem inv(Elem a) const {
    if (a == 0) throw RangeError("zero has no multiplicative inverse");
    return t_->inv[a];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  bool operator==(const Field& o) const {
    return t_->q == o.t_->q && t_->modulus == o.t_->modulus;
  }

  friend Field make_field(int q);

 private:
  struct Tables {
    int q = 0, p = 0, degree = 1;
    std::vector<Elem> modulus;
    std::vector<Elem> add, mul;  // q*q, row-major
    std::vector<Elem> neg, inv;  // q
  };

  explicit Field(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}

  std::size_t idx(Elem a, Elem b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(t_->q) + b;
  }

  std::shared_ptr<const Tables> t_;
};

/// Builds GF(q). Throws NotPrimePowerError if q is not a prime power and
/// UnsupportedError for q > 16. The constructed tables are checked
/// exhaustively for the field axioms before the Field is returned.
inline Field make_field(int q) {
  if (q > Field::kMaxOrder) throw UnsupportedError("field order > 16 not supported");
  int p = 0, degree = 0;
  for (int cand = 2; cand <= q; ++cand) {
    if (!detail::is_prime(cand)) continue;
    int power = cand, d = 1;
    while (power < q) {
      power *= cand;
      ++d;
    }
    if (power == q) {
      p = cand;
      degree = d;
      break;
    }
  }
  if (p == 0) throw NotPrimePowerError("q = " + std::to_string(q) + " is not a prime power");

  auto t = std::make_shared<Field::Tables>();
  t->q = q;
  t->p = p;
  t->degree = degree;

  std::vector<int> modulus;  // ascending coefficients, monic
  if (degree > 1) {
    // First irreducible in base-p counter order over the non-leading
    // coefficients; the counter value is sum c_i * p^i.
    int combos = 1;
    for (int i = 0; i < degree; ++i) combos *= p;
    for (int v = 0; v < combos && modulus.empty(); ++v) {
      std::vector<int> cand(static_cast<std::size_t>(degree) + 1, 0);
      cand[static_cast<std::size_t>(degree)] = 1;
      int x = v;
      for (int i = 0; i < degree; ++i) {
        cand[static_cast<std::size_t>(i)] = x % p;
        x /= p;
      }
      if (detail::poly_is_irreducible(cand, p)) modulus = cand;
    }
    for (int c : modulus) t->modulus.push_back(static_cast<Elem>(c));
  }

  // Element index <-> coefficient vector, base-p digits.
  auto digits = [&](int e) {
    std::vector<int> c(static_cast<std::size_t>(degree), 0);
    for (int i = 0; i < degree; ++i) {
      c[static_cast<std::size_t>(i)] = e % p;
      e /= p;
    }
    return c;
  };
  auto pack = [&](const std::vector<int>& c) {
    int e = 0;
    for (int i = degree - 1; i >= 0; --i) {
      e = e * p + (i < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(i)] : 0);
    }
    return static_cast<Elem>(e);
  };

  t->add.resize(static_cast<std::size_t>(q) * q);
  t->mul.resize(static_cast<std::size_t>(q) * q);
  t->neg.resize(static_cast<std::size_t>(q));
  t->inv.resize(static_cast<std::size_t>(q), 0);
  for (int a = 0; a < q; ++a) {
    const auto ca = digits(a);
    std::vector<int> na(ca.size());
    for (std::size_t i = 0; i < ca.size(); ++i) na[i] = (p - ca[i]) % p;
    t->neg[static_cast<std::size_t>(a)] = pack(na);
    for (int b = 0; b < q; ++b) {
      const auto cb = digits(b);
      std::vector<int> s(ca.size());
      for (std::size_t i = 0; i < ca.size(); ++i) s[i] = (ca[i] + cb[i]) % p;
      t->add[static_cast<std::size_t>(a) * q + b] = pack(s);
      std::vector<int> prod = detail::poly_mul(ca, cb, p);
      if (degree > 1) prod = detail::poly_rem(std::move(prod), modulus, p);
      t->mul[static_cast<std::size_t>(a) * q + b] = pack(prod);
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (t->mul[static_cast<std::size_t>(a) * q + b] == 1) t->inv[static_cast<std::size_t>(a)] = static_cast<Elem>(b);

  // Exhaustive axiom check; q <= 16 keeps this at most 16^3 triples per law.
  auto fail = [] { throw std::logic_error("field table verification failed"); };
  for (int a = 0; a < q; ++a) {
    if (t->add[static_cast<std::size_t>(a) * q + 0] != a) fail();
    if (t->mul[static_cast<std::size_t>(a) * q + 1] != a) fail();
    if (t->add[static_cast<std::size_t>(a) * q + t->neg[static_cast<std::size_t>(a)]] != 0) fail();
    if (a != 0 && t->mul[static_cast<std::size_t>(a) * q + t->inv[static_cast<std::size_t>(a)]] != 1) fail();
    for (int b = 0; b < q; ++b) {
      if (t->add[static_cast<std::size_t>(a) * q + b] != t->add[static_cast<std::size_t>(b) * q + a]) fail();
      if (t->mul[static_cast<std::size_t>(a) * q + b] != t->mul[static_cast<std::size_t>(b) * q + a]) fail();
      for (int c = 0; c < q; ++c) {
        auto add = [&](int x, int y) { return t->add[static_cast<std::size_t>(x) * q + y]; };
        auto mul = [&](int x, int y) { return t->mul[static_cast<std::size_t>(x) * q + y]; };
        if (add(add(a, b), c) != add(a, add(b, c))) fail();
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) fail();
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) fail();
      }
    }
  }

  return Field(std::move(t));
}

/// Dense row-major matrix over GF(q).
class FieldMatrix {
 public:
  FieldMatrix(Field field, int rows, int cols)
      : field_(std::move(field)), rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {
    if (rows < 0 || cols < 0) throw BadParametersError("negative matrix dimension");
  }

  static FieldMatrix identity(const Field& field, int n) {
    FieldMatrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static FieldMatrix from_rows(const Field& field, const std::vector<std::vector<int>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
    FieldMatrix m(field, r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c)
        throw DimensionMismatchError("ragged rows");
      for (int j = 0; j < c; ++j) m.set(i, j, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    return m;
  }

  const Field& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Elem at(int r, int c) const { return a_[pos(r, c)]; }

  void set(int r, int c, int v) {
    if (v < 0 || v >= field_.order()) throw RangeError("matrix entry outside [0, q)");
    a_[pos(r, c)] = static_cast<Elem>(v);
  }

  std::span<const Elem> row(int r) const {
    return {a_.data() + pos(r, 0), static_cast<std::size_t>(cols_)};
  }

  std::vector<Elem> column(int c) const {
    std::vector<Elem> v(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) v[static_cast<std::size_t>(r)] = at(r, c);
    return v;
  }

  bool operator==(const FieldMatrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  std::size_t pos(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw RangeError("matrix index out of range");
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
  }

  Field field_;
  int rows_, cols_;
  std::vector<Elem> a_;
};

/// Rank over the matrix's field, by Gaussian elimination on the tables.
inline int rank(const FieldMatrix& m) {
  const Field& f = m.field();
  std::vector<std::vector<Elem>> rows;
  rows.reserve(static_cast<std::size_t>(m.rows()));
  for (int r = 0; r < m.rows(); ++r) rows.emplace_back(m.row(r).begin(), m.row(r).end());

  int rk = 0;
  for (int c = 0; c < m.cols() && rk < m.rows(); ++c) {
    int pivot = -1;
    for (int r = rk; r < m.rows(); ++r)
      if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[static_cast<std::size_t>(rk)], rows[static_cast<std::size_t>(pivot)]);
    const Elem lead = rows[static_cast<std::size_t>(rk)][static_cast<std::size_t>(c)];
    for (int r = rk + 1; r < m.rows(); ++r) {
      const Elem x = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (x == 0) continue;
      const Elem factor = f.div(x, lead);
      for (int j = c; j < m.cols(); ++j) {
        auto& cell = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        cell = f.sub(cell, f.mul(factor, rows[static_cast<std::size_t>(rk)][static_cast<std::size_t>(j)]));
      }
    }
    ++rk;
  }
  return rk;
}

/// Coefficients c with sum_t c_t * generators[t] = target, or nullopt if the
/// target is outside the span. The solution is canonical: elimination with
/// lowest-index pivots, free coefficients fixed to zero.
inline std::optional<std::vector<Elem>> express_in_span(std::span<const Elem> target,
                                                        const std::vector<std::vector<Elem>>& generators,
                                                        const Field& f) {
  const int n = static_cast<int>(target.size());
  const int t = static_cast<int>(generators.size());
  for (const auto& g : generators)
    if (static_cast<int>(g.size()) != n) throw DimensionMismatchError("generator length mismatch");
  for (Elem e : target)
    if (e >= f.order()) throw RangeError("element outside field");

  // Augmented system A c = target with A[:,j] = generators[j].
  std::vector<std::vector<Elem>> a(static_cast<std::size_t>(n), std::vector<Elem>(static_cast<std::size_t>(t) + 1, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < t; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = generators[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] = target[static_cast<std::size_t>(i)];
  }

  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < t && r < n; ++c) {
    int pr = -1;
    for (int i = r; i < n; ++i)
      if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(a[static_cast<std::size_t>(r)], a[static_cast<std::size_t>(pr)]);
    const Elem lead = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    const Elem leadinv = f.inv(lead);
    for (int j = c; j <= t; ++j)
      a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = f.mul(leadinv, a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]);
    for (int i = 0; i < n; ++i) {
      if (i == r) continue;
      const Elem x = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (x == 0) continue;
      for (int j = c; j <= t; ++j) {
        auto& cell = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        cell = f.sub(cell, f.mul(x, a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]));
      }
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < n; ++i)
    if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] != 0) return std::nullopt;

  std::vector<Elem> coeff(static_cast<std::size_t>(t), 0);
  for (int i = 0; i < r; ++i)
    coeff[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
  return coeff;
}

}  // namespace idxcode
