#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "psl/field.hpp"

namespace psl {

// Dense matrix over a field object F. Row-major storage.
template <class F>
class Mat {
public:
  using Elem = typename F::Elem;

  Mat() : field_(), rows_(0), cols_(0) {}
  Mat(F field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Mat identity(F field, std::size_t n) {
    Mat m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!field_.eq(data_[k], o.data_[k])) return false;
    return true;
  }

  Mat transpose() const {
    Mat t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Mat mul(const Mat& o) const {
    if (cols_ != o.rows_) fail("ShapeMismatch", "matrix product shape mismatch");
    Mat r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Elem& a = at(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r.at(i, j) = field_.add(r.at(i, j), field_.mul(a, o.at(k, j)));
      }
    return r;
  }

  std::vector<Elem> apply(const std::vector<Elem>& v) const {
    if (v.size() != cols_) fail("ShapeMismatch", "matrix-vector shape mismatch");
    std::vector<Elem> r(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!field_.is_zero(at(i, j))) r[i] = field_.add(r[i], field_.mul(at(i, j), v[j]));
    return r;
  }

  // Stacks `o` below this matrix.
  Mat vstack(const Mat& o) const {
    if (cols_ != o.cols_) fail("ShapeMismatch", "vstack column mismatch");
    Mat r(field_, rows_ + o.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < o.rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(rows_ + i, j) = o.at(i, j);
    return r;
  }

  Mat hstack(const Mat& o) const {
    if (rows_ != o.rows_) fail("ShapeMismatch", "hstack row mismatch");
    Mat r(field_, rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
  }

private:
  F field_;
  std::size_t rows_, cols_;
  std::vector<Elem> data_;
};

// Reduced row echelon form, in place. Returns the pivot columns.
template <class F>
std::vector<std::size_t> rref(Mat<F>& m) {
  const F& K = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && K.is_zero(m.at(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
    auto piv_inv = K.inv(m.at(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) = K.mul(m.at(row, j), piv_inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || K.is_zero(m.at(i, col))) continue;
      auto f = m.at(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m.at(i, j) = K.sub(m.at(i, j), K.mul(f, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
std::size_t rank(Mat<F> m) {
  return rref(m).size();
}

// Linear subspace of K^ambient, stored as a canonical reduced-echelon basis
// (one basis vector per row).
template <class F>
class Subspace {
public:
  using Elem = typename F::Elem;

  Subspace(F field, std::size_t ambient) : basis_(field, 0, ambient), pivots_() {}
  // Canonicalizes the rows of `span` (rows may be dependent).
  static Subspace span_of(Mat<F> span) {
    Subspace s(span.field(), span.cols());
    auto piv = rref(span);
    Mat<F> b(span.field(), piv.size(), span.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
      for (std::size_t j = 0; j < span.cols(); ++j) b.at(i, j) = span.at(i, j);
    s.basis_ = b;
    s.pivots_ = piv;
    return s;
  }

  const F& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Mat<F>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const std::vector<Elem>& v) const {
    auto r = reduce(v);
    const F& K = field();
    for (const auto& x : r)
      if (!K.is_zero(x)) return false;
    return true;
  }

  bool contains(const Subspace& o) const {
    for (std::size_t i = 0; i < o.dim(); ++i) {
      std::vector<Elem> v(ambient_dim());
      for (std::size_t j = 0; j < ambient_dim(); ++j) v[j] = o.basis().at(i, j);
      if (!contains(v)) return false;
    }
    return true;
  }

  // Residue of v modulo the subspace (zeroes out pivot coordinates).
  std::vector<Elem> reduce(std::vector<Elem> v) const {
    const F& K = field();
    for (std::size_t i = 0; i < dim(); ++i) {
      auto c = v[pivots_[i]];
      if (K.is_zero(c)) continue;
      for (std::size_t j = 0; j < ambient_dim(); ++j)
        v[j] = K.sub(v[j], K.mul(c, basis_.at(i, j)));
    }
    return v;
  }

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

private:
  Mat<F> basis_;
  std::vector<std::size_t> pivots_;
};

// Canonical basis of the null space, re-echelonized.
template <class F>
Subspace<F> kernel_basis(const Mat<F>& m) {
  const F& K = m.field();
  Mat<F> r = m;
  auto piv = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::size_t nfree = m.cols() - piv.size();
  Mat<F> gens(K, nfree, m.cols());
  std::size_t g = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    gens.at(g, c) = K.one();
    for (std::size_t i = 0; i < piv.size(); ++i)
      gens.at(g, piv[i]) = K.neg(r.at(i, c));
    ++g;
  }
  return Subspace<F>::span_of(gens);
}

// Canonical basis of the column space, as a subspace of K^rows.
template <class F>
Subspace<F> image_basis(const Mat<F>& m) {
  return Subspace<F>::span_of(m.transpose());
}

// One solution of M x = b, or nullopt when the system is inconsistent.
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const Mat<F>& m,
                                                   const std::vector<typename F::Elem>& b) {
  const F& K = m.field();
  if (b.size() != m.rows()) fail("ShapeMismatch", "solve: rhs length mismatch");
  Mat<F> aug(K, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt; // inconsistent
  std::vector<typename F::Elem> x(m.cols(), K.zero());
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(i, m.cols());
  return x;
}

inline mpz_class gaussian_binomial(unsigned m, unsigned k, unsigned q) {
  if (k > m) return 0;
  mpz_class num = 1, den = 1;
  mpz_class qz(q);
  for (unsigned i = 0; i < k; ++i) {
    mpz_class qm, qk;
    mpz_pow_ui(qm.get_mpz_t(), qz.get_mpz_t(), m - i);
    mpz_pow_ui(qk.get_mpz_t(), qz.get_mpz_t(), i + 1);
    num *= qm - 1;
    den *= qk - 1;
  }
  return num / den;
}

// Streams every k-dimensional subspace of F_p^m exactly once, as canonical
// reduced-echelon representatives. The visitor returns false to stop early.
// Enumeration size is bounded by `budget` (counted before streaming).
inline constexpr unsigned long kDefaultSubspaceBudget = 200000;

template <class Visit>
bool enumerate_subspaces(const PrimeField& K, unsigned m, unsigned k, Visit&& visit,
                         unsigned long budget = kDefaultSubspaceBudget) {
  if (k > m) return true;
  mpz_class count = gaussian_binomial(m, k, K.modulus());
  if (count > budget)
    fail("BudgetExceeded", "subspace enumeration needs " + count.get_str() +
                               " > budget " + std::to_string(budget));
  if (k == 0) {
    return visit(Subspace<PrimeField>::span_of(Mat<PrimeField>(K, 0, m)));
  }
  // choose pivot columns c_0 < ... < c_{k-1}, then fill free entries
  std::vector<unsigned> piv(k);
  for (unsigned i = 0; i < k; ++i) piv[i] = i;
  const unsigned q = K.modulus();
  while (true) {
    // free positions: (i, j) with j > piv[i] and j not a pivot column
    std::vector<bool> is_piv(m, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::pair<unsigned, unsigned>> free_pos;
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = piv[i] + 1; j < m; ++j)
        if (!is_piv[j]) free_pos.emplace_back(i, j);
    std::vector<unsigned> odo(free_pos.size(), 0);
    while (true) {
      Mat<PrimeField> b(K, k, m);
      for (unsigned i = 0; i < k; ++i) b.at(i, piv[i]) = 1 % q;
      for (std::size_t t = 0; t < free_pos.size(); ++t)
        b.at(free_pos[t].first, free_pos[t].second) = odo[t];
      if (!visit(Subspace<PrimeField>::span_of(std::move(b)))) return false;
      std::size_t d = 0;
      while (d < odo.size() && ++odo[d] == q) odo[d++] = 0;
      if (d == odo.size() && !odo.empty()) break;
      if (odo.empty()) break;
    }
    // next pivot combination
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && piv[i] == m - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (unsigned j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
  return true;
}

inline std::vector<Subspace<PrimeField>> all_subspaces(const PrimeField& K, unsigned m, unsigned k,
                                                       unsigned long budget = kDefaultSubspaceBudget) {
  std::vector<Subspace<PrimeField>> out;
  enumerate_subspaces(K, m, k, [&](Subspace<PrimeField> s) {
    out.push_back(std::move(s));
    return true;
  }, budget);
  return out;
}

} // namespace psl
