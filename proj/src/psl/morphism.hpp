#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "psl/poly.hpp"

namespace psl {

// Ordered list of line-bundle twists, e.g. {-2,-2,-1} for 2O(-2) + O(-1).
using TwistList = std::vector<int>;

inline std::string twist_list_str(const TwistList& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + "]";
}

// Euler characteristic of O(d) on the plane: (d+1)(d+2)/2 (can be negative).
inline long chi_line_bundle(long d) { return (d + 1) * (d + 2) / 2; }

// h^i(O(d)): Serre computation on the plane.
inline long h_line_bundle(int i, long d) {
  switch (i) {
    case 0: return d >= 0 ? chi_line_bundle(d) : 0;
    case 1: return 0;
    case 2: return h_line_bundle(0, -d - 3);
    default: fail("BadArgument", "h_line_bundle: i must be 0, 1 or 2");
  }
}

// Morphism of direct sums of line bundles, phi : (+)O(a_j) -> (+)O(b_i),
// stored as the matrix of forms with entry (i, j) of degree b_i - a_j.
// Entries at positions with b_i - a_j < 0 are required to vanish.
template <class F>
class Morphism {
public:
  using FormT = Form<F>;

  Morphism(F field, TwistList source, TwistList target)
      : field_(field), source_(std::move(source)), target_(std::move(target)) {
    if (source_.empty() || target_.empty())
      fail("BadTwistList", "source and target twist lists must be nonempty");
    entries_.reserve(rows() * cols());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j)
        entries_.push_back(FormT::zero(field_, std::max(0, entry_degree(i, j))));
  }

  const F& field() const { return field_; }
  const TwistList& source() const { return source_; }
  const TwistList& target() const { return target_; }
  std::size_t rows() const { return target_.size(); }
  std::size_t cols() const { return source_.size(); }
  int entry_degree(std::size_t i, std::size_t j) const { return target_[i] - source_[j]; }

  const FormT& at(std::size_t i, std::size_t j) const { return entries_[i * cols() + j]; }

  void set(std::size_t i, std::size_t j, FormT f) {
    int want = entry_degree(i, j);
    if (want < 0) {
      if (!f.is_zero())
        fail("DegreeMismatch", "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") must vanish (required degree " + std::to_string(want) + ")");
      entries_[i * cols() + j] = FormT::zero(field_, 0);
      return;
    }
    if (!f.is_zero() && f.degree() != want)
      fail("DegreeMismatch", "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") has degree " + std::to_string(f.degree()) + ", expected " +
                                 std::to_string(want));
    if (f.is_zero() && f.degree() != std::max(0, want))
      f = FormT::zero(field_, std::max(0, want));
    entries_[i * cols() + j] = std::move(f);
  }

  bool operator==(const Morphism& o) const {
    return source_ == o.source_ && target_ == o.target_ && entries_ == o.entries_;
  }

  // Hilbert polynomial (r, chi) of coker(phi): P(t) = r t + chi.
  // Requires the quadratic term to cancel (as many rows as columns).
  std::pair<long, long> hilbert_polynomial() const {
    if (rows() != cols())
      fail("NotOneDimensional", "cokernel of a " + std::to_string(rows()) + "x" +
                                    std::to_string(cols()) + " presentation is not one-dimensional");
    long r = 0, chi = 0;
    for (int b : target_) {
      r += b;
      chi += chi_line_bundle(b);
    }
    for (int a : source_) {
      r -= a;
      chi -= chi_line_bundle(a);
    }
    return {r, chi};
  }

  Morphism twist(int n) const {
    Morphism t = *this;
    for (auto& a : t.source_) a += n;
    for (auto& b : t.target_) b += n;
    return t;
  }

  // Presentation of the dual sheaf F^D = Ext^1(F, omega): transpose the
  // matrix, source twists {-b_i - 3}, target twists {-a_j - 3}. Involutive.
  Morphism dualize() const {
    TwistList src(target_.size()), tgt(source_.size());
    for (std::size_t i = 0; i < target_.size(); ++i) src[i] = -target_[i] - 3;
    for (std::size_t j = 0; j < source_.size(); ++j) tgt[j] = -source_[j] - 3;
    Morphism d(field_, std::move(src), std::move(tgt));
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) d.set(j, i, at(i, j));
    return d;
  }

  // Composition this . o  (o : E -> G, this : G -> H).
  Morphism compose(const Morphism& o) const {
    if (o.target_ != source_)
      fail("ShapeMismatch", "composition twist mismatch: " + twist_list_str(o.target_) +
                                " vs " + twist_list_str(source_));
    Morphism r(field_, o.source_, target_);
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t k = 0; k < o.cols(); ++k) {
        FormT acc = FormT::zero(field_, std::max(0, r.entry_degree(i, k)));
        for (std::size_t j = 0; j < cols(); ++j) {
          if (at(i, j).is_zero() || o.at(j, k).is_zero()) continue;
          auto prod = at(i, j) * o.at(j, k);
          acc = acc.is_zero() ? prod : acc + prod;
        }
        r.set(i, k, std::move(acc));
      }
    return r;
  }

  Morphism submatrix(const std::vector<std::size_t>& row_ids,
                     const std::vector<std::size_t>& col_ids) const {
    TwistList src, tgt;
    for (auto j : col_ids) src.push_back(source_[j]);
    for (auto i : row_ids) tgt.push_back(target_[i]);
    Morphism s(field_, std::move(src), std::move(tgt));
    for (std::size_t i = 0; i < row_ids.size(); ++i)
      for (std::size_t j = 0; j < col_ids.size(); ++j) s.set(i, j, at(row_ids[i], col_ids[j]));
    return s;
  }

private:
  F field_;
  TwistList source_, target_;
  std::vector<FormT> entries_;
};

template <class F>
Morphism<F> identity_morphism(const F& K, const TwistList& tw) {
  Morphism<F> m(K, tw, tw);
  for (std::size_t i = 0; i < tw.size(); ++i) m.set(i, i, Form<F>::constant(K, K.one()));
  return m;
}

template <class F>
Morphism<F> morphism_combine(const Morphism<F>& a, const Morphism<F>& b, bool subtract) {
  if (a.source() != b.source() || a.target() != b.target())
    fail("ShapeMismatch", "morphism sum shape mismatch");
  Morphism<F> r(a.field(), a.source(), a.target());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& x = a.at(i, j);
      const auto& y = b.at(i, j);
      if (x.is_zero() && y.is_zero()) continue;
      if (x.is_zero())
        r.set(i, j, subtract ? -y : y);
      else if (y.is_zero())
        r.set(i, j, x);
      else
        r.set(i, j, subtract ? x - y : x + y);
    }
  return r;
}

template <class F>
Morphism<F> morphism_add(const Morphism<F>& a, const Morphism<F>& b) {
  return morphism_combine(a, b, false);
}

template <class F>
Morphism<F> morphism_sub(const Morphism<F>& a, const Morphism<F>& b) {
  return morphism_combine(a, b, true);
}

template <class F>
bool morphism_is_zero(const Morphism<F>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) return false;
  return true;
}

struct TwistGroup {
  int twist = 0;
  std::size_t mult = 0;
};

inline std::vector<TwistGroup> group_twists(const TwistList& tw) {
  std::vector<TwistGroup> groups;
  for (int t : tw) {
    if (!groups.empty() && groups.back().twist == t) {
      ++groups.back().mult;
      continue;
    }
    for (const auto& g : groups)
      if (g.twist == t) fail("BadTwistList", "twist list groups must be consecutive");
    groups.push_back({t, 1});
  }
  return groups;
}

// Inverse of an automorphism of (+)O(a_j): invert the scalar diagonal
// blocks, then expand the Neumann series of the nilpotent off-diagonal part.
template <class F>
Morphism<F> invert_aut(const Morphism<F>& nu) {
  if (nu.source() != nu.target()) fail("ShapeMismatch", "invert_aut needs an endomorphism");
  const F& K = nu.field();
  const TwistList& tw = nu.source();
  auto groups = group_twists(tw);
  // D^{-1}: blockwise inverse of the degree-0 diagonal blocks
  Morphism<F> dinv(K, tw, tw);
  std::size_t off = 0;
  for (const auto& g : groups) {
    Mat<F> block(K, g.mult, g.mult);
    for (std::size_t i = 0; i < g.mult; ++i)
      for (std::size_t j = 0; j < g.mult; ++j)
        block.at(i, j) = nu.at(off + i, off + j).coeff(Mono{});
    if (rank(block) != g.mult)
      fail("SingularGroupElement", "diagonal block of the automorphism is singular");
    Mat<F> inv(K, g.mult, g.mult);
    for (std::size_t c = 0; c < g.mult; ++c) {
      std::vector<typename F::Elem> e(g.mult, K.zero());
      e[c] = K.one();
      auto x = solve(block, e);
      for (std::size_t r2 = 0; r2 < g.mult; ++r2) inv.at(r2, c) = (*x)[r2];
    }
    for (std::size_t i = 0; i < g.mult; ++i)
      for (std::size_t j = 0; j < g.mult; ++j)
        if (!K.is_zero(inv.at(i, j)))
          dinv.set(off + i, off + j, Form<F>::constant(K, inv.at(i, j)));
    off += g.mult;
  }
  // N = nu - D, X = D^{-1} N nilpotent
  Morphism<F> d(K, tw, tw);
  off = 0;
  for (const auto& g : groups) {
    for (std::size_t i = 0; i < g.mult; ++i)
      for (std::size_t j = 0; j < g.mult; ++j) d.set(off + i, off + j, nu.at(off + i, off + j));
    off += g.mult;
  }
  auto X = dinv.compose(morphism_sub(nu, d));
  Morphism<F> neg_X(K, tw, tw);
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t j = 0; j < X.cols(); ++j)
      if (!X.at(i, j).is_zero()) neg_X.set(i, j, -X.at(i, j));
  // (I + X)^{-1} = I - X + X^2 - ... , finite since X raises the twist
  Morphism<F> series = identity_morphism(K, tw);
  Morphism<F> term = neg_X;
  while (!morphism_is_zero(term)) {
    series = morphism_add(series, term);
    term = term.compose(neg_X);
  }
  return series.compose(dinv);
}

struct DegreeViolation {
  std::size_t row = 0, col = 0;
  int expected = 0;
  int found = 0;
};

// Degree-homogeneity check. With Morphism construction going through set()
// this cannot fail for values built in-process; it guards data read from
// JSON documents assembled elsewhere.
template <class F>
std::optional<DegreeViolation> validate(const Morphism<F>& phi) {
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t j = 0; j < phi.cols(); ++j) {
      int want = phi.entry_degree(i, j);
      const auto& f = phi.at(i, j);
      if (want < 0 && !f.is_zero()) return DegreeViolation{i, j, want, f.degree()};
      if (!f.is_zero() && f.degree() != want) return DegreeViolation{i, j, want, f.degree()};
    }
  return std::nullopt;
}

// Exact determinant by cofactor expansion (shapes in scope are at most 4x4).
template <class F>
Form<F> determinant(const Morphism<F>& phi) {
  if (phi.rows() != phi.cols()) fail("NotSquare", "determinant of a non-square morphism");
  const F& K = phi.field();
  std::size_t n = phi.rows();
  long deg = 0;
  for (int b : phi.target()) deg += b;
  for (int a : phi.source()) deg -= a;

  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), 0);
  // recursive expansion along the first remaining row
  std::function<Form<F>(std::size_t, std::vector<std::size_t>&)> det_rec =
      [&](std::size_t row, std::vector<std::size_t>& cs) -> Form<F> {
    if (cs.size() == 1) return phi.at(row, cs[0]);
    int d = 0;
    for (std::size_t i = row; i < n; ++i) d += phi.target()[i];
    for (auto c : cs) d -= phi.source()[c];
    Form<F> acc = Form<F>::zero(K, std::max(0, d));
    for (std::size_t t = 0; t < cs.size(); ++t) {
      const auto& e = phi.at(row, cs[t]);
      if (e.is_zero()) continue;
      std::vector<std::size_t> rest;
      rest.reserve(cs.size() - 1);
      for (std::size_t u = 0; u < cs.size(); ++u)
        if (u != t) rest.push_back(cs[u]);
      auto minor = det_rec(row + 1, rest);
      if (minor.is_zero()) continue;
      auto term = e * minor;
      if (t % 2) term = -term;
      acc = acc.is_zero() ? term : acc + term;
    }
    return acc;
  };
  auto d = det_rec(0, cols);
  if (!d.is_zero() && d.degree() != deg) fail("Internal", "determinant degree bookkeeping broke");
  return d;
}

// All maximal minors (size min(rows, cols)), ordered by the choice of the
// complementary index set in lexicographic order.
template <class F>
std::vector<Form<F>> maximal_minors(const Morphism<F>& phi) {
  std::size_t n = std::min(phi.rows(), phi.cols());
  std::size_t big = std::max(phi.rows(), phi.cols());
  bool wide = phi.cols() > phi.rows();
  std::vector<Form<F>> out;
  std::vector<std::size_t> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  while (true) {
    out.push_back(wide ? determinant(phi.submatrix(all, pick))
                       : determinant(phi.submatrix(pick, all)));
    int i = static_cast<int>(n) - 1;
    while (i >= 0 && pick[i] == big - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (std::size_t j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

// Injectivity as a morphism of sheaves. Square: nonzero determinant.
// More columns than rows: never injective. Fewer: some maximal minor nonzero.
template <class F>
bool is_injective(const Morphism<F>& phi) {
  if (phi.cols() > phi.rows()) return false;
  if (phi.rows() == phi.cols()) return !determinant(phi).is_zero();
  auto minors = maximal_minors(phi);
  return std::any_of(minors.begin(), minors.end(), [](const auto& f) { return !f.is_zero(); });
}

} // namespace psl
