#pragma once

#include "psl/morphism.hpp"

namespace psl {

// Validated presentation F = coker(phi) of a one-dimensional sheaf:
// phi is square, injective, and the multiplicity r is positive.
// The support curve is the determinant (degree r).
template <class F>
class Presentation {
public:
  explicit Presentation(Morphism<F> phi)
      : phi_(std::move(phi)), support_(determinant(phi_)) {
    auto [r, chi] = phi_.hilbert_polynomial();
    if (r <= 0) fail("BadPresentation", "multiplicity must be positive, got " + std::to_string(r));
    if (support_.is_zero())
      fail("NotInjective", "presentation matrix has vanishing determinant");
    r_ = r;
    chi_ = chi;
  }

  const Morphism<F>& phi() const { return phi_; }
  const F& field() const { return phi_.field(); }
  long multiplicity() const { return r_; }
  long chi() const { return chi_; }
  const Form<F>& support_curve() const { return support_; }

  Presentation twist(int n) const { return Presentation(phi_.twist(n)); }
  Presentation dualize() const { return Presentation(phi_.dualize()); }

private:
  Morphism<F> phi_;
  Form<F> support_;
  long r_ = 0, chi_ = 0;
};

// 0 -> O(d - deg f) -> O(d) -> O_C(d) -> 0 for the curve C = {f = 0}.
// For a quartic f this is the O_C(1) family at d = 1 (and O_C at d = 0).
template <class F>
Presentation<F> twisted_structure_sheaf(const Form<F>& f, int d) {
  if (f.is_zero()) fail("ZeroForm", "structure sheaf of the zero form");
  if (f.degree() < 1) fail("BadDegree", "support curve must have positive degree");
  Morphism<F> phi(f.field(), {d - f.degree()}, {d});
  phi.set(0, 0, f);
  return Presentation<F>(phi);
}

// The quartic case of the above.
template <class F>
Presentation<F> make_OC(const Form<F>& f, int d) {
  if (!f.is_zero() && f.degree() != 4) fail("DegreeMismatch", "make_OC expects a quartic");
  return twisted_structure_sheaf(f, d);
}

// The middle-stratum normal form on 2O(-2) + O(-1) -> O(-1) + 2O:
//   [ X1   X2   0  ]
//   [ q11  q12  Y1 ]
//   [ q21  q22  Y2 ]
// with {X1, X2} and {Y1, Y2} linearly independent pairs of one-forms.
template <class F>
Morphism<F> normal_form_42(const Form<F>& X1, const Form<F>& X2, const Form<F>& Y1,
                           const Form<F>& Y2, const std::array<Form<F>, 4>& quadrics) {
  if (!linearly_independent<F>({X1, X2}))
    fail("DependentForms", "X1, X2 must be linearly independent");
  if (!linearly_independent<F>({Y1, Y2}))
    fail("DependentForms", "Y1, Y2 must be linearly independent");
  Morphism<F> phi(X1.field(), {-2, -2, -1}, {-1, 0, 0});
  phi.set(0, 0, X1);
  phi.set(0, 1, X2);
  phi.set(1, 0, quadrics[0]);
  phi.set(1, 1, quadrics[1]);
  phi.set(1, 2, Y1);
  phi.set(2, 0, quadrics[2]);
  phi.set(2, 1, quadrics[3]);
  phi.set(2, 2, Y2);
  return phi;
}

// Projective point (p0 : p1 : p2).
template <class F>
struct Point {
  std::array<typename F::Elem, 3> coords;
};

// Parameters of the fiber normal forms: the 2x2 submatrix
// [alpha*X2^2, q12; q21, beta*X1^2] (distinct points) respectively
// [alpha*X2^2, q12; q21, beta*X2^2] (equal points). q12 and q21 are given by
// coefficients in the adapted quadric basis X1^2, X1*X2, X1*Z, X2^2, X2*Z, Z^2;
// the Z^2 coefficient of q12 is forced to zero.
template <class F>
struct FiberParams {
  typename F::Elem alpha, beta;
  std::array<typename F::Elem, 6> q12; // q12[5] (Z^2 coefficient) must be zero
  std::array<typename F::Elem, 6> q21;
};

// Adapted linear frame for the fiber constructions: Z vanishes at both
// points, X1 at P1, X2 at P2; for P1 = P2 the triple (X1, X2, Z) is a basis
// of the linear forms. `equal` flags the coincident-point case.
template <class F>
struct FiberFrame {
  Form<F> X1, X2, Z;
  bool equal = false;
};

template <class F>
FiberFrame<F> fiber_frame(const F& K, const Point<F>& P1, const Point<F>& P2) {
  Mat<F> pts(K, 2, 3);
  for (int v = 0; v < 3; ++v) {
    pts.at(0, v) = P1.coords[v];
    pts.at(1, v) = P2.coords[v];
  }
  Mat<F> row1(K, 1, 3), row2(K, 1, 3);
  for (int v = 0; v < 3; ++v) {
    row1.at(0, v) = P1.coords[v];
    row2.at(0, v) = P2.coords[v];
  }
  if (rank(row1) == 0 || rank(row2) == 0)
    fail("DegeneratePoint", "point coordinates are all zero");
  auto as_form = [&](const Subspace<F>& s, std::size_t i) {
    return Form<F>::linear(K, {s.basis().at(i, 0), s.basis().at(i, 1), s.basis().at(i, 2)});
  };
  FiberFrame<F> fr{Form<F>::zero(K, 1), Form<F>::zero(K, 1), Form<F>::zero(K, 1), false};
  if (rank(pts) == 2) {
    auto zline = kernel_basis(pts); // 1-dimensional: the line through P1, P2
    fr.Z = as_form(zline, 0);
    auto v1 = kernel_basis(row1);
    auto v2 = kernel_basis(row2);
    fr.X1 = linearly_independent<F>({as_form(v1, 0), fr.Z}) ? as_form(v1, 0) : as_form(v1, 1);
    fr.X2 = linearly_independent<F>({as_form(v2, 0), fr.Z}) ? as_form(v2, 0) : as_form(v2, 1);
  } else {
    fr.equal = true;
    auto v1 = kernel_basis(row1);
    fr.Z = as_form(v1, 0);
    fr.X1 = as_form(v1, 1);
    for (int v = 0; v < 3; ++v) {
      auto cand = Form<F>::variable(K, v);
      if (linearly_independent<F>({fr.X1, cand, fr.Z})) {
        fr.X2 = cand;
        break;
      }
    }
  }
  return fr;
}

// Fiber matrices of the delta map over a point pair (P1, P2), on
// 2O(-2) + O(-1) -> O(-1) + 2O:
//   [ X1           Z            0  ]        [ X1           Z            0  ]
//   [ alpha*X2^2   q12          Z  ]   or   [ alpha*X2^2   q12          Z  ]
//   [ q21          beta*X1^2    X2 ]        [ q21          beta*X2^2    X1 ]
// (left: distinct points; right: P1 = P2). q12, q21 are expanded in the
// adapted quadric basis X1^2, X1*X2, X1*Z, X2^2, X2*Z, Z^2, with the Z^2
// term of q12 required to vanish.
template <class F>
Morphism<F> fiber_normal_form(const F& K, const Point<F>& P1, const Point<F>& P2,
                            const FiberParams<F>& params) {
  if (!K.is_zero(params.q12[5]))
    fail("BadParams", "q12 must have no Z^2 term in the adapted basis");
  auto fr = fiber_frame(K, P1, P2);
  std::array<Form<F>, 6> qb = {fr.X1 * fr.X1, fr.X1 * fr.X2, fr.X1 * fr.Z,
                               fr.X2 * fr.X2, fr.X2 * fr.Z, fr.Z * fr.Z};
  auto expand = [&](const std::array<typename F::Elem, 6>& c) {
    Form<F> q = Form<F>::zero(K, 2);
    for (int t = 0; t < 6; ++t) q = q + qb[t].scaled(c[t]);
    return q;
  };
  Morphism<F> phi(K, {-2, -2, -1}, {-1, 0, 0});
  phi.set(0, 0, fr.X1);
  phi.set(0, 1, fr.Z);
  phi.set(1, 0, qb[3].scaled(params.alpha));
  phi.set(1, 1, expand(params.q12));
  phi.set(1, 2, fr.Z);
  phi.set(2, 0, expand(params.q21));
  phi.set(2, 1, (fr.equal ? qb[3] : qb[0]).scaled(params.beta));
  phi.set(2, 2, fr.equal ? fr.X1 : fr.X2);
  return phi;
}

} // namespace psl
