#pragma once

#include "psl/cohomology.hpp"
#include "psl/stability.hpp"

namespace psl {

// One row of the stratification tables of M(4,chi), 0 < chi <= 4: the
// cohomology triple (h0(F(-1)), h1(F), h0(F (x) Omega^1(1))), the shape of
// the canonical resolution and the codimension of the stratum.
struct StratumDescriptor {
  std::string id;             // "X0(4,1)", ...
  long chi = 0;               // normalized Euler characteristic, in (0, 4]
  int index = 0;              // position within M(4,chi)
  std::array<long, 3> triple{};
  TwistList source, target;
  long codim = 0;
  // descriptive metadata only, never used as a predicate
  std::string note;
};

inline const std::vector<StratumDescriptor>& stratum_table() {
  static const std::vector<StratumDescriptor> rows = {
      {"X0(4,1)", 1, 0, {0, 0, 0}, {-2, -2, -2}, {-1, -1, 0}, 0,
       "duals of the X0(4,3) members; generic member is a kernel of O_C(2) ->> O_Z, "
       "Z of length 3 off a line"},
      {"X1(4,1)", 1, 1, {0, 1, 1}, {-3, -1}, {0, 0}, 2,
       "kernels of O_C(1) ->> O_P for a point P on a quartic C"},
      {"X0(4,2)", 2, 0, {0, 0, 0}, {-2, -2}, {0, 0}, 0,
       "cokernels of quadric 2x2 matrices with independent rows and columns"},
      {"X1(4,2)", 2, 1, {0, 0, 1}, {-2, -2, -1}, {-1, 0, 0}, 1,
       "generic member is O_C(1)(P-Q) for distinct points P, Q on a smooth quartic"},
      {"X2(4,2)", 2, 2, {1, 1, 3}, {-3}, {1}, 3, "twisted structure sheaves O_C(1)"},
      {"X0(4,3)", 3, 0, {0, 0, 2}, {-2, -1, -1}, {0, 0, 0}, 0,
       "cokernel is torsion free (= I_Z(2), Z of length 3 off a line) exactly when the "
       "maximal minors of the linear block share no linear factor"},
      {"X1(4,3)", 3, 1, {1, 0, 3}, {-2, -2}, {-1, 1}, 2,
       "duals of the X1(4,1) members"},
      {"X0(4,4)", 4, 0, {0, 0, 4}, {-1, -1, -1, -1}, {0, 0, 0, 0}, 0,
       "theta-divisor complement; coker not stable iff a block reduction exists"},
      {"X1(4,4)", 4, 1, {1, 0, 4}, {-2, -1}, {0, 1}, 1,
       "extensions of a length-2 structure sheaf by O_C(1); stable iff phi12 divides "
       "neither phi11 nor phi22"},
  };
  return rows;
}

inline const StratumDescriptor& stratum_by_id(const std::string& id) {
  for (const auto& row : stratum_table())
    if (row.id == id) return row;
  fail("NoSuchStratum", "unknown stratum id '" + id + "'");
}

inline const StratumDescriptor* stratum_lookup(long chi, const std::array<long, 3>& triple) {
  for (const auto& row : stratum_table())
    if (row.chi == chi && row.triple == triple) return &row;
  return nullptr;
}

// Classification of a presentation against the tables. `matched == false`
// (NoMatchingStratum) is a first-class outcome: it would falsify a table row
// and is surfaced, never swallowed.
struct Classification {
  long r = 0;
  long chi_raw = 0;
  long chi_norm = 0;
  int normalizing_twist = 0;
  std::array<long, 3> triple{};
  CohomologyTable table;
  bool matched = false;
  std::string stratum_id;
  long codim = -1;
  bool shape_match = false;
};

template <class F>
Classification classify(const Presentation<F>& pres) {
  Classification c;
  c.r = pres.multiplicity();
  c.chi_raw = pres.chi();
  if (c.r != 4)
    fail("UnsupportedMultiplicity",
         "classification tables cover multiplicity 4, got r = " + std::to_string(c.r));
  // twist chi into (0, 4]
  int n = 0;
  long chi = c.chi_raw;
  while (chi <= 0) {
    chi += 4;
    ++n;
  }
  while (chi > 4) {
    chi -= 4;
    --n;
  }
  c.normalizing_twist = n;
  c.chi_norm = chi;
  Presentation<F> norm = n == 0 ? pres : pres.twist(n);
  CohomologyEngine<F> eng(norm);
  c.table = eng.table();
  c.triple = {c.table.h0_Fm1, c.table.h1_F, c.table.h0_FOmega};
  const StratumDescriptor* row = stratum_lookup(chi, c.triple);
  if (!row) return c; // NoMatchingStratum
  c.matched = true;
  c.stratum_id = row->id;
  c.codim = row->codim;
  TwistList src = norm.phi().source(), tgt = norm.phi().target();
  TwistList esrc = row->source, etgt = row->target;
  std::sort(src.begin(), src.end());
  std::sort(tgt.begin(), tgt.end());
  std::sort(esrc.begin(), esrc.end());
  std::sort(etgt.begin(), etgt.end());
  c.shape_match = (src == esrc && tgt == etgt);
  return c;
}

// Duality pairing on the table rows: F -> F^D(1) swaps M(4,1) and M(4,3)
// strata of equal index and fixes the chi = 2, 4 rows. An involution.
inline const StratumDescriptor& duality_stratum_map(const StratumDescriptor& row) {
  long dual_chi = row.chi == 1 ? 3 : row.chi == 3 ? 1 : row.chi;
  for (const auto& r : stratum_table())
    if (r.chi == dual_chi && r.index == row.index) return r;
  fail("Internal", "duality image missing for " + row.id);
}

// ---------------------------------------------------------------------------
// Morphism-space bookkeeping

inline long dim_hom(const TwistList& src, const TwistList& tgt) {
  long d = 0;
  for (int b : tgt)
    for (int a : src) d += h_line_bundle(0, b - a);
  return d;
}

inline long dim_aut(const TwistList& tw) {
  auto groups = group_twists(tw);
  long d = 0;
  for (const auto& gj : groups)
    for (const auto& gk : groups)
      if (gj.twist >= gk.twist)
        d += static_cast<long>(gj.mult) * static_cast<long>(gk.mult) *
             h_line_bundle(0, gj.twist - gk.twist);
  return d;
}

// dim Hom - dim G against 17 - codim, with G = (Aut x Aut)/C^*.
struct DimensionAudit {
  std::string stratum_id;
  long dim_hom = 0;
  long dim_aut_source = 0;
  long dim_aut_target = 0;
  long dim_group = 0;
  long quotient_dim = 0;
  long expected = 0;
  bool ok = false;
};

inline DimensionAudit stratum_dimension_audit(const StratumDescriptor& row) {
  DimensionAudit a;
  a.stratum_id = row.id;
  a.dim_hom = dim_hom(row.source, row.target);
  a.dim_aut_source = dim_aut(row.source);
  a.dim_aut_target = dim_aut(row.target);
  a.dim_group = a.dim_aut_source + a.dim_aut_target - 1;
  a.quotient_dim = a.dim_hom - a.dim_group;
  a.expected = 17 - row.codim;
  a.ok = (a.quotient_dim == a.expected);
  return a;
}

// ---------------------------------------------------------------------------
// The Delta map and the tau group map (4.3)

// Element of G = Aut(2O(-2) + O(-1)) x Aut(O(-1) + 2O) in the coordinates
// of 4.3: nu_target = [[alpha, 0], [phi, A]], nu_source = [[B, 0], [psi, beta]]
// with alpha, beta scalars, A, B in GL(2), phi a column and psi a row of
// one-forms.
template <class F>
struct GroupElement42 {
  typename F::Elem alpha, beta;
  Mat<F> A, B;
  std::array<Form<F>, 2> phi_part;
  std::array<Form<F>, 2> psi_part;

  Morphism<F> target_aut(const F& K) const {
    Morphism<F> nu(K, {-1, 0, 0}, {-1, 0, 0});
    nu.set(0, 0, Form<F>::constant(K, alpha));
    for (int i = 0; i < 2; ++i) {
      nu.set(1 + i, 0, phi_part[i]);
      for (int j = 0; j < 2; ++j)
        if (!K.is_zero(A.at(i, j))) nu.set(1 + i, 1 + j, Form<F>::constant(K, A.at(i, j)));
    }
    return nu;
  }

  Morphism<F> source_aut(const F& K) const {
    Morphism<F> nu(K, {-2, -2, -1}, {-2, -2, -1});
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j)
        if (!K.is_zero(B.at(i, j))) nu.set(i, j, Form<F>::constant(K, B.at(i, j)));
      nu.set(2, i, psi_part[i]);
    }
    nu.set(2, 2, Form<F>::constant(K, beta));
    return nu;
  }
};

// tau(nu_1, nu_2) = alpha beta^{-1} A B^{-1} acting on 2x2 quadric matrices
// by q -> g2 q g1^{-1} with (g1, g2) = (B, alpha/beta * A).
template <class F>
std::pair<Mat<F>, Mat<F>> tau_group_map(const F& K, const GroupElement42<F>& g) {
  if (K.is_zero(g.alpha) || K.is_zero(g.beta) || rank(g.A) != 2 || rank(g.B) != 2)
    fail("SingularGroupElement", "tau needs alpha, beta nonzero and A, B invertible");
  auto scale = K.div(g.alpha, g.beta);
  Mat<F> g2(K, 2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g2.at(i, j) = K.mul(scale, g.A.at(i, j));
  return {g.B, g2};
}

// Delta(w) = alpha Q - Y X as a morphism 2O(-2) -> 2O.
template <class F>
Morphism<F> delta_map(const Morphism<F>& w) {
  if (w.source() != TwistList{-2, -2, -1} || w.target() != TwistList{-1, 0, 0})
    fail("ShapeMismatch", "delta_map expects 2O(-2)+O(-1) -> O(-1)+2O");
  const F& K = w.field();
  auto alpha = w.at(0, 2).coeff(Mono{});
  Morphism<F> q(K, {-2, -2}, {0, 0});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      auto term = w.at(1 + i, j).scaled(alpha) - w.at(1 + i, 2) * w.at(0, j);
      q.set(i, j, std::move(term));
    }
  return q;
}

// The tau action on a 2x2 quadric matrix: g2 q g1^{-1}, exact.
template <class F>
Morphism<F> tau_apply(const F& K, const std::pair<Mat<F>, Mat<F>>& tau, const Morphism<F>& q) {
  Morphism<F> g1(K, {-2, -2}, {-2, -2}), g2(K, {0, 0}, {0, 0});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (!K.is_zero(tau.first.at(i, j)))
        g1.set(i, j, Form<F>::constant(K, tau.first.at(i, j)));
      if (!K.is_zero(tau.second.at(i, j)))
        g2.set(i, j, Form<F>::constant(K, tau.second.at(i, j)));
    }
  return g2.compose(q).compose(invert_aut(g1));
}

// g . w = nu_target o w o nu_source^{-1}.
template <class F>
Morphism<F> group_apply_42(const F& K, const GroupElement42<F>& g, const Morphism<F>& w) {
  return g.target_aut(K).compose(w).compose(invert_aut(g.source_aut(K)));
}

} // namespace psl
