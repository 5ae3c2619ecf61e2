#pragma once

#include <optional>
#include <variant>

#include "psl/morphism.hpp"

namespace psl {

// Stable / strictly semistable / unstable, plus the two weaker outcomes the
// G-action tests can actually certify: Semistable leaves the stable-versus-
// strict distinction open (exact-list mode), NoInstabilityFound is the
// one-sided monte-carlo pass.
enum class Stab { Stable, StrictlySemistable, Semistable, NoInstabilityFound, Unstable };

inline std::string stab_name(Stab s) {
  switch (s) {
    case Stab::Stable: return "stable";
    case Stab::StrictlySemistable: return "strictly_semistable";
    case Stab::Semistable: return "semistable";
    case Stab::NoInstabilityFound: return "no_instability_found";
    case Stab::Unstable: return "unstable";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Kronecker modules

// tau : C^m (x) L -> C^n stored as q = dim L scalar slices of shape n x m.
template <class F>
struct KroneckerModule {
  F field;
  std::size_t m = 0, n = 0;
  std::vector<Mat<F>> slices;

  KroneckerModule(F K, std::size_t m_, std::size_t n_, std::size_t q)
      : field(K), m(m_), n(n_), slices(q, Mat<F>(K, n_, m_)) {}
};

// The module of a morphism mO(a) -> nO(b): L = Hom(O(a), O(b))^*, slices
// indexed by the degree-(b-a) monomial basis, slice_t(i,j) = coefficient of
// monomial t in phi_ij.
template <class F>
KroneckerModule<F> kronecker_of(const Morphism<F>& phi) {
  int a = phi.source()[0], b = phi.target()[0];
  for (int s : phi.source())
    if (s != a) fail("ShapeMismatch", "kronecker_of needs a uniform source twist");
  for (int t : phi.target())
    if (t != b) fail("ShapeMismatch", "kronecker_of needs a uniform target twist");
  if (b < a) fail("ShapeMismatch", "kronecker_of needs b >= a");
  auto basis = monomial_basis(b - a);
  KroneckerModule<F> tau(phi.field(), phi.cols(), phi.rows(), basis.size());
  for (std::size_t t = 0; t < basis.size(); ++t)
    for (std::size_t i = 0; i < phi.rows(); ++i)
      for (std::size_t j = 0; j < phi.cols(); ++j)
        tau.slices[t].at(i, j) = phi.at(i, j).coeff(basis[t]);
  return tau;
}

template <class F>
struct KroneckerWitness {
  Subspace<F> H, K;
};

template <class F>
struct KroneckerVerdict {
  Stab status = Stab::Stable;
  std::optional<KroneckerWitness<F>> witness;
};

// Minimal K for a given H: the span of all slice images of H.
template <class F>
Subspace<F> kronecker_span(const KroneckerModule<F>& tau, const Subspace<F>& H) {
  Mat<F> gens(tau.field, tau.slices.size() * H.dim(), tau.n);
  std::size_t r = 0;
  for (const auto& s : tau.slices)
    for (std::size_t t = 0; t < H.dim(); ++t) {
      std::vector<typename F::Elem> h(tau.m);
      for (std::size_t j = 0; j < tau.m; ++j) h[j] = H.basis().at(t, j);
      auto img = s.apply(h);
      for (std::size_t c = 0; c < tau.n; ++c) gens.at(r, c) = img[c];
      ++r;
    }
  return Subspace<F>::span_of(std::move(gens));
}

// Subspace slope criterion by exhaustive enumeration over a prime field: for every
// nonzero H, K = span(tau(H (x) L)) must satisfy dim K / dim H >= n / m
// (semistable) resp. > (stable, the trivial pair H = C^m, K = C^n excepted).
inline KroneckerVerdict<PrimeField> kronecker_semistable(
    const KroneckerModule<PrimeField>& tau, unsigned long budget = kDefaultSubspaceBudget) {
  const auto& K = tau.field;
  KroneckerVerdict<PrimeField> verdict;
  std::optional<KroneckerWitness<PrimeField>> equality;
  for (unsigned k = 1; k <= tau.m; ++k) {
    bool go_on = enumerate_subspaces(K, static_cast<unsigned>(tau.m), k,
        [&](const Subspace<PrimeField>& H) {
          auto Kmin = kronecker_span(tau, H);
          long lhs = static_cast<long>(tau.m) * static_cast<long>(Kmin.dim());
          long rhs = static_cast<long>(tau.n) * static_cast<long>(H.dim());
          if (lhs < rhs) {
            verdict.status = Stab::Unstable;
            verdict.witness = KroneckerWitness<PrimeField>{H, Kmin};
            return false;
          }
          if (lhs == rhs && !(H.dim() == tau.m && Kmin.dim() == tau.n) && !equality)
            equality = KroneckerWitness<PrimeField>{H, Kmin};
          return true;
        },
        budget);
    if (!go_on) return verdict;
  }
  if (equality) {
    verdict.status = Stab::StrictlySemistable;
    verdict.witness = equality;
  }
  return verdict;
}

// Witness soundness: recheck the span inclusion and the slope inequality.
inline bool verify_kronecker_witness(const KroneckerModule<PrimeField>& tau,
                                     const KroneckerWitness<PrimeField>& w, bool strict_fail) {
  if (w.H.dim() == 0) return false;
  auto Kmin = kronecker_span(tau, w.H);
  if (!w.K.contains(Kmin)) return false;
  long lhs = static_cast<long>(tau.m) * static_cast<long>(w.K.dim());
  long rhs = static_cast<long>(tau.n) * static_cast<long>(w.H.dim());
  return strict_fail ? lhs < rhs : lhs <= rhs;
}

// dim N(q, m, n) = qmn - m^2 - n^2 + 1 when x_q < m/n < 1/x_q, where x_q is
// the smallest root of X^2 - qX + 1; the open interval condition is the
// integer inequality m^2 + n^2 < qmn. Returns nullopt when the moduli space
// is empty or a point set.
inline std::optional<long> kronecker_moduli_dim(long q, long m, long n) {
  if (q < 1 || m < 1 || n < 1) fail("BadArgument", "kronecker_moduli_dim needs positive q, m, n");
  if (m * m + n * n >= q * m * n) return std::nullopt;
  return q * m * n - m * m - n * n + 1;
}

// All maximal minors of a 2-column, 3-row matrix of one-forms are nonzero.
// Equivalent to Kronecker stability of the module (checked in the tests).
template <class F>
bool minors_criterion_23(const Morphism<F>& phi) {
  if (phi.rows() != 3 || phi.cols() != 2)
    fail("ShapeMismatch", "minors_criterion_23 expects a 3x2 shape");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (!phi.at(i, j).is_zero() && phi.at(i, j).degree() != 1)
        fail("ShapeMismatch", "minors_criterion_23 expects linear entries");
  auto minors = maximal_minors(phi);
  return std::all_of(minors.begin(), minors.end(), [](const auto& f) { return !f.is_zero(); });
}

// Cokernel stability of an injective 4O(-1) -> 4O morphism: coker is not
// stable exactly when a block reduction exists, i.e. when the q = 3
// Kronecker module is not stable.
inline KroneckerVerdict<PrimeField> reducibility_44(const Morphism<PrimeField>& phi,
                                                    unsigned long budget = kDefaultSubspaceBudget) {
  if (phi.rows() != 4 || phi.cols() != 4 || phi.source() != TwistList{-1, -1, -1, -1} ||
      phi.target() != TwistList{0, 0, 0, 0})
    fail("ShapeMismatch", "reducibility_44 expects 4O(-1) -> 4O");
  return kronecker_semistable(kronecker_of(phi), budget);
}

// ---------------------------------------------------------------------------
// Polarized (semi)stability of morphisms between direct sums

// Positive rational weights with sum(lambda_i m_i) = sum(mu_j n_j) = 1.
struct Polarization {
  std::vector<mpq_class> lambdas, mus;

  void validate(const std::vector<TwistGroup>& src, const std::vector<TwistGroup>& tgt) const {
    if (lambdas.size() != src.size() || mus.size() != tgt.size())
      fail("MalformedPolarization", "polarization length does not match the twist grouping");
    mpq_class ls = 0, ms = 0;
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (lambdas[i] <= 0) fail("MalformedPolarization", "weights must be positive");
      ls += lambdas[i] * static_cast<long>(src[i].mult);
    }
    for (std::size_t j = 0; j < tgt.size(); ++j) {
      if (mus[j] <= 0) fail("MalformedPolarization", "weights must be positive");
      ms += mus[j] * static_cast<long>(tgt[j].mult);
    }
    if (ls != 1 || ms != 1)
      fail("MalformedPolarization", "weights must satisfy sum(lambda_i m_i) = sum(mu_j n_j) = 1");
  }
};

// The distinguished polarization family for the 2O(-2)+O(-1) -> O(-1)+2O shape.
inline Polarization polarization_42(const mpq_class& mu) {
  mpq_class a = (1 - mu) / 2;
  a.canonicalize();
  return Polarization{{a, mu}, {mu, a}};
}

template <class F>
struct GredWitness {
  std::vector<Subspace<F>> M, N;
  mpq_class lhs, rhs;
};

template <class F>
struct GredVerdict {
  Stab status = Stab::Stable;
  std::optional<GredWitness<F>> witness;
};

namespace detail {

// phi((+) E_i (x) M_i) contained in (+) F_j (x) N_j: every annihilator
// functional of every N_j kills the corresponding combination of entries.
template <class F>
bool maps_into(const Morphism<F>& phi, const std::vector<TwistGroup>& src,
               const std::vector<TwistGroup>& tgt, const std::vector<Subspace<F>>& M,
               const std::vector<std::optional<Subspace<F>>>& Nperp) {
  const F& K = phi.field();
  std::size_t col0 = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    std::size_t row0 = 0;
    for (std::size_t j = 0; j < tgt.size(); ++j) {
      if (Nperp[j]) {
        for (std::size_t u = 0; u < M[i].dim(); ++u)
          for (std::size_t x = 0; x < Nperp[j]->dim(); ++x) {
            int deg = tgt[j].twist - src[i].twist;
            Form<F> comb = Form<F>::zero(K, std::max(0, deg));
            for (std::size_t s = 0; s < src[i].mult; ++s)
              for (std::size_t t = 0; t < tgt[j].mult; ++t) {
                auto c = K.mul(M[i].basis().at(u, s), Nperp[j]->basis().at(x, t));
                if (K.is_zero(c)) continue;
                const auto& e = phi.at(row0 + t, col0 + s);
                if (e.is_zero()) continue;
                comb = comb + e.scaled(c);
              }
            if (!comb.is_zero()) return false;
          }
      }
      row0 += tgt[j].mult;
    }
    col0 += src[i].mult;
  }
  return true;
}

} // namespace detail

// G_red-(semi)stability with respect to sigma by exhaustive enumeration of
// subspace tuples over a prime field.
inline GredVerdict<PrimeField> gred_semistable(const Morphism<PrimeField>& phi,
                                               const Polarization& sigma,
                                               unsigned long budget = kDefaultSubspaceBudget) {
  const auto& K = phi.field();
  auto src = group_twists(phi.source());
  auto tgt = group_twists(phi.target());
  sigma.validate(src, tgt);

  std::vector<std::vector<Subspace<PrimeField>>> Ms(src.size()), Ns(tgt.size());
  mpz_class tuples = 1;
  for (std::size_t i = 0; i < src.size(); ++i) {
    for (unsigned k = 0; k <= src[i].mult; ++k)
      for (auto& s : all_subspaces(K, static_cast<unsigned>(src[i].mult), k, budget))
        Ms[i].push_back(std::move(s));
    tuples *= static_cast<long>(Ms[i].size());
  }
  for (std::size_t j = 0; j < tgt.size(); ++j) {
    for (unsigned k = 0; k <= tgt[j].mult; ++k)
      for (auto& s : all_subspaces(K, static_cast<unsigned>(tgt[j].mult), k, budget))
        Ns[j].push_back(std::move(s));
    tuples *= static_cast<long>(Ns[j].size());
  }
  if (tuples > budget)
    fail("BudgetExceeded", "subspace tuple enumeration needs " + tuples.get_str() +
                               " > budget " + std::to_string(budget));

  GredVerdict<PrimeField> verdict;
  std::optional<GredWitness<PrimeField>> equality;
  std::vector<std::size_t> idx(src.size() + tgt.size(), 0);
  while (true) {
    std::vector<Subspace<PrimeField>> M, N;
    for (std::size_t i = 0; i < src.size(); ++i) M.push_back(Ms[i][idx[i]]);
    for (std::size_t j = 0; j < tgt.size(); ++j) N.push_back(Ns[j][idx[src.size() + j]]);
    bool some_N_proper = false;
    for (std::size_t j = 0; j < tgt.size(); ++j)
      if (N[j].dim() < tgt[j].mult) some_N_proper = true;
    if (some_N_proper) {
      mpq_class lhs = 0, rhs = 0;
      for (std::size_t i = 0; i < src.size(); ++i)
        lhs += sigma.lambdas[i] * static_cast<long>(M[i].dim());
      for (std::size_t j = 0; j < tgt.size(); ++j)
        rhs += sigma.mus[j] * static_cast<long>(N[j].dim());
      bool trivial_zero = lhs == 0 && rhs == 0;
      if (lhs > rhs || (lhs == rhs && !trivial_zero && !equality) ) {
        std::vector<std::optional<Subspace<PrimeField>>> Nperp(tgt.size());
        for (std::size_t j = 0; j < tgt.size(); ++j)
          Nperp[j] = kernel_basis(N[j].basis());
        if (detail::maps_into(phi, src, tgt, M, Nperp)) {
          if (lhs > rhs) {
            verdict.status = Stab::Unstable;
            verdict.witness = GredWitness<PrimeField>{M, N, lhs, rhs};
            return verdict;
          }
          equality = GredWitness<PrimeField>{M, N, lhs, rhs};
        }
      }
    }
    // advance the odometer
    std::size_t d = 0;
    while (d < idx.size()) {
      std::size_t lim = d < src.size() ? Ms[d].size() : Ns[d - src.size()].size();
      if (++idx[d] < lim) break;
      idx[d++] = 0;
    }
    if (d == idx.size()) break;
  }
  if (equality) {
    verdict.status = Stab::StrictlySemistable;
    verdict.witness = equality;
  }
  return verdict;
}

// Witness soundness for gred verdicts.
inline bool verify_gred_witness(const Morphism<PrimeField>& phi, const Polarization& sigma,
                                const GredWitness<PrimeField>& w, bool strict_fail) {
  auto src = group_twists(phi.source());
  auto tgt = group_twists(phi.target());
  bool some_proper = false;
  for (std::size_t j = 0; j < tgt.size(); ++j)
    if (w.N[j].dim() < tgt[j].mult) some_proper = true;
  if (!some_proper) return false;
  std::vector<std::optional<Subspace<PrimeField>>> Nperp(tgt.size());
  for (std::size_t j = 0; j < tgt.size(); ++j) Nperp[j] = kernel_basis(w.N[j].basis());
  if (!detail::maps_into(phi, src, tgt, w.M, Nperp)) return false;
  mpq_class lhs = 0, rhs = 0;
  for (std::size_t i = 0; i < src.size(); ++i)
    lhs += sigma.lambdas[i] * static_cast<long>(w.M[i].dim());
  for (std::size_t j = 0; j < tgt.size(); ++j)
    rhs += sigma.mus[j] * static_cast<long>(w.N[j].dim());
  return strict_fail ? lhs > rhs : lhs >= rhs;
}

// ---------------------------------------------------------------------------
// G-semistability for the 2O(-2)+O(-1) -> O(-1)+2O shape

struct ConfigWitness {
  std::string config; // e.g. "(1,1)->(0,2)"
  std::string detail;
};

struct GVerdict {
  Stab status = Stab::Semistable;
  std::optional<ConfigWitness> witness;
  std::string note;
};

// Checks, over any field, the finite list of forbidden configurations that
// decides G-semistability here. A realized configuration destabilizes;
// if none is realized the morphism is G-semistable for every polarization
// ((1-mu)/2, mu, mu, (1-mu)/2) with 1/3 < mu < 1/2.
template <class F>
GVerdict g_semistable_42_exact(const Morphism<F>& phi) {
  if (phi.source() != TwistList{-2, -2, -1} || phi.target() != TwistList{-1, 0, 0})
    fail("ModeUnavailable", "exact-list mode is specific to 2O(-2)+O(-1) -> O(-1)+2O");
  const F& K = phi.field();

  auto dependent = [&](const Form<F>& a, const Form<F>& b) {
    return !linearly_independent<F>({a, b});
  };
  const auto& X1 = phi.at(0, 0);
  const auto& X2 = phi.at(0, 1);
  const auto& alpha = phi.at(0, 2);
  const auto& Y1 = phi.at(1, 2);
  const auto& Y2 = phi.at(2, 2);
  std::array<std::array<const Form<F>*, 2>, 2> Q = {{{&phi.at(1, 0), &phi.at(1, 1)},
                                                     {&phi.at(2, 0), &phi.at(2, 1)}}};
  GVerdict v;
  auto hit = [&](const std::string& cfg, const std::string& why) {
    v.status = Stab::Unstable;
    v.witness = ConfigWitness{cfg, why};
  };

  // (2,0)->(1,0): the quadric block vanishes
  if (Q[0][0]->is_zero() && Q[0][1]->is_zero() && Q[1][0]->is_zero() && Q[1][1]->is_zero()) {
    hit("(2,0)->(1,0)", "quadric block is zero");
    return v;
  }
  // (2,0)->(0,1): X row zero and the rows of Q scalar-dependent
  if (X1.is_zero() && X2.is_zero()) {
    // xi^T Q = 0 for some nonzero xi: rank of the stacked coefficient rows
    Mat<F> rows(K, 2, 2 * monomial_space_dim(2));
    for (int r = 0; r < 2; ++r) {
      auto v0 = Q[r][0]->coeff_vector();
      auto v1 = Q[r][1]->coeff_vector();
      for (std::size_t c = 0; c < v0.size(); ++c) {
        rows.at(r, c) = v0[c];
        rows.at(r, v0.size() + c) = v1[c];
      }
    }
    if (rank(rows) < 2) {
      hit("(2,0)->(0,1)", "X row vanishes and the quadric rows are dependent");
      return v;
    }
  }
  // (0,1)->(0,1): alpha = 0 and Y1, Y2 dependent
  if (alpha.is_zero() && dependent(Y1, Y2)) {
    hit("(0,1)->(0,1)", "alpha = 0 and Y1, Y2 are dependent");
    return v;
  }
  // (1,1)->(0,2): alpha = 0 and X1, X2 dependent
  if (alpha.is_zero() && dependent(X1, X2)) {
    hit("(1,1)->(0,2)", "alpha = 0 and X1, X2 are dependent");
    return v;
  }
  // (1,1)->(1,0): Y column zero and the columns of Q scalar-dependent
  if (Y1.is_zero() && Y2.is_zero()) {
    Mat<F> cols(K, 2, 2 * monomial_space_dim(2));
    for (int c = 0; c < 2; ++c) {
      auto v0 = Q[0][c]->coeff_vector();
      auto v1 = Q[1][c]->coeff_vector();
      for (std::size_t t = 0; t < v0.size(); ++t) {
        cols.at(c, t) = v0[t];
        cols.at(c, v0.size() + t) = v1[t];
      }
    }
    if (rank(cols) < 2) {
      hit("(1,1)->(1,0)", "Y column vanishes and the quadric columns are dependent");
      return v;
    }
  }
  // (m1,m2)->(0,0) for (m1,m2) != 0: a whole source summand maps to zero
  {
    Mat<F> colspace(K, 2, monomial_space_dim(1) + 2 * monomial_space_dim(2));
    for (int c = 0; c < 2; ++c) {
      auto vx = phi.at(0, c).coeff_vector();
      auto v1 = Q[0][c]->coeff_vector();
      auto v2 = Q[1][c]->coeff_vector();
      std::size_t off = 0;
      for (auto& val : vx) colspace.at(c, off++) = val;
      for (auto& val : v1) colspace.at(c, off++) = val;
      for (auto& val : v2) colspace.at(c, off++) = val;
    }
    if (rank(colspace) < 2) {
      hit("(1,0)->(0,0)", "a combination of the O(-2) columns vanishes");
      return v;
    }
    if (alpha.is_zero() && Y1.is_zero() && Y2.is_zero()) {
      hit("(0,1)->(0,0)", "the O(-1) column vanishes");
      return v;
    }
  }
  v.status = Stab::Semistable;
  v.note = "no forbidden configuration realized";
  return v;
}

// ---------------------------------------------------------------------------
// Divisibility stability for O(-2)+O(-1) -> O+O(1): with phi12 != 0 the
// cokernel is semistable, and stable iff phi12 divides neither phi11 nor phi22

struct DivisibilityVerdict {
  Stab status = Stab::Stable;
  std::string divisor_of; // "phi11", "phi22" or both, comma separated
};

template <class F>
DivisibilityVerdict divisibility_stability(const Morphism<F>& phi) {
  if (phi.source() != TwistList{-2, -1} || phi.target() != TwistList{0, 1})
    fail("ShapeMismatch", "divisibility_stability expects O(-2)+O(-1) -> O+O(1)");
  const auto& l = phi.at(0, 1);  // linear phi_12
  if (l.is_zero()) fail("OutOfStratum", "phi_12 = 0: not in the h0(F(-1)) = 1 stratum");
  DivisibilityVerdict v;
  std::string hits;
  if (divides(l, phi.at(0, 0))) hits = "phi11";
  if (divides(l, phi.at(1, 1))) hits += hits.empty() ? "phi22" : ",phi22";
  if (!hits.empty()) {
    v.status = Stab::StrictlySemistable;
    v.divisor_of = hits;
  }
  return v;
}

} // namespace psl
