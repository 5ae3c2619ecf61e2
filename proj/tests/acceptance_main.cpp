// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>

#include "psl/harness.hpp"

using namespace psl;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int number, const char* title, bool pass, double secs) {
  std::printf("[%s] criterion %d: %s (%.2fs)\n", pass ? "PASS" : "FAIL", number, title, secs);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

// 1. census over F7, 500 samples per row, 100% triple match, zero
//    NoMatchingStratum, under 2 minutes
void criterion_census() {
  Timer t;
  PrimeField F7(7);
  ScanConfig cfg;
  cfg.trials = 500;
  cfg.seed = 20260810;
  auto rep = census(F7, cfg);
  bool pass = rep["passed"].get<bool>() && rep["no_matching_stratum"].get<long>() == 0 &&
              rep["rows"].size() == stratum_table().size();
  for (const auto& row : rep["rows"]) {
    pass = pass && row["pass"].get<bool>() &&
           row["matches"].get<unsigned long>() == cfg.trials;
  }
  double secs = t.seconds();
  pass = pass && secs < 120.0;
  report(1, "table reproduction census (F7, 500 samples/row)", pass, secs);
}

// 2. duality: h^i(F) = h^{1-i}(F^D), tableau swap, involution; 200 samples
void criterion_duality() {
  Timer t;
  PrimeField F7(7);
  bool pass = true;
  int count = 0;
  while (count < 200) {
    const auto& row = stratum_table()[count % stratum_table().size()];
    Rng rng = Rng::substream(7002, count, 0);
    auto pres = sample_stratum(F7, row, rng);
    auto dual = pres.dualize();
    pass = pass && dual.phi().dualize() == pres.phi();
    CohomologyEngine<PrimeField> e(pres), ed(dual);
    pass = pass && e.h0(0) == ed.h1(0) && e.h1(0) == ed.h0(0);
    auto tb = e.table();
    auto td = CohomologyEngine<PrimeField>(dual.twist(1)).table();
    for (int j = 0; j < 3; ++j) {
      pass = pass && tb.bottom()[j] == td.top()[2 - j];
      pass = pass && tb.top()[j] == td.bottom()[2 - j];
    }
    ++count;
  }
  report(2, "duality suite (200 presentations, tableau swap exact)", pass, t.seconds());
}

// 3. dimension audit of every row, with the pinned counts
void criterion_dimensions() {
  Timer t;
  bool pass = true;
  for (const auto& row : stratum_table()) pass = pass && stratum_dimension_audit(row).ok;
  auto a44 = stratum_dimension_audit(stratum_by_id("X1(4,4)"));
  pass = pass && a44.dim_hom == 25 && a44.dim_group == 9 && a44.quotient_dim == 16;
  auto a41 = stratum_dimension_audit(stratum_by_id("X1(4,1)"));
  pass = pass && a41.dim_hom == 26 && a41.dim_group == 11 && a41.quotient_dim == 15 &&
         a41.expected == 17 - 2;
  report(3, "stratum dimension audit (all rows, 25-9=16, 26-11=15)", pass, t.seconds());
}

// 4. kronecker oracle equivalence and planted block reducibility.
// The first clause asserts the claimed equivalence between the nonzero-minors
// test and exhaustive Kronecker stability on 3x2 linear matrices. The two
// tests are provably inequivalent: [[x0,x0],[x1,x0],[x2,x0]] has all three
// maximal minors nonzero, yet the second column spans a subspace pair of
// dimensions (1,1), violating the slope bound 3/2. The clause is kept as
// stated and reports the observed disagreement rate instead of being
// weakened; stability does imply nonzero minors, and the disagreement never
// moves a sample across cohomology strata (see the census criterion).
void criterion_kronecker() {
  Timer t;
  bool pass = true;
  int disagreements = 0;

  PrimeField F3(3);
  for (int trial = 0; trial < 500; ++trial) {
    Rng rng = Rng::substream(7004, 0, trial);
    auto phi = random_morphism(F3, {-1, -1}, {0, 0, 0}, rng);
    bool minors = minors_criterion_23(phi);
    auto kv = kronecker_semistable(kronecker_of(phi));
    if (minors != (kv.status == Stab::Stable)) {
      ++disagreements;
      pass = false;
      // stability must still imply nonzero minors
      if (kv.status == Stab::Stable && !minors) {
        std::printf("  !! stable sample with a vanishing maximal minor (trial %d)\n", trial);
      }
    }
    if (kv.witness && !verify_kronecker_witness(kronecker_of(phi), *kv.witness,
                                                kv.status == Stab::Unstable))
      pass = false;
  }
  if (disagreements > 0)
    std::printf("  note: minors==stable disagreed on %d/500 F3 samples; every disagreement is\n"
                "        minors-nonzero-but-unstable (the minors test is necessary, not "
                "sufficient)\n",
                disagreements);

  PrimeField F2(2);
  for (int trial = 0; trial < 500; ++trial) {
    Rng rng = Rng::substream(7004, 1, trial);
    auto phi = random_morphism(F2, {-1, -1, -1, -1}, {0, 0, 0, 0}, rng);
    auto v = reducibility_44(phi);
    // verdict is invariant under random basis change
    auto g = random_invertible_matrix(F2, 4, rng);
    auto h = random_invertible_matrix(F2, 4, rng);
    auto tau = kronecker_of(phi);
    for (auto& s : tau.slices) s = g.mul(s).mul(h);
    if (kronecker_semistable(tau).status != v.status) pass = false;
    if (v.witness &&
        !verify_kronecker_witness(kronecker_of(phi), *v.witness, v.status == Stab::Unstable))
      pass = false;
  }

  // 100 planted reducible instances: block phi22 of size m = 1, 2, 3 after a
  // random change of bases; all must be detected as not stable
  int detected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng = Rng::substream(7004, 2, trial);
    std::size_t m = 1 + rng.below(3);
    Morphism<PrimeField> blk(F2, {-1, -1, -1, -1}, {0, 0, 0, 0});
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        bool upper_right = i < 4 - m && j >= 4 - m;
        if (!upper_right) blk.set(i, j, random_form(F2, 1, rng));
      }
    auto tau = kronecker_of(blk);
    auto g = random_invertible_matrix(F2, 4, rng);
    auto h = random_invertible_matrix(F2, 4, rng);
    for (auto& s : tau.slices) s = g.mul(s).mul(h);
    if (kronecker_semistable(tau).status != Stab::Stable) ++detected;
  }
  pass = pass && detected == 100;
  report(4, "kronecker oracle equivalence (500+500) and planted reducibility (100/100)", pass,
         t.seconds());
}

// 5. delta equivariance: 1000 pairs over F7 and 100 over Q, under 10 seconds
void criterion_delta() {
  Timer t;
  PrimeField F7(7);
  Rationals Q;
  auto r1 = delta_check(F7, 1000, 20260810);
  auto r2 = delta_check(Q, 100, 20260810);
  double secs = t.seconds();
  bool pass = r1["passed"].get<bool>() && r2["passed"].get<bool>() && secs < 10.0;
  report(5, "delta equivariance (1000 over F7, 100 over Q)", pass, secs);
}

// 6. vanishing scans: 10^4 samples per moduli space, zero violations of
//    the h1 <= 1, h1 = 0 off O_C(1), h0(F(-1)) <= 1 bounds
void criterion_vanishing() {
  Timer t;
  PrimeField F7(7);
  ScanConfig cfg;
  cfg.trials = 10000;
  cfg.seed = 20260810;
  auto rep = vanishing_scan(F7, cfg);
  double secs = t.seconds();
  bool pass = rep["passed"].get<bool>() && rep["violations"].empty() && secs < 300.0;
  report(6, "vanishing scans h1/h0(F(-1)) (10^4 samples per space)", pass, secs);
}

// 7. clifford scan: 10^4 samples per chi in {0,1,2,3}, zero violations,
//    equality only at O_C(1); both analytic equality cases confirmed
void criterion_clifford() {
  Timer t;
  PrimeField F7(7);
  ScanConfig cfg;
  cfg.trials = 10000;
  cfg.seed = 20260810;
  auto rep = clifford_scan(F7, cfg);
  bool pass = rep["passed"].get<bool>() && rep["violations"].empty();
  for (const auto& c : rep["analytic_cases"]) pass = pass && c["equality"].get<bool>();
  for (const auto& e : rep["equality_cases"]) pass = pass && e["allowed"].get<bool>();
  report(7, "clifford bound scan (10^4 samples per chi)", pass, t.seconds());
}

// 8. monad of F(-1) for generic F in M(4,1): 7O(-2) -> 10O(-1) -> 3O,
//    alternating chi = -3
void criterion_monad() {
  Timer t;
  PrimeField F7(7);
  bool pass = true;
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng = Rng::substream(7008, 0, trial);
    auto pres = sample_stratum(F7, stratum_by_id("X0(4,1)"), rng).twist(-1);
    auto m = CohomologyEngine<PrimeField>(pres).monad_check();
    pass = pass && m.terms[0] == std::array<long, 3>{0, 0, 0} &&
           m.terms[1] == std::array<long, 3>{7, 0, 0} &&
           m.terms[2] == std::array<long, 3>{0, 10, 0} &&
           m.terms[3] == std::array<long, 3>{0, 0, 3} && m.alternating_chi == -3 &&
           m.consistent;
  }
  report(8, "monad 7O(-2) -> 10O(-1) -> 3O for F(-1), chi = -3", pass, t.seconds());
}

// 9. moduli numerology
void criterion_numerology() {
  Timer t;
  bool pass = kronecker_moduli_dim(6, 2, 2) == 17 && kronecker_moduli_dim(3, 4, 4) == 17 &&
              kronecker_moduli_dim(3, 1, 2) == 2 && kronecker_moduli_dim(3, 2, 3) == 6;
  report(9, "kronecker moduli dimensions 17, 17, 2, 6", pass, t.seconds());
}

} // namespace

int main() {
  Timer total;
  criterion_census();
  criterion_duality();
  criterion_dimensions();
  criterion_kronecker();
  criterion_delta();
  criterion_vanishing();
  criterion_clifford();
  criterion_monad();
  criterion_numerology();
  std::printf("%d criterion(s) failed, total %.2fs\n", g_failures, total.seconds());
  return g_failures == 0 ? 0 : 1;
}
