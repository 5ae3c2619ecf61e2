#pragma once

#include "psl/json_io.hpp"
#include "psl/rng.hpp"

namespace psl {

inline constexpr int kMaxRejections = 100;

struct ScanConfig {
  FieldSpec field = FieldSpec::prime(7);
  unsigned long trials = 100;
  std::uint64_t seed = 1;
  std::vector<int> chi_list; // empty = scan default
  unsigned long budget = kDefaultSubspaceBudget;

  json to_json() const {
    json j;
    j["field"] = field_to_json(field);
    j["trials"] = trials;
    j["seed"] = seed;
    j["chi_list"] = chi_list;
    return j;
  }
};

// ---------------------------------------------------------------------------
// Stratum samplers: random members with each row's membership predicate
// enforced by rejection (each row predicate is an exact membership
// test, so accepted samples lie in the stratum by construction).

namespace detail {

template <class F>
bool block_minors_nonzero(const Morphism<F>& phi, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) {
  auto minors = maximal_minors(phi.submatrix(rows, cols));
  return std::all_of(minors.begin(), minors.end(), [](const auto& f) { return !f.is_zero(); });
}

// Scalar linear independence of the rows (resp. columns) of a form matrix,
// via the stacked coefficient vectors.
template <class F>
bool lines_independent(const Morphism<F>& phi, bool rows) {
  const F& K = phi.field();
  std::size_t lines = rows ? phi.rows() : phi.cols();
  std::size_t others = rows ? phi.cols() : phi.rows();
  std::size_t width = 0;
  for (std::size_t t = 0; t < others; ++t)
    width += monomial_space_dim(rows ? phi.entry_degree(0, t) : phi.entry_degree(t, 0));
  Mat<F> m(K, lines, width);
  for (std::size_t l = 0; l < lines; ++l) {
    std::size_t off = 0;
    for (std::size_t t = 0; t < others; ++t) {
      const auto& e = rows ? phi.at(l, t) : phi.at(t, l);
      auto v = e.coeff_vector();
      for (auto& c : v) m.at(l, off++) = c;
    }
  }
  return rank(std::move(m)) == lines;
}

} // namespace detail

template <class F>
Presentation<F> sample_stratum(const F& K, const StratumDescriptor& row, Rng& rng,
                               unsigned long budget = kDefaultSubspaceBudget) {
  std::string last_failure = "injective";
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    Morphism<F> phi(K, row.source, row.target);
    bool ok = true;
    if (row.id == "X1(4,2)") {
      // this normal form keeps a structural zero in the corner
      phi = random_morphism(K, row.source, row.target, rng);
      phi.set(0, 2, Form<F>::zero(K, 0));
    } else if (row.id == "X2(4,2)") {
      return make_OC(random_nonzero_form(K, 4, rng), 1);
    } else {
      phi = random_morphism(K, row.source, row.target, rng);
    }

    if (row.id == "X0(4,1)") {
      ok = detail::block_minors_nonzero(phi, {0, 1}, {0, 1, 2});
      if (!ok) last_failure = "maximal minors of phi11 nonzero";
    } else if (row.id == "X1(4,1)") {
      ok = linearly_independent<F>({phi.at(0, 1), phi.at(1, 1)});
      if (!ok) last_failure = "phi12, phi22 linearly independent";
    } else if (row.id == "X0(4,2)") {
      ok = detail::lines_independent(phi, true) && detail::lines_independent(phi, false);
      if (!ok) last_failure = "independent rows and columns";
    } else if (row.id == "X1(4,2)") {
      ok = linearly_independent<F>({phi.at(0, 0), phi.at(0, 1)}) &&
           linearly_independent<F>({phi.at(1, 2), phi.at(2, 2)});
      if (ok) {
        auto g = g_semistable_42_exact(phi);
        ok = g.status == Stab::Semistable;
        if (!ok) last_failure = "forbidden configurations absent";
      } else {
        last_failure = "independent X and Y pairs";
      }
    } else if (row.id == "X0(4,3)") {
      ok = detail::block_minors_nonzero(phi, {0, 1, 2}, {1, 2});
      if (!ok) last_failure = "maximal minors of phi12 nonzero";
    } else if (row.id == "X1(4,3)") {
      ok = linearly_independent<F>({phi.at(0, 0), phi.at(0, 1)});
      if (!ok) last_failure = "independent linear row";
    } else if (row.id == "X0(4,4)") {
      if constexpr (std::is_same_v<F, PrimeField>) {
        if (K.modulus() <= 3) {
          auto kv = kronecker_semistable(kronecker_of(phi), budget);
          ok = kv.status != Stab::Unstable;
          if (!ok) last_failure = "Kronecker semistable";
        }
      }
    } else if (row.id == "X1(4,4)") {
      ok = !phi.at(0, 1).is_zero();
      if (!ok) last_failure = "phi12 nonzero";
    }

    if (!ok) continue;
    if (!is_injective(phi)) {
      last_failure = "injective";
      continue;
    }
    return Presentation<F>(phi);
  }
  fail("GenericityExhausted", "no sample for " + row.id + " within " +
                                  std::to_string(kMaxRejections) +
                                  " rejections (failing predicate: " + last_failure + ")");
}

// ---------------------------------------------------------------------------
// Monte-carlo G-semistability through random unipotent translates

struct McVerdict {
  Stab status = Stab::NoInstabilityFound;
  std::optional<GredWitness<PrimeField>> witness;
  long failing_translate = -1;
  std::string note;
};

// Samples N translates of phi by unipotent pairs and tests each for
// G_red-semistability. Can certify only instability; a clean pass is the
// one-sided "no instability found".
inline McVerdict g_semistable_mc(const Morphism<PrimeField>& phi, const Polarization& sigma,
                                 unsigned long translates, Rng& rng,
                                 unsigned long budget = kDefaultSubspaceBudget) {
  McVerdict out;
  for (unsigned long t = 0; t < translates; ++t) {
    auto nu_src = random_unipotent(phi.field(), phi.source(), rng);
    auto nu_tgt = random_unipotent(phi.field(), phi.target(), rng);
    auto translate = nu_tgt.compose(phi).compose(invert_aut(nu_src));
    auto v = gred_semistable(translate, sigma, budget);
    if (v.status == Stab::Unstable) {
      out.status = Stab::Unstable;
      out.witness = v.witness;
      out.failing_translate = static_cast<long>(t);
      return out;
    }
  }
  out.note = "no instability found (one-sided, " + std::to_string(translates) + " translates)";
  return out;
}

// ---------------------------------------------------------------------------
// Reports

template <class F>
json cohomology_report(const Presentation<F>& pres, bool verify_omega = false) {
  CohomologyEngine<F> eng(pres);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["field"] = field_to_json(pres.field().spec());
  j["r"] = pres.multiplicity();
  j["chi"] = pres.chi();
  j["table"] = table_to_json(eng.table());
  j["monad"] = monad_to_json(eng.monad_check());
  j["support_quartic"] = pres.support_curve().to_string();
  j["vanishing_ok"] = vanishing_ok(eng);
  if (verify_omega) {
    long h1_resolved = eng.h1_omega_resolution();
    long h0_resolved = eng.h0_omega_via_resolution();
    j["h1_FOmega_resolution"] = h1_resolved;
    j["h0_FOmega_resolution"] = h0_resolved;
    j["omega_paths_agree"] =
        (h1_resolved == eng.h1_omega() && h0_resolved == eng.h0_omega());
  }
  return j;
}

// Census: reproduce every table row by sampling and classifying.
template <class F>
json census(const F& K, const ScanConfig& cfg) {
  json rows = json::array();
  bool all_pass = true;
  long no_match = 0;
  std::vector<int> chis = cfg.chi_list.empty() ? std::vector<int>{1, 2, 3, 4} : cfg.chi_list;
  for (std::size_t ridx = 0; ridx < stratum_table().size(); ++ridx) {
    const auto& row = stratum_table()[ridx];
    if (std::find(chis.begin(), chis.end(), static_cast<int>(row.chi)) == chis.end()) continue;
    std::map<std::array<long, 3>, unsigned long> freq;
    unsigned long matches = 0;
    for (unsigned long t = 0; t < cfg.trials; ++t) {
      Rng rng = Rng::substream(cfg.seed, 1000 + ridx, t);
      auto pres = sample_stratum(K, row, rng, cfg.budget);
      auto cls = classify(pres);
      ++freq[cls.triple];
      if (cls.matched && cls.stratum_id == row.id) ++matches;
      if (!cls.matched) ++no_match;
    }
    bool pass = matches == cfg.trials;
    all_pass = all_pass && pass;
    json fj = json::array();
    for (const auto& [triple, count] : freq)
      fj.push_back(json{{"triple", triple}, {"count", count}});
    rows.push_back(json{{"stratum", row.id},
                        {"expected_triple", row.triple},
                        {"codim", row.codim},
                        {"resolution", json{{"source", row.source}, {"target", row.target}}},
                        {"observed", std::move(fj)},
                        {"matches", matches},
                        {"trials", cfg.trials},
                        {"pass", pass}});
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "census";
  j["config"] = cfg.to_json();
  j["rows"] = std::move(rows);
  j["no_matching_stratum"] = no_match;
  j["passed"] = all_pass && no_match == 0;
  return j;
}

// Vanishing scan: h1 <= 1 on M(4,1), h1 = 0 on M(4,2) off the O_C(1)
// locus, h0(F(-1)) <= 1 on M(4,4).
template <class F>
json vanishing_scan(const F& K, const ScanConfig& cfg) {
  json spaces = json::array();
  json violations = json::array();
  std::vector<int> chis = cfg.chi_list.empty() ? std::vector<int>{1, 2, 4} : cfg.chi_list;
  for (int chi : chis) {
    if (chi != 1 && chi != 2 && chi != 4) continue;
    std::vector<const StratumDescriptor*> rows;
    for (const auto& row : stratum_table())
      if (row.chi == chi) rows.push_back(&row);
    std::map<long, unsigned long> value_counts;
    for (unsigned long t = 0; t < cfg.trials; ++t) {
      const auto& row = *rows[t % rows.size()];
      Rng rng = Rng::substream(cfg.seed, 2000 + 10 * chi + (t % rows.size()), t);
      auto pres = sample_stratum(K, row, rng, cfg.budget);
      CohomologyEngine<F> eng(pres);
      long value = 0;
      bool bad = false;
      if (chi == 1) {
        value = eng.h1(0);
        bad = value > 1;
      } else if (chi == 2) {
        value = eng.h1(0);
        bad = row.id == "X2(4,2)" ? value != 1 : value != 0;
      } else {
        value = eng.h0(-1);
        bad = value > 1;
      }
      ++value_counts[value];
      if (bad)
        violations.push_back(json{{"chi", chi},
                                  {"stratum", row.id},
                                  {"value", value},
                                  {"morphism", morphism_to_json(pres.phi())}});
    }
    json counts = json::array();
    for (const auto& [v, c] : value_counts) counts.push_back(json{{"value", v}, {"count", c}});
    spaces.push_back(json{{"chi", chi},
                          {"checked", chi == 1 ? "h1(F) <= 1" : chi == 2 ? "h1(F) = 0 off O_C(1)" : "h0(F(-1)) <= 1"},
                          {"value_counts", std::move(counts)},
                          {"trials", cfg.trials}});
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "vanishing-scan";
  j["config"] = cfg.to_json();
  j["spaces"] = std::move(spaces);
  j["violations"] = violations;
  j["passed"] = violations.empty();
  return j;
}

// Clifford scan: for semistable samples with h1 > 0, h0 <= 2 + chi/2 with
// equality only at O_C(1); checks the two analytic equality cases directly.
template <class F>
json clifford_scan(const F& K, const ScanConfig& cfg) {
  json per_chi = json::array();
  json violations = json::array();
  json equalities = json::array();
  std::vector<int> chis = cfg.chi_list.empty() ? std::vector<int>{0, 1, 2, 3} : cfg.chi_list;
  for (int chi : chis) {
    if (chi < 0 || chi > 3) continue;
    std::vector<const StratumDescriptor*> rows;
    for (const auto& row : stratum_table())
      if (row.chi == (chi == 0 ? 4 : chi)) rows.push_back(&row);
    std::map<std::pair<long, long>, unsigned long> pair_counts;
    for (unsigned long t = 0; t < cfg.trials; ++t) {
      const auto& row = *rows[t % rows.size()];
      Rng rng = Rng::substream(cfg.seed, 3000 + 10 * chi + (t % rows.size()), t);
      auto pres = sample_stratum(K, row, rng, cfg.budget);
      if (chi == 0) pres = pres.twist(-1); // chi = 0 members come from M(4,4)
      CohomologyEngine<F> eng(pres);
      long h0 = eng.h0(0), h1 = eng.h1(0);
      ++pair_counts[{h0, h1}];
      if (h1 > 0) {
        // h0 <= 2 + chi/2, i.e. 2 h0 <= 4 + chi
        if (2 * h0 > 4 + chi) {
          violations.push_back(json{{"chi", chi},
                                    {"stratum", row.id},
                                    {"h0", h0},
                                    {"h1", h1},
                                    {"morphism", morphism_to_json(pres.phi())}});
        } else if (2 * h0 == 4 + chi) {
          auto cls = classify(pres);
          bool allowed = cls.matched && cls.stratum_id == "X2(4,2)";
          equalities.push_back(json{{"chi", chi},
                                    {"stratum", row.id},
                                    {"h0", h0},
                                    {"classified", cls.matched ? cls.stratum_id : "none"},
                                    {"allowed", allowed}});
          if (!allowed)
            violations.push_back(json{{"chi", chi},
                                      {"stratum", row.id},
                                      {"h0", h0},
                                      {"h1", h1},
                                      {"reason", "equality outside the O_C(1) locus"},
                                      {"morphism", morphism_to_json(pres.phi())}});
        }
      }
    }
    json counts = json::array();
    for (const auto& [pr, c] : pair_counts)
      counts.push_back(json{{"h0", pr.first}, {"h1", pr.second}, {"count", c}});
    per_chi.push_back(json{{"chi", chi},
                           {"bound", "h0 <= " + std::to_string((4 + chi) / 2) +
                                         (chi % 2 ? ".5" : "")},
                           {"pair_counts", std::move(counts)},
                           {"trials", cfg.trials}});
  }

  // the two analytic equality cases
  {
    Rng rng = Rng::substream(cfg.seed, 3999, 0);
    auto cubic = twisted_structure_sheaf(random_nonzero_form(K, 3, rng), 0);
    CohomologyEngine<F> ce(cubic);
    bool ok_i = ce.h0(0) == 1 && ce.h1(0) == 1; // bound 1 + 0 + 0, equality
    auto oc1 = make_OC(random_nonzero_form(K, 4, rng), 1);
    CohomologyEngine<F> qe(oc1);
    auto cls = classify(oc1);
    bool ok_ii = qe.h0(0) == 3 && qe.h1(0) == 1 && cls.matched && cls.stratum_id == "X2(4,2)";
    json cases = json::array();
    cases.push_back(json{{"case", "(i) r=3, chi=0, O_C"}, {"h0", ce.h0(0)}, {"h1", ce.h1(0)}, {"equality", ok_i}});
    cases.push_back(json{{"case", "(ii) r=4, chi=2, O_C(1)"}, {"h0", qe.h0(0)}, {"h1", qe.h1(0)}, {"equality", ok_ii}});
    if (!ok_i || !ok_ii)
      violations.push_back(json{{"reason", "analytic equality case failed"}, {"cases", cases}});
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "clifford-scan";
    j["config"] = cfg.to_json();
    j["per_chi"] = std::move(per_chi);
    j["equality_cases"] = std::move(equalities);
    j["analytic_cases"] = std::move(cases);
    j["violations"] = violations;
    j["passed"] = violations.empty();
    return j;
  }
}

// Delta-equivariance suite: Delta(g w) = tau(g) Delta(w) on random pairs.
template <class F>
json delta_check(const F& K, unsigned long trials, std::uint64_t seed) {
  unsigned long pass = 0;
  json failures = json::array();
  for (unsigned long t = 0; t < trials; ++t) {
    Rng rng = Rng::substream(seed, 4000, t);
    auto w = random_morphism(K, {-2, -2, -1}, {-1, 0, 0}, rng);
    GroupElement42<F> g{random_nonzero_scalar(K, rng),
                        random_nonzero_scalar(K, rng),
                        random_invertible_matrix(K, 2, rng),
                        random_invertible_matrix(K, 2, rng),
                        {random_form(K, 1, rng), random_form(K, 1, rng)},
                        {random_form(K, 1, rng), random_form(K, 1, rng)}};
    auto lhs = delta_map(group_apply_42(K, g, w));
    auto rhs = tau_apply(K, tau_group_map(K, g), delta_map(w));
    if (lhs == rhs) {
      ++pass;
    } else {
      failures.push_back(json{{"trial", t}, {"w", morphism_to_json(w)}});
    }
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "delta-check";
  j["field"] = field_to_json(K.spec());
  j["trials"] = trials;
  j["seed"] = seed;
  j["pass"] = pass;
  j["failures"] = std::move(failures);
  j["passed"] = pass == trials;
  return j;
}

} // namespace psl
